#pragma once

#include <string>
#include <vector>

#include "grid.hpp"
#include "spectral.hpp"
#include "symbol.hpp"

namespace levymult {

// %.17g, enough to round-trip a double.
std::string format_double(double v);

std::string symbol_csv(const SymbolGrid& m);
std::string field_csv(const SampledField& f);
std::string probe_csv(const std::vector<ProbeReport>& reports);

// Flat little-endian records: 8-byte magic, uint64 d, uint64 N[d], float64 L[d],
// then interleaved re/im float64 values in row-major order.
std::string encode_grid(const SymbolGrid& m);
SymbolGrid decode_grid(const std::string& bytes);
std::string encode_field(const SampledField& f);
SampledField decode_field(const std::string& bytes);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace levymult
