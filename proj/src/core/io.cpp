#include "io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace levymult {
namespace {

static_assert(std::endian::native == std::endian::little, "binary records assume a little-endian host");

constexpr char kGridMagic[8] = {'L', 'M', 'G', 'R', 'I', 'D', '1', '\0'};
constexpr char kFieldMagic[8] = {'L', 'M', 'F', 'I', 'E', 'L', 'D', '1'};

template <class T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  template <class T>
  T get() {
    if (pos_ + sizeof(T) > bytes_.size()) fail(ErrorCode::IoError, "truncated binary record");
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

std::string encode(const char* magic, const GridSpec& grid, const std::vector<cplx>& values) {
  std::string out(magic, 8);
  put<std::uint64_t>(out, static_cast<std::uint64_t>(grid.d));
  for (auto n : grid.N) put<std::uint64_t>(out, static_cast<std::uint64_t>(n));
  for (double l : grid.L) put<double>(out, l);
  out.reserve(out.size() + 16 * values.size());
  for (cplx v : values) {
    put<double>(out, v.real());
    put<double>(out, v.imag());
  }
  return out;
}

std::pair<GridSpec, std::vector<cplx>> decode(const char* magic, const std::string& bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), magic, 8) != 0)
    fail(ErrorCode::IoError, "bad magic, expected " + std::string(magic, strnlen(magic, 8)));
  Reader r(bytes);
  r.get<std::uint64_t>();
  GridSpec grid;
  const auto d = r.get<std::uint64_t>();
  if (d < 1 || d > 3) fail(ErrorCode::IoError, "record dimension " + std::to_string(d) + " outside 1..3");
  grid.d = static_cast<int>(d);
  for (int a = 0; a < grid.d; ++a) grid.N.push_back(static_cast<std::int64_t>(r.get<std::uint64_t>()));
  for (int a = 0; a < grid.d; ++a) grid.L.push_back(r.get<double>());
  grid.validate();
  std::vector<cplx> values(grid.total());
  for (auto& v : values) {
    const double re = r.get<double>();
    v = {re, r.get<double>()};
  }
  if (!r.done()) fail(ErrorCode::IoError, "trailing bytes after binary record");
  return {grid, values};
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string symbol_csv(const SymbolGrid& m) {
  std::ostringstream os;
  for (int a = 0; a < m.grid.d; ++a) os << "xi_" << a + 1 << ',';
  os << "re_m,im_m\n";
  for (std::size_t k = 0; k < m.values.size(); ++k) {
    const Vec xi = m.grid.frequency(k);
    for (int a = 0; a < m.grid.d; ++a) os << format_double(xi[a]) << ',';
    os << format_double(m.values[k].real()) << ',' << format_double(m.values[k].imag()) << '\n';
  }
  return os.str();
}

std::string field_csv(const SampledField& f) {
  std::ostringstream os;
  for (int a = 0; a < f.grid.d; ++a) os << "x_" << a + 1 << ',';
  os << "re,im\n";
  for (std::size_t j = 0; j < f.values.size(); ++j) {
    const Vec x = f.grid.position(j);
    for (int a = 0; a < f.grid.d; ++a) os << format_double(x[a]) << ',';
    os << format_double(f.values[j].real()) << ',' << format_double(f.values[j].imag()) << '\n';
  }
  return os.str();
}

std::string probe_csv(const std::vector<ProbeReport>& reports) {
  std::ostringstream os;
  os << "p,bound,best_ratio,trials,seed,pass\n";
  for (const auto& r : reports)
    os << format_double(r.p) << ',' << format_double(r.bound) << ',' << format_double(r.best_ratio) << ','
       << r.trials << ',' << r.seed << ',' << (r.pass ? "PASS" : "FAIL") << '\n';
  return os.str();
}

std::string encode_grid(const SymbolGrid& m) { return encode(kGridMagic, m.grid, m.values); }

SymbolGrid decode_grid(const std::string& bytes) {
  auto [grid, values] = decode(kGridMagic, bytes);
  SymbolGrid m{grid, std::move(values)};
  for (std::size_t k = 0; k < m.values.size(); ++k) {
    if (std::abs(m.values[k]) > m.max_abs) {
      m.max_abs = std::abs(m.values[k]);
      m.argmax = k;
    }
  }
  return m;
}

std::string encode_field(const SampledField& f) { return encode(kFieldMagic, f.grid, f.values); }

SampledField decode_field(const std::string& bytes) {
  auto [grid, values] = decode(kFieldMagic, bytes);
  return {grid, std::move(values)};
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) fail(ErrorCode::IoError, "write to " + path + " failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace levymult
