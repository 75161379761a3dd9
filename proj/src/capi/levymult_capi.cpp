#include "levymult/levymult.h"

#include <cstring>
#include <string>

#include "commands.hpp"
#include "config.hpp"
#include "error.hpp"
#include "io.hpp"
#include "spectral.hpp"

struct lm_config {
  levymult::RunConfig cfg;
};
struct lm_symbol {
  levymult::SymbolSpec spec;
};
struct lm_grid {
  levymult::SymbolGrid grid;
};
struct lm_field {
  levymult::SampledField field;
};

namespace {

thread_local std::string last_error;

lm_status status_of(levymult::ErrorCode code) { return static_cast<lm_status>(static_cast<int>(code) + 1); }

template <class F>
lm_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return LM_OK;
  } catch (const levymult::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return LM_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown exception";
    return LM_ERR_INTERNAL;
  }
}

lm_status null_arg(const char* what) {
  last_error = std::string(what) + " is null";
  return LM_ERR_NULL_POINTER;
}

char* dup(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void copy_values(const std::vector<levymult::cplx>& values, double* out) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[2 * i] = values[i].real();
    out[2 * i + 1] = values[i].imag();
  }
}

}  // namespace

extern "C" {

const char* lm_version(void) { return "0.1.0"; }

const char* lm_status_name(lm_status status) {
  if (status == LM_OK) return "Ok";
  if (status == LM_ERR_NULL_POINTER) return "NullPointer";
  if (status == LM_ERR_INTERNAL) return "Internal";
  if (status > LM_OK && status < LM_ERR_NULL_POINTER)
    return levymult::to_string(static_cast<levymult::ErrorCode>(status - 1)).data();
  return "Unknown";
}

const char* lm_last_error(void) { return last_error.c_str(); }

void lm_string_free(char* s) { delete[] s; }

lm_status lm_config_parse(const char* text, lm_config** out) {
  if (!text || !out) return null_arg("argument");
  return guarded([&] { *out = new lm_config{levymult::parse_config(text)}; });
}

lm_status lm_config_load(const char* path, lm_config** out) {
  if (!path || !out) return null_arg("argument");
  return guarded([&] { *out = new lm_config{levymult::load_config(path)}; });
}

void lm_config_free(lm_config* cfg) { delete cfg; }

lm_status lm_config_emit(const lm_config* cfg, char** out) {
  if (!cfg || !out) return null_arg("argument");
  return guarded([&] { *out = dup(levymult::emit_config(cfg->cfg)); });
}

lm_status lm_config_set_seed(lm_config* cfg, uint64_t seed) {
  if (!cfg) return null_arg("config");
  cfg->cfg.seed = seed;
  return LM_OK;
}

lm_status lm_config_set_paths(lm_config* cfg, uint64_t paths) {
  if (!cfg) return null_arg("config");
  if (paths == 0) {
    last_error = "InvalidArgument: paths must be positive";
    return LM_ERR_INVALID_ARGUMENT;
  }
  cfg->cfg.paths = paths;
  return LM_OK;
}

lm_status lm_config_set_out(lm_config* cfg, const char* dir) {
  if (!cfg || !dir) return null_arg("argument");
  cfg->cfg.out = dir;
  return LM_OK;
}

lm_status lm_run_command(const char* command, const lm_config* cfg, int* passed, char** report) {
  if (!command || !cfg || !passed || !report) return null_arg("argument");
  return guarded([&] {
    const levymult::CommandResult r = levymult::run_command(command, cfg->cfg);
    *passed = r.pass ? 1 : 0;
    *report = dup(r.report);
  });
}

lm_status lm_symbol_create(const lm_config* cfg, lm_symbol** out) {
  if (!cfg || !out) return null_arg("argument");
  return guarded([&] {
    levymult::SymbolSpec spec = levymult::build_symbol(cfg->cfg);
    levymult::validate_symbol(spec);
    *out = new lm_symbol{std::move(spec)};
  });
}

void lm_symbol_free(lm_symbol* m) { delete m; }

int lm_symbol_dimension(const lm_symbol* m) { return m ? levymult::symbol_dimension(m->spec) : 0; }

lm_status lm_symbol_eval(const lm_symbol* m, const double* xi, double* re, double* im) {
  if (!m || !xi || !re || !im) return null_arg("argument");
  return guarded([&] {
    const int d = levymult::symbol_dimension(m->spec);
    const levymult::cplx v = levymult::evaluate(m->spec, Eigen::Map<const levymult::Vec>(xi, d));
    *re = v.real();
    *im = v.imag();
  });
}

lm_status lm_grid_create(const lm_symbol* m, const lm_config* cfg, lm_grid** out) {
  if (!m || !cfg || !out) return null_arg("argument");
  return guarded([&] { *out = new lm_grid{levymult::evaluate_grid(m->spec, levymult::build_grid(cfg->cfg))}; });
}

void lm_grid_free(lm_grid* g) { delete g; }

int lm_grid_dimension(const lm_grid* g) { return g ? g->grid.grid.d : 0; }

size_t lm_grid_size(const lm_grid* g) { return g ? g->grid.values.size() : 0; }

double lm_grid_max_abs(const lm_grid* g) { return g ? g->grid.max_abs : 0.0; }

lm_status lm_grid_values(const lm_grid* g, double* out) {
  if (!g || !out) return null_arg("argument");
  copy_values(g->grid.values, out);
  return LM_OK;
}

lm_status lm_grid_write(const lm_grid* g, const char* path) {
  if (!g || !path) return null_arg("argument");
  return guarded([&] { levymult::write_file(path, levymult::encode_grid(g->grid)); });
}

lm_status lm_grid_read(const char* path, lm_grid** out) {
  if (!path || !out) return null_arg("argument");
  return guarded([&] { *out = new lm_grid{levymult::decode_grid(levymult::read_file(path))}; });
}

lm_status lm_field_from_config(const lm_config* cfg, int which, lm_field** out) {
  if (!cfg || !out) return null_arg("argument");
  return guarded([&] {
    if (which != 0 && which != 1) levymult::fail(levymult::ErrorCode::InvalidArgument, "which must be 0 (f) or 1 (g)");
    const auto grid = levymult::build_grid(cfg->cfg);
    *out = new lm_field{levymult::build_field(which == 0 ? cfg->cfg.f : cfg->cfg.g, grid)};
  });
}

lm_status lm_field_apply(const lm_grid* m, const lm_field* f, lm_field** out) {
  if (!m || !f || !out) return null_arg("argument");
  return guarded([&] { *out = new lm_field{levymult::apply_multiplier(m->grid, f->field)}; });
}

void lm_field_free(lm_field* f) { delete f; }

size_t lm_field_size(const lm_field* f) { return f ? f->field.values.size() : 0; }

lm_status lm_field_values(const lm_field* f, double* out) {
  if (!f || !out) return null_arg("argument");
  copy_values(f->field.values, out);
  return LM_OK;
}

lm_status lm_field_write(const lm_field* f, const char* path) {
  if (!f || !path) return null_arg("argument");
  return guarded([&] { levymult::write_file(path, levymult::encode_field(f->field)); });
}

lm_status lm_field_read(const char* path, lm_field** out) {
  if (!path || !out) return null_arg("argument");
  return guarded([&] { *out = new lm_field{levymult::decode_field(levymult::read_file(path))}; });
}

}  // extern "C"
