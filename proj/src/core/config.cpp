#include "config.hpp"

#include <algorithm>
#include <json.hpp>

#include "error.hpp"
#include "io.hpp"

namespace levymult {
namespace {

using json = nlohmann::json;

struct Source {
  const std::string& text;

  std::string locate(std::size_t byte) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
  }

  // Best effort: the first occurrence of the quoted key.
  std::string locate_key(const std::string& key) const {
    const auto pos = text.find('"' + key + '"');
    return pos == std::string::npos ? "unknown position" : locate(pos);
  }

  [[noreturn]] void bad(const std::string& key, const std::string& path, const std::string& what) const {
    fail(ErrorCode::ParseError, path + ": " + what + " (" + locate_key(key) + ")");
  }
};

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void check_keys(const Source& src, const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(ErrorCode::ParseError, (path.empty() ? "document" : path) + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      fail(ErrorCode::ParseError, "unknown key \"" + key + "\" in " + (path.empty() ? "document" : path) + " (" +
                                      src.locate_key(key) + ")");
  }
}

double to_double(const Source& src, const json& v, const std::string& key, const std::string& path) {
  if (!v.is_number()) src.bad(key, path, "expected a number");
  return v.get<double>();
}

cplx to_complex(const Source& src, const json& v, const std::string& key, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  src.bad(key, path, "expected a number or [re, im]");
}

template <class T, class Conv>
std::vector<T> to_list(const Source& src, const json& v, const std::string& key, const std::string& path, Conv conv) {
  if (!v.is_array()) src.bad(key, path, "expected a list");
  std::vector<T> out;
  for (const auto& e : v) out.push_back(conv(src, e, key, path));
  return out;
}

std::vector<double> to_doubles(const Source& src, const json& v, const std::string& key, const std::string& path) {
  if (v.is_number()) return {v.get<double>()};
  return to_list<double>(src, v, key, path, to_double);
}

RowMatrix to_matrix(const Source& src, const json& v, const std::string& key, const std::string& path) {
  return to_list<std::vector<double>>(src, v, key, path, [](const Source& s, const json& e, const std::string& k,
                                                           const std::string& p) {
    if (e.is_number()) return std::vector<double>{e.get<double>()};
    return to_list<double>(s, e, k, p, to_double);
  });
}

ComplexRowMatrix to_cmatrix(const Source& src, const json& v, const std::string& key, const std::string& path) {
  return to_list<std::vector<cplx>>(src, v, key, path, [](const Source& s, const json& e, const std::string& k,
                                                          const std::string& p) {
    if (e.is_number()) return std::vector<cplx>{{e.get<double>(), 0.0}};
    return to_list<cplx>(s, e, k, p, to_complex);
  });
}

template <class T>
T integer(const Source& src, const json& v, const std::string& key, const std::string& path) {
  if (!v.is_number_integer()) src.bad(key, path, "expected an integer");
  if constexpr (std::is_unsigned_v<T>) {
    if (v.is_number_unsigned()) return v.get<T>();
    if (v.get<std::int64_t>() < 0) src.bad(key, path, "expected a non-negative integer");
  }
  return v.get<T>();
}

std::string string_of(const Source& src, const json& v, const std::string& key, const std::string& path) {
  if (!v.is_string()) src.bad(key, path, "expected a string");
  return v.get<std::string>();
}

bool boolean(const Source& src, const json& v, const std::string& key, const std::string& path) {
  if (!v.is_boolean()) src.bad(key, path, "expected true or false");
  return v.get<bool>();
}

ModulatorConfig parse_modulator(const Source& src, const json& v, const std::string& path) {
  ModulatorConfig m;
  if (v.is_string()) {
    m.type = v.get<std::string>();
    return m;
  }
  check_keys(src, v, path, {"type", "value", "axis", "normal", "radius", "k", "values"});
  for (const auto& [key, e] : v.items()) {
    const std::string p = join(path, key);
    if (key == "type") m.type = string_of(src, e, key, p);
    if (key == "value") m.value = to_complex(src, e, key, p);
    if (key == "axis") m.axis = integer<int>(src, e, key, p);
    if (key == "normal") m.normal = to_doubles(src, e, key, p);
    if (key == "radius") m.radius = to_double(src, e, key, p);
    if (key == "k") m.k = integer<int>(src, e, key, p);
    if (key == "values") m.values = to_list<cplx>(src, e, key, p, to_complex);
  }
  return m;
}

MeasureConfig parse_measure(const Source& src, const json& v) {
  MeasureConfig m;
  check_keys(src, v, "measure",
             {"type", "points", "weights", "c", "beta", "lambda", "directions", "direction_weights", "r_max", "alpha"});
  for (const auto& [key, e] : v.items()) {
    const std::string p = join("measure", key);
    if (key == "type") m.type = string_of(src, e, key, p);
    if (key == "points") m.points = to_matrix(src, e, key, p);
    if (key == "weights") m.weights = to_doubles(src, e, key, p);
    if (key == "c") m.c = to_double(src, e, key, p);
    if (key == "beta") m.beta = to_double(src, e, key, p);
    if (key == "lambda") m.lambda = to_double(src, e, key, p);
    if (key == "directions") m.directions = to_matrix(src, e, key, p);
    if (key == "direction_weights") m.direction_weights = to_doubles(src, e, key, p);
    if (key == "r_max") m.r_max = to_double(src, e, key, p);
    if (key == "alpha") m.alpha = to_double(src, e, key, p);
  }
  return m;
}

SymbolConfig parse_symbol(const Source& src, const json& v) {
  SymbolConfig s;
  if (v.is_string()) {
    s.form = v.get<std::string>();
    return s;
  }
  check_keys(src, v, "symbol", {"form", "u", "K", "s", "alpha", "j", "k"});
  for (const auto& [key, e] : v.items()) {
    const std::string p = join("symbol", key);
    if (key == "form") s.form = string_of(src, e, key, p);
    if (key == "u") s.u = to_double(src, e, key, p);
    if (key == "K") s.K = to_cmatrix(src, e, key, p);
    if (key == "s") s.s = to_double(src, e, key, p);
    if (key == "alpha") s.alpha = to_double(src, e, key, p);
    if (key == "j") s.j = integer<int>(src, e, key, p);
    if (key == "k") s.k = integer<int>(src, e, key, p);
  }
  return s;
}

std::vector<BumpConfig> parse_bumps(const Source& src, const json& v, const std::string& path) {
  if (!v.is_array()) src.bad(path, path, "expected a list of bumps");
  std::vector<BumpConfig> out;
  for (const auto& b : v) {
    check_keys(src, b, path, {"center", "width", "amplitude"});
    BumpConfig bump;
    for (const auto& [key, e] : b.items()) {
      const std::string p = join(path, key);
      if (key == "center") bump.center = to_doubles(src, e, key, p);
      if (key == "width") bump.width = to_double(src, e, key, p);
      if (key == "amplitude") bump.amplitude = to_complex(src, e, key, p);
    }
    out.push_back(bump);
  }
  return out;
}

RowMatrix identity_rows(int rows, int cols) {
  RowMatrix m(rows, std::vector<double>(cols, 0.0));
  for (int i = 0; i < std::min(rows, cols); ++i) m[i][i] = 1.0;
  return m;
}

void fill_defaults(RunConfig& c) {
  if (c.A.empty()) c.A = identity_rows(c.d, c.n);
  if (c.B.empty()) c.B = identity_rows(c.d, c.n);
  if (c.gamma.empty()) c.gamma.assign(c.n, 0.0);
  if (c.L.size() == 1 && c.d > 1) c.L.assign(c.d, c.L[0]);
  if (c.N.size() == 1 && c.d > 1) c.N.assign(c.d, c.N[0]);
  if (c.symbol.K.empty()) {
    c.symbol.K.assign(c.n, std::vector<cplx>(c.n, 0.0));
    for (int i = 0; i < c.n; ++i) c.symbol.K[i][i] = 1.0;
  }
  if (c.f.empty()) c.f.push_back({std::vector<double>(c.d, 0.0), 1.0, 1.0});
  if (c.g.empty()) c.g.push_back({std::vector<double>(c.d, 0.0), 1.5, 1.0});
  for (auto* bumps : {&c.f, &c.g})
    for (auto& b : *bumps)
      if (b.center.empty()) b.center.assign(c.d, 0.0);
}

Mat to_mat(const RowMatrix& rows, int r, int c, const char* what) {
  if (static_cast<int>(rows.size()) != r)
    fail(ErrorCode::ValidationError, std::string(what) + " must have " + std::to_string(r) + " rows");
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      fail(ErrorCode::ValidationError, std::string(what) + " rows must have " + std::to_string(c) + " entries");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vec to_vec(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())); }

// Columns are the rows of the config list (one point per entry).
Mat columns(const RowMatrix& rows, int n, const char* what) {
  Mat m(n, static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      fail(ErrorCode::ValidationError, std::string(what) + " entries must have " + std::to_string(n) + " coordinates");
    for (int a = 0; a < n; ++a) m(a, static_cast<Eigen::Index>(i)) = rows[i][a];
  }
  return m;
}

JumpModulator jump_modulator(const ModulatorConfig& m) {
  if (m.type == "constant") return ConstantMod{m.value};
  if (m.type == "sign") return SignMod{m.axis};
  if (m.type == "half_space") return HalfSpaceMod{to_vec(m.normal)};
  if (m.type == "ball") return BallMod{m.radius};
  if (m.type == "phase") return PhaseMod{m.k};
  if (m.type == "table") return TableMod{m.values};
  fail(ErrorCode::ValidationError, "unknown modulator type \"" + m.type + "\"");
}

SphereModulator sphere_modulator(const ModulatorConfig& m) {
  if (m.type == "constant") return ConstantMod{m.value};
  if (m.type == "sign") return SignMod{m.axis};
  if (m.type == "table") return TableMod{m.values};
  fail(ErrorCode::ValidationError, "sphere modulator must be constant, sign or table, got \"" + m.type + "\"");
}

template <class F>
auto as_validation(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationError || e.code() == ErrorCode::ParseError) throw;
    fail(ErrorCode::ValidationError, e.what());
  }
}

json complex_json(cplx v) { return json::array({v.real(), v.imag()}); }

json modulator_json(const ModulatorConfig& m) {
  json values = json::array();
  for (cplx v : m.values) values.push_back(complex_json(v));
  return {{"type", m.type},   {"value", complex_json(m.value)}, {"axis", m.axis}, {"normal", m.normal},
          {"radius", m.radius}, {"k", m.k},                        {"values", values}};
}

json bumps_json(const std::vector<BumpConfig>& bumps) {
  json out = json::array();
  for (const auto& b : bumps)
    out.push_back({{"center", b.center}, {"width", b.width}, {"amplitude", complex_json(b.amplitude)}});
  return out;
}

}  // namespace

bool needs_measure(const SymbolConfig& s) { return s.form == "q" || s.form == "integral" || s.form == "limit"; }

RunConfig parse_config(const std::string& text) {
  const Source src{text};
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, "malformed document at " + src.locate(e.byte > 0 ? e.byte - 1 : 0));
  }
  check_keys(src, doc, "",
             {"d", "n", "A", "B", "measure", "sphere", "gamma", "compensated", "modulator", "symbol", "grid", "f", "g",
              "input", "p", "trials", "paths", "steps", "eps", "seed", "out"});
  RunConfig c;
  for (const auto& [key, e] : doc.items()) {
    if (key == "d") c.d = integer<int>(src, e, key, key);
    if (key == "n") c.n = integer<int>(src, e, key, key);
    if (key == "A") c.A = to_matrix(src, e, key, key);
    if (key == "B") c.B = to_matrix(src, e, key, key);
    if (key == "measure") c.measure = parse_measure(src, e);
    if (key == "sphere") {
      check_keys(src, e, "sphere", {"thetas", "weights"});
      if (e.contains("thetas")) c.sphere.thetas = to_matrix(src, e["thetas"], "thetas", "sphere.thetas");
      if (e.contains("weights")) c.sphere.weights = to_doubles(src, e["weights"], "weights", "sphere.weights");
    }
    if (key == "gamma") c.gamma = to_doubles(src, e, key, key);
    if (key == "compensated") c.compensated = boolean(src, e, key, key);
    if (key == "modulator") {
      check_keys(src, e, "modulator", {"phi", "psi"});
      if (e.contains("phi")) c.phi = parse_modulator(src, e["phi"], "modulator.phi");
      if (e.contains("psi")) c.psi = parse_modulator(src, e["psi"], "modulator.psi");
    }
    if (key == "symbol") c.symbol = parse_symbol(src, e);
    if (key == "grid") {
      check_keys(src, e, "grid", {"L", "N"});
      if (e.contains("L")) c.L = to_doubles(src, e["L"], "L", "grid.L");
      if (e.contains("N")) {
        const json& n = e["N"];
        if (n.is_array())
          c.N = to_list<std::int64_t>(src, n, "N", "grid.N", integer<std::int64_t>);
        else
          c.N = {integer<std::int64_t>(src, n, "N", "grid.N")};
      }
    }
    if (key == "f") c.f = parse_bumps(src, e, "f");
    if (key == "g") c.g = parse_bumps(src, e, "g");
    if (key == "input") c.input = string_of(src, e, key, key);
    if (key == "p") c.p = to_doubles(src, e, key, key);
    if (key == "trials") c.trials = integer<int>(src, e, key, key);
    if (key == "paths") c.paths = integer<std::size_t>(src, e, key, key);
    if (key == "steps") c.steps = integer<std::size_t>(src, e, key, key);
    if (key == "eps") c.eps = to_double(src, e, key, key);
    if (key == "seed") c.seed = integer<std::uint64_t>(src, e, key, key);
    if (key == "out") c.out = string_of(src, e, key, key);
  }
  if (c.d < 1 || c.d > 3) fail(ErrorCode::ValidationError, "d must lie in 1..3");
  if (c.n < 1) fail(ErrorCode::ValidationError, "n must be positive");
  fill_defaults(c);
  validate_config(c);
  return c;
}

RunConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

std::string emit_config(const RunConfig& c) {
  json doc;
  doc["d"] = c.d;
  doc["n"] = c.n;
  doc["A"] = c.A;
  doc["B"] = c.B;
  if (c.measure) {
    const MeasureConfig& m = *c.measure;
    doc["measure"] = {{"type", m.type},   {"points", m.points},         {"weights", m.weights},
                      {"c", m.c},         {"beta", m.beta},             {"lambda", m.lambda},
                      {"directions", m.directions}, {"direction_weights", m.direction_weights},
                      {"r_max", m.r_max}, {"alpha", m.alpha}};
  }
  doc["sphere"] = {{"thetas", c.sphere.thetas}, {"weights", c.sphere.weights}};
  doc["gamma"] = c.gamma;
  doc["compensated"] = c.compensated;
  doc["modulator"] = {{"phi", modulator_json(c.phi)}, {"psi", modulator_json(c.psi)}};
  json K = json::array();
  for (const auto& row : c.symbol.K) {
    json r = json::array();
    for (cplx v : row) r.push_back(complex_json(v));
    K.push_back(r);
  }
  doc["symbol"] = {{"form", c.symbol.form}, {"u", c.symbol.u},         {"K", K}, {"s", c.symbol.s},
                   {"alpha", c.symbol.alpha}, {"j", c.symbol.j}, {"k", c.symbol.k}};
  doc["grid"] = {{"L", c.L}, {"N", c.N}};
  doc["f"] = bumps_json(c.f);
  doc["g"] = bumps_json(c.g);
  doc["input"] = c.input;
  doc["p"] = c.p;
  doc["trials"] = c.trials;
  doc["paths"] = c.paths;
  doc["steps"] = c.steps;
  doc["eps"] = c.eps;
  doc["seed"] = c.seed;
  doc["out"] = c.out;
  return doc.dump(2) + "\n";
}

void validate_config(const RunConfig& c) {
  if (c.d < 1 || c.d > 3) fail(ErrorCode::ValidationError, "d must lie in 1..3");
  if (c.n < 1) fail(ErrorCode::ValidationError, "n must be positive");
  as_validation([&] { build_grid(c).validate(); });
  if (c.measure || needs_measure(c.symbol)) {
    if (!c.measure) fail(ErrorCode::ValidationError, "symbol form \"" + c.symbol.form + "\" needs a measure");
    as_validation([&] { validate(build_data(c), build_modulator(c)); });
  }
  as_validation([&] { validate_symbol(build_symbol(c)); });
  for (double p : c.p)
    if (!(p > 1.0 && std::isfinite(p))) fail(ErrorCode::ValidationError, "every p must be finite and > 1");
  if (c.trials < 1) fail(ErrorCode::ValidationError, "trials must be positive");
  if (c.paths < 1) fail(ErrorCode::ValidationError, "paths must be positive");
  if (c.steps < 1) fail(ErrorCode::ValidationError, "steps must be positive");
  if (!(c.eps >= 0.0)) fail(ErrorCode::ValidationError, "eps must be non-negative");
  for (const auto* bumps : {&c.f, &c.g})
    for (const auto& b : *bumps) {
      if (static_cast<int>(b.center.size()) != c.d) fail(ErrorCode::ValidationError, "bump centers must have d entries");
      if (!(b.width > 0.0)) fail(ErrorCode::ValidationError, "bump widths must be positive");
    }
}

LevyData build_data(const RunConfig& c) {
  if (!c.measure) fail(ErrorCode::ValidationError, "config has no measure");
  const MeasureConfig& m = *c.measure;
  LevyMeasure nu;
  if (m.type == "atoms") {
    AtomsMeasure atoms{columns(m.points, c.n, "measure.points"), to_vec(m.weights)};
    if (atoms.points.cols() != atoms.weights.size())
      fail(ErrorCode::ValidationError, "measure.points and measure.weights differ in length");
    nu = atoms;
  } else if (m.type == "radial") {
    RadialProductMeasure r;
    r.profile = {m.c, m.beta, m.lambda};
    r.directions = columns(m.directions, c.n, "measure.directions");
    r.dir_weights = to_vec(m.direction_weights);
    r.r_max = m.r_max;
    nu = r;
  } else if (m.type == "stable") {
    nu = ClosedFormStable{m.alpha};
  } else {
    fail(ErrorCode::ValidationError, "unknown measure type \"" + m.type + "\"");
  }
  LevyData data = make_data(c.d, c.n, nu, to_mat(c.A, c.d, c.n, "A"), to_mat(c.B, c.d, c.n, "B"));
  data.mu.thetas = columns(c.sphere.thetas, c.n, "sphere.thetas");
  data.mu.weights = to_vec(c.sphere.weights);
  if (static_cast<int>(c.gamma.size()) != c.n) fail(ErrorCode::ValidationError, "gamma must have n entries");
  data.gamma = to_vec(c.gamma);
  data.compensated = c.compensated;
  return data;
}

Modulator build_modulator(const RunConfig& c) { return {jump_modulator(c.phi), sphere_modulator(c.psi)}; }

SymbolSpec build_symbol(const RunConfig& c) {
  const SymbolConfig& s = c.symbol;
  auto model = [&] {
    LevyData data = build_data(c);
    Modulator mod = build_modulator(c);
    if (c.eps > 0.0) return approximate(data, mod, c.eps);
    return std::pair{std::move(data), std::move(mod)};
  };
  auto kmat = [&] {
    CMat K(c.n, c.n);
    if (static_cast<int>(s.K.size()) != c.n) fail(ErrorCode::ValidationError, "symbol.K must be n x n");
    for (int i = 0; i < c.n; ++i) {
      if (static_cast<int>(s.K[i].size()) != c.n) fail(ErrorCode::ValidationError, "symbol.K must be n x n");
      for (int j = 0; j < c.n; ++j) K(i, j) = s.K[i][j];
    }
    return K;
  };
  if (s.form == "q") {
    auto [data, mod] = model();
    return QForm{std::move(data), std::move(mod), s.u};
  }
  if (s.form == "integral") {
    auto [data, mod] = model();
    return IntegralForm{std::move(data), std::move(mod)};
  }
  if (s.form == "limit") {
    auto [data, mod] = model();
    return LimitForm{std::move(data), std::move(mod)};
  }
  if (s.form == "gaussian") return GaussianForm{to_mat(c.A, c.d, c.n, "A"), to_mat(c.B, c.d, c.n, "B"), kmat(), s.s};
  if (s.form == "gaussian_limit") return GaussianLimitForm{to_mat(c.A, c.d, c.n, "A"), kmat()};
  if (s.form == "stable") return StableClosedForm{s.alpha};
  if (s.form == "log") return NamedPreset{PresetId::Log, c.d, s.j, 0};
  if (s.form == "riesz") return NamedPreset{PresetId::Riesz, c.d, s.j, s.k};
  fail(ErrorCode::ValidationError, "unknown symbol form \"" + s.form + "\"");
}

GridSpec build_grid(const RunConfig& c) {
  GridSpec grid;
  grid.d = c.d;
  grid.N = c.N;
  grid.L = c.L;
  if (static_cast<int>(grid.N.size()) != c.d || static_cast<int>(grid.L.size()) != c.d)
    fail(ErrorCode::ValidationError, "grid.L and grid.N need one entry per axis");
  grid.validate();
  return grid;
}

SampledField build_field(const std::vector<BumpConfig>& bumps, const GridSpec& grid) {
  return sample(grid, [&](const Vec& x) {
    cplx v{0.0, 0.0};
    for (const auto& b : bumps) v += b.amplitude * std::exp(-(x - to_vec(b.center)).squaredNorm() / (2.0 * b.width * b.width));
    return v;
  });
}

}  // namespace levymult
