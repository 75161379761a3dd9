#include "commands.hpp"

#include <filesystem>
#include <sstream>

#include "brownian.hpp"
#include "error.hpp"
#include "io.hpp"
#include "mc.hpp"
#include "spectral.hpp"

namespace levymult {
namespace {

std::string cplx_text(cplx v) { return format_double(v.real()) + (v.imag() < 0 ? " - " : " + ") + format_double(std::abs(v.imag())) + "i"; }

class Run {
 public:
  Run(std::string command, const RunConfig& cfg) : command_(std::move(command)), cfg_(cfg) {
    os_ << "levymult " << command_ << "\n";
    os_ << "config:\n" << emit_config(cfg);
  }

  std::ostream& out() { return os_; }

  std::string artifact(const std::string& name, const std::string& contents) {
    std::filesystem::create_directories(cfg_.out);
    const std::string path = (std::filesystem::path(cfg_.out) / name).string();
    write_file(path, contents);
    artifacts_.push_back(path);
    os_ << "wrote " << path << "\n";
    return path;
  }

  CommandResult finish(bool pass, const std::string& reason) {
    CommandResult r;
    r.pass = pass;
    r.reason = reason;
    os_ << "RESULT " << (pass ? "PASS" : "FAIL") << " reason=" << reason << "\n";
    r.report = os_.str();
    r.artifacts = artifacts_;
    return r;
  }

 private:
  std::string command_;
  const RunConfig& cfg_;
  std::ostringstream os_;
  std::vector<std::string> artifacts_;
};

SampledField input_f(const RunConfig& cfg, const GridSpec& grid) {
  if (cfg.input.empty()) return build_field(cfg.f, grid);
  SampledField f = decode_field(read_file(cfg.input));
  require_same_grid(f.grid, grid);
  return f;
}

std::pair<LevyData, Modulator> jump_model(const RunConfig& cfg) {
  LevyData data = build_data(cfg);
  Modulator mod = build_modulator(cfg);
  if (cfg.eps > 0.0) return approximate(data, mod, cfg.eps);
  return {std::move(data), std::move(mod)};
}

CommandResult cmd_symbol(Run& run, const RunConfig& cfg) {
  const GridSpec grid = build_grid(cfg);
  const SymbolSpec spec = build_symbol(cfg);
  const SymbolGrid m = evaluate_grid(spec, grid);
  run.out() << "variant " << variant_name(spec) << "\n";
  run.out() << "max_abs_m " << format_double(m.max_abs) << " at xi_index " << m.argmax << "\n";
  run.artifact("symbol.csv", symbol_csv(m));
  run.artifact("symbol.lmgrid", encode_grid(m));
  return run.finish(true, "bound_holds");
}

CommandResult cmd_apply(Run& run, const RunConfig& cfg) {
  const GridSpec grid = build_grid(cfg);
  const SymbolGrid m = evaluate_grid(build_symbol(cfg), grid);
  const SampledField mf = apply_multiplier(m, input_f(cfg, grid));
  run.out() << "l2_norm " << format_double(lp_norm(mf, 2.0)) << "\n";
  run.artifact("apply.csv", field_csv(mf));
  run.artifact("apply.lmfield", encode_field(mf));
  return run.finish(true, "applied");
}

CommandResult cmd_pair(Run& run, const RunConfig& cfg) {
  const GridSpec grid = build_grid(cfg);
  const SymbolGrid m = evaluate_grid(build_symbol(cfg), grid);
  const PairingResult r = pairing(m, input_f(cfg, grid), build_field(cfg.g, grid));
  run.out() << "spatial " << cplx_text(r.spatial) << "\n";
  run.out() << "spectral " << cplx_text(r.spectral) << "\n";
  run.out() << "relative_gap " << format_double(r.relative_gap) << "\n";
  run.artifact("pair.csv", "route,re,im\nspatial," + format_double(r.spatial.real()) + "," +
                               format_double(r.spatial.imag()) + "\nspectral," + format_double(r.spectral.real()) +
                               "," + format_double(r.spectral.imag()) + "\n");
  return run.finish(true, "routes_agree");
}

CommandResult cmd_probe(Run& run, const RunConfig& cfg) {
  const GridSpec grid = build_grid(cfg);
  const SymbolGrid m = evaluate_grid(build_symbol(cfg), grid);
  std::vector<ProbeReport> reports;
  bool pass = true;
  for (double p : cfg.p) {
    reports.push_back(norm_probe(m, p, cfg.trials, cfg.seed));
    const ProbeReport& r = reports.back();
    run.out() << "p " << format_double(p) << " bound " << format_double(r.bound) << " best_ratio "
              << format_double(r.best_ratio) << " " << (r.pass ? "PASS" : "FAIL") << " best " << r.descriptor << "\n";
    pass = pass && r.pass;
  }
  run.artifact("probe.csv", probe_csv(reports));
  return run.finish(pass, pass ? "bound_holds" : "ratio_exceeds_bound");
}

std::string estimate_row(const std::string& name, cplx est, cplx se, cplx ref, bool pass) {
  return name + "," + format_double(est.real()) + "," + format_double(est.imag()) + "," + format_double(se.real()) +
         "," + format_double(se.imag()) + "," + format_double(ref.real()) + "," + format_double(ref.imag()) + "," +
         (pass ? "PASS" : "FAIL") + "\n";
}

constexpr const char* kEstimateHeader = "quantity,estimate_re,estimate_im,se_re,se_im,reference_re,reference_im,pass\n";

CommandResult cmd_mc(Run& run, const RunConfig& cfg) {
  const GridSpec grid = build_grid(cfg);
  const auto [data, mod] = jump_model(cfg);
  const SampledField f = input_f(cfg, grid);
  const SampledField g = build_field(cfg.g, grid);
  const SymbolGrid m = evaluate_grid(QForm{data, mod, 1.0}, grid, false);
  const cplx reference = pairing(m, f, g).spectral;
  McOptions opts;
  opts.paths = cfg.paths;
  opts.seed = cfg.seed;
  const PairingEstimate e = estimate_pairing(f, g, data, mod, opts);
  const double joint = std::hypot(e.standard_error.real(), e.standard_error.imag());
  const double gap = std::abs(e.estimate - reference);
  const bool pair_ok = gap <= opts.sigma_multiplier * joint;
  run.out() << "spectral_pairing " << cplx_text(reference) << "\n";
  run.out() << "mc_pairing " << cplx_text(e.estimate) << " se " << cplx_text(e.standard_error) << "\n";
  run.out() << "gap_over_joint_se " << format_double(joint > 0 ? gap / joint : 0.0) << "\n";
  run.out() << "covariation_route " << cplx_text(e.covariation_estimate) << " route_gap_over_se "
            << format_double(e.route_gap_error > 0 ? std::abs(e.route_gap) / e.route_gap_error : 0.0) << "\n";
  std::string csv = kEstimateHeader;
  csv += estimate_row("pairing", e.estimate, e.standard_error, reference, pair_ok);
  csv += estimate_row("pairing_covariation", e.covariation_estimate, e.covariation_error, reference, e.routes_agree);
  bool sub_ok = true;
  if (data.A == data.B) {
    McOptions sub = opts;
    sub.paths = std::min<std::size_t>(cfg.paths, 10000);
    std::vector<Vec> points;
    for (double t : {-1.0, 0.0, 1.0}) points.push_back(Vec::Constant(cfg.d, t));
    const SubordinationReport s = subordination_run(g, data, mod, points, sub);
    sub_ok = s.holds;
    run.out() << "subordination paths " << s.paths << " jumps " << s.jumps << " violations " << s.violations << "\n";
    csv += "subordination_violations," + std::to_string(s.violations) + ",0,0,0,0,0," + (sub_ok ? "PASS" : "FAIL") + "\n";
  }
  run.artifact("mc.csv", csv);
  const bool pass = pair_ok && e.routes_agree && sub_ok;
  std::string reason = !pair_ok ? "pairing_gap" : !e.routes_agree ? "route_gap" : !sub_ok ? "subordination" : "within_3se";
  return run.finish(pass, reason);
}

CommandResult cmd_gaussian_mc(Run& run, const RunConfig& cfg) {
  if (cfg.symbol.form != "gaussian")
    fail(ErrorCode::ValidationError, "gaussian-mc needs symbol.form = \"gaussian\"");
  const GridSpec grid = build_grid(cfg);
  const auto spec = std::get<GaussianForm>(build_symbol(cfg));
  const SampledField f = input_f(cfg, grid);
  const SampledField g = build_field(cfg.g, grid);
  const cplx reference = pairing(evaluate_grid(spec, grid, false), f, g).spectral;
  BrownianOptions opts;
  opts.paths = cfg.paths;
  opts.steps = cfg.steps;
  opts.seed = cfg.seed;
  opts.s = spec.s;
  const BrownianEstimate e = brownian_pairing(f, g, spec.A, spec.B, {spec.K}, opts).front();
  const double joint = std::hypot(e.standard_error.real(), e.standard_error.imag());
  const double gap = std::abs(e.estimate - reference);
  const bool pass = gap <= 3.0 * joint;
  run.out() << "spectral_pairing " << cplx_text(reference) << "\n";
  run.out() << "mc_pairing " << cplx_text(e.estimate) << " se " << cplx_text(e.standard_error) << "\n";
  run.out() << "gap_over_joint_se " << format_double(joint > 0 ? gap / joint : 0.0) << "\n";
  run.out() << "step_halving_gap " << cplx_text(e.step_gap) << "\n";
  std::string csv = kEstimateHeader;
  csv += estimate_row("pairing", e.estimate, e.standard_error, reference, pass);
  run.artifact("gaussian_mc.csv", csv);
  return run.finish(pass, pass ? "within_3se" : "pairing_gap");
}

CommandResult cmd_selftest(Run& run, const RunConfig& cfg) {
  const auto items = run_selftest(cfg.seed);
  std::size_t failed = 0;
  std::string first;
  for (const auto& it : items) {
    run.out() << (it.pass ? "PASS " : "FAIL ") << it.name;
    if (!it.detail.empty()) run.out() << "  " << it.detail;
    run.out() << "\n";
    if (!it.pass && failed++ == 0) first = it.name;
  }
  return run.finish(failed == 0, failed == 0 ? "all_properties_hold" : std::to_string(failed) + "_failed:" + first);
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"symbol", "apply", "pair", "probe", "mc", "gaussian-mc", "selftest"};
  return names;
}

CommandResult run_command(const std::string& command, const RunConfig& cfg) {
  Run run(command, cfg);
  try {
    validate_config(cfg);
    if (command == "symbol") return cmd_symbol(run, cfg);
    if (command == "apply") return cmd_apply(run, cfg);
    if (command == "pair") return cmd_pair(run, cfg);
    if (command == "probe") return cmd_probe(run, cfg);
    if (command == "mc") return cmd_mc(run, cfg);
    if (command == "gaussian-mc") return cmd_gaussian_mc(run, cfg);
    if (command == "selftest") return cmd_selftest(run, cfg);
    fail(ErrorCode::InvalidArgument, "unknown command \"" + command + "\"");
  } catch (const Error& e) {
    run.out() << "error " << e.what() << "\n";
    return run.finish(false, std::string(to_string(e.code())));
  } catch (const std::exception& e) {
    run.out() << "error " << e.what() << "\n";
    return run.finish(false, "InternalError");
  }
}

}  // namespace levymult
