#include "sqzcool/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sqzcool/cascade_oracle.hpp"
#include "sqzcool/config.hpp"
#include "sqzcool/cooling_rates.hpp"
#include "sqzcool/error.hpp"
#include "sqzcool/optimizer.hpp"
#include "sqzcool/squeezing_spectra.hpp"
#include "sqzcool/sweep.hpp"

namespace sqzcool {

namespace {

constexpr const char* kHelpFooter = R"(Common flags (every subcommand):
  --config PATH        key = value parameter file
  --set KEY=VALUE      override a parameter after the file is read
                       (e.g. --set squeezer.chi=0.6); repeatable
  --out PATH           output file (a directory for `figures`); default stdout
  --format csv|human   output style; default human
Subcommand flags:
  spectrum --omega MIN:MAX:N        frequency grid (default -3:3:2001)
  sweep --kind KIND --points N      phase|squeezing|matched|cavity|detuning
  optimize --detuning-window LO:HI  also minimize N_st over delta_a
  oracle-check --g VALUE            coupling used by the oracle comparison
  oracle-check --tol VALUE          fail (exit 1) above this relative error
  oracle-check --dump-matrices DIR  write drift/diffusion/covariance CSVs
Exit codes: 0 ok, 1 invalid input, 2 infeasible squeezing, 3 I/O error.
Environment: SQZCOOL_THREADS caps sweep parallelism.)";

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
  std::string format = "human";
};

struct Grid {
  double min = -3.0;
  double max = 3.0;
  std::size_t points = 2001;
};

Grid parse_grid(const std::string& text) {
  Grid grid;
  double lo = 0.0;
  double hi = 0.0;
  unsigned long n = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lu%c", &lo, &hi, &n, &tail) != 3 ||
      !(lo < hi) || n < 2) {
    throw Error(ErrorKind::kDomainError,
                "--omega expects MIN:MAX:N with MIN < MAX and N >= 2, got '" +
                    text + "'");
  }
  grid.min = lo;
  grid.max = hi;
  grid.points = n;
  return grid;
}

std::pair<double, double> parse_window(const std::string& text) {
  double lo = 0.0;
  double hi = 0.0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf%c", &lo, &hi, &tail) != 2 ||
      !(0.0 < lo && lo < hi)) {
    throw Error(ErrorKind::kDomainError,
                "--detuning-window expects LO:HI with 0 < LO < HI");
  }
  return {lo, hi};
}

ModelConfig read_config(const CommonOptions& common) {
  ModelConfig config;
  if (!common.config_path.empty()) config = load_config(common.config_path);
  for (const auto& assignment : common.overrides) {
    apply_override(config, assignment);
  }
  return config;
}

ValidatedModel read_model(const CommonOptions& common) {
  const ModelConfig config = read_config(common);
  return validate(config.optomech, config.squeezer);
}

std::string fmt(double value, int digits = 6) {
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), "%.*g", digits, value);
  return buffer;
}

std::string fixed(double value, int decimals) {
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  return buffer;
}

// Sends text to --out or to `out`.
void deliver(const std::string& text, const CommonOptions& common,
             std::ostream& out) {
  if (common.out_path.empty() || common.out_path == "-") {
    out << text;
    return;
  }
  std::ofstream file(common.out_path, std::ios::binary);
  if (!file) throw Error(ErrorKind::kIoError, "cannot open " + common.out_path);
  file << text;
  file.close();
  if (!file) throw Error(ErrorKind::kIoError, "cannot write " + common.out_path);
}

bool wants_csv(const CommonOptions& common) { return common.format == "csv"; }

int cmd_spectrum(const CommonOptions& common, const std::string& omega_text,
                 std::ostream& out) {
  const ValidatedModel model = read_model(common);
  const Grid grid = omega_text.empty() ? Grid{} : parse_grid(omega_text);
  std::ostringstream text;
  if (wants_csv(common)) {
    text << "omega,n_tilde,m_tilde,s_in,s_force\n";
  } else {
    text << "# omega n_tilde m_tilde S(omega) s_a(omega), omega in units of "
            "omega_m\n";
  }
  const char sep = wants_csv(common) ? ',' : ' ';
  const double step =
      (grid.max - grid.min) / static_cast<double>(grid.points - 1);
  for (std::size_t i = 0; i < grid.points; ++i) {
    const double omega = i + 1 == grid.points
                             ? grid.max
                             : grid.min + step * static_cast<double>(i);
    const SpectraPoint p = evaluate_spectra(omega, model);
    text << fmt(p.omega, 12) << sep << fmt(p.n_tilde, 12) << sep
         << fmt(p.m_tilde, 12) << sep << fmt(p.s_in, 12) << sep
         << fmt(p.s_force, 12) << '\n';
  }
  deliver(text.str(), common, out);
  return kExitOk;
}

int cmd_cool(const CommonOptions& common, std::ostream& out) {
  const ValidatedModel model = read_model(common);
  const CoolingReport r = cooling_report(model);
  std::ostringstream text;
  if (wants_csv(common)) {
    text << "a_plus,a_minus,gamma_cool,zeta,n0,n_a,n_st,n_st_approx,"
            "cooperativity,weak_coupling_warning,off_sideband_warning\n";
    text << fmt(r.a_plus, 12) << ',' << fmt(r.a_minus, 12) << ','
         << fmt(r.gamma_cool, 12) << ',' << fmt(r.zeta, 12) << ','
         << fmt(r.n0, 12) << ',' << fmt(r.n_a, 12) << ',' << fmt(r.n_st, 12)
         << ',' << fmt(r.n_st_approx, 12) << ',' << fmt(r.cooperativity, 12)
         << ',' << (r.diagnostics.weak_coupling_violated ? "true" : "false")
         << ',' << (r.diagnostics.off_sideband ? "true" : "false") << '\n';
  } else {
    text << "Stokes rate A_+             " << fmt(r.a_plus) << '\n'
         << "anti-Stokes rate A_-        " << fmt(r.a_minus) << '\n'
         << "cooling rate Gamma          " << fmt(r.gamma_cool) << '\n'
         << "zeta                        " << fmt(r.zeta) << '\n'
         << "N_0 (no squeezing)          " << fmt(r.n0) << '\n'
         << "back-action limit N_a       " << fmt(r.n_a) << '\n'
         << "N_st (exact)                " << fixed(r.n_st, 6) << '\n'
         << "N_st (N_th/C + N_0(1-xi))   " << fixed(r.n_st_approx, 4) << '\n'
         << "cooperativity C             " << fmt(r.cooperativity) << '\n'
         << "approximation gap           " << fmt(r.n_st_approx - r.n_st)
         << '\n';
    if (r.diagnostics.weak_coupling_violated) {
      text << "warning: weak-coupling ratio " << fmt(r.diagnostics.coupling_ratio)
           << " exceeds " << kWeakCouplingRatio << '\n';
    }
    if (r.diagnostics.off_sideband) {
      text << "warning: delta_a != omega_m, the approximate N_st assumes "
              "red-sideband driving\n";
    }
  }
  deliver(text.str(), common, out);
  return kExitOk;
}

int cmd_optimize(const CommonOptions& common, const std::string& window_text,
                 std::ostream& out) {
  const ModelConfig config = read_config(common);
  const ValidatedModel model = validate(config.optomech, config.squeezer);
  const double s0 = input_squeezing_spectrum(0.0, model);
  const double xi = model.xi;
  if (!(xi > 0.0)) {
    throw Error(ErrorKind::kDomainError,
                "optimize needs a squeezed drive (xi > 0)");
  }
  const OptimalSqueezing opt =
      matched_bandwidth(s0, xi, model.delta_a(), model.kappa_a());
  std::optional<DetuningOptimum> detuning;
  if (!window_text.empty()) {
    const auto [lo, hi] = parse_window(window_text);
    detuning = optimize_detuning(config.optomech, s0, xi, lo, hi);
  }

  std::ostringstream text;
  const double r_plus = opt.r_plus_matched.value_or(
      std::numeric_limits<double>::infinity());
  if (wants_csv(common)) {
    text << "phi_opt,s0,xi,feasible,r_plus,n_a_predicted,s0_threshold";
    if (detuning) text << ",delta_opt,n_st_min";
    text << '\n'
         << fmt(opt.phi_opt, 12) << ',' << fmt(s0, 12) << ',' << fmt(xi, 12)
         << ',' << (opt.feasible ? "true" : "false") << ','
         << fmt(r_plus, 12) << ',' << fmt(opt.n_a_predicted, 12) << ','
         << fmt(opt.s0_threshold, 12);
    if (detuning) {
      text << ',' << fmt(detuning->delta_opt, 12) << ','
           << fmt(detuning->n_st_min, 12);
    }
    text << '\n';
  } else {
    text << "phi_opt       " << fixed(opt.phi_opt, 5) << " rad ("
         << fixed(opt.phi_opt / std::numbers::pi, 5) << " pi)\n"
         << "S(0)          " << fmt(s0) << '\n'
         << "xi            " << fmt(xi) << '\n'
         << "threshold     " << fmt(opt.s0_threshold) << '\n'
         << "feasible      " << (opt.feasible ? "true" : "false") << '\n'
         << "r_+ matched   "
         << (opt.feasible ? fixed(r_plus, 4) : std::string("none (infinite)"))
         << '\n'
         << "N_a predicted " << fmt(opt.n_a_predicted) << '\n';
    if (detuning) {
      text << "delta_opt     " << fmt(detuning->delta_opt, 8) << '\n'
           << "N_st min      " << fmt(detuning->n_st_min) << '\n';
    }
  }
  deliver(text.str(), common, out);
  return opt.feasible ? kExitOk : kExitInfeasible;
}

int cmd_sweep(const CommonOptions& common, const std::string& kind,
              std::size_t points, std::ostream& out) {
  const ModelConfig config = read_config(common);
  const ValidatedModel model = validate(config.optomech, config.squeezer);
  const double s0 = input_squeezing_spectrum(0.0, model);
  const double xi = model.xi;

  auto adapt = [&](SweepSpec spec) {
    spec.base = config.optomech;
    spec.s0 = s0;
    spec.xi = xi;
    if (points > 0) {
      for (auto& axis : spec.axes) axis.points = points;
    }
    return spec;
  };
  std::vector<SweepRecord> records;
  if (kind == "phase") {
    records = sweep_phase(adapt(fig1b_spec(xi)));
  } else if (kind == "squeezing") {
    SweepSpec spec = adapt(fig2_grid_spec());
    if (xi > 0.0) {
      spec.axes[0].min = std::max(spec.axes[0].min, 1.0 - xi + 5e-3);
    }
    records = sweep_squeezing(spec);
  } else if (kind == "matched") {
    records = matched_trace(adapt(fig2_trace_spec(xi)));
  } else if (kind == "cavity") {
    records = sweep_cavity(adapt(fig3_grid_spec()));
  } else if (kind == "detuning") {
    records = minimizing_trace(adapt(fig3_trace_spec(xi)), kFig3DetuningLo,
                               kFig3DetuningHi);
  } else {
    throw Error(ErrorKind::kDomainError, "unknown sweep kind '" + kind + "'");
  }
  std::ostringstream text;
  emit_csv(records, text);
  deliver(text.str(), common, out);
  return kExitOk;
}

int cmd_oracle_check(const CommonOptions& common, std::optional<double> g,
                     std::optional<double> tol, const std::string& dump_dir,
                     std::ostream& out) {
  ModelConfig config = read_config(common);
  if (g) config.optomech.g = *g;
  const ValidatedModel model = validate(config.optomech, config.squeezer);
  const double analytic = steady_state(model);
  const LinearGaussianModel linear = build_model(model);
  const OracleResult result = solve_steady_state(linear);
  const double rel = std::abs(result.phonon_number - analytic) / analytic;
  if (!dump_dir.empty()) write_oracle_matrices(dump_dir, linear, result);

  std::ostringstream text;
  if (wants_csv(common)) {
    text << "g,n_st_analytic,n_st_oracle,relative_error,stability_margin,"
            "lyapunov_residual,physicality_margin\n"
         << fmt(model.optomech.g, 12) << ',' << fmt(analytic, 12) << ','
         << fmt(result.phonon_number, 12) << ',' << fmt(rel, 12) << ','
         << fmt(result.stability_margin, 12) << ','
         << fmt(result.residual, 12) << ','
         << fmt(physicality_margin(result.covariance), 12) << '\n';
  } else {
    text << "g                   " << fmt(model.optomech.g) << '\n'
         << "N_st analytic       " << fmt(analytic, 8) << '\n'
         << "N_st oracle         " << fmt(result.phonon_number, 8) << '\n'
         << "relative error      " << fmt(rel, 4) << '\n'
         << "stability margin    " << fmt(result.stability_margin) << '\n'
         << "Lyapunov residual   " << fmt(result.residual, 3) << '\n'
         << "physicality margin  "
         << fmt(physicality_margin(result.covariance), 3) << '\n';
  }
  deliver(text.str(), common, out);
  if (tol && rel > *tol) {
    throw Error(ErrorKind::kDomainError,
                "oracle and analytic occupancy differ by " + fmt(rel, 4) +
                    " > tolerance " + fmt(*tol, 4));
  }
  return kExitOk;
}

int cmd_figures(const CommonOptions& common, std::ostream& out) {
  const std::string dir = common.out_path.empty() ? "." : common.out_path;
  const auto start = std::chrono::steady_clock::now();
  const auto paths = run_figures(dir);
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  for (const auto& p : paths) out << p.string() << '\n';
  out << "figures written in " << fixed(seconds, 2) << " s with "
      << sweep_threads() << " thread(s)\n";
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInfeasible: return kExitInfeasible;
    case ErrorKind::kIoError: return kExitIo;
    default: return kExitValidation;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Steady-state optomechanical cooling with a squeezed drive"};
  app.footer(kHelpFooter);
  app.require_subcommand(1);

  CommonOptions common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "Parameter file");
    sub->add_option("--set", common.overrides,
                    "Override KEY=VALUE, e.g. squeezer.chi=0.6 (repeatable)")
        ->allow_extra_args(false);
    sub->add_option("--out", common.out_path, "Output path");
    sub->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"csv", "human"}));
  };

  std::string omega_text;
  auto* spectrum = app.add_subcommand("spectrum", "Evaluate spectra on a grid");
  add_common(spectrum);
  spectrum->add_option("--omega", omega_text, "Frequency grid MIN:MAX:N");

  auto* cool = app.add_subcommand("cool", "Print the cooling report");
  add_common(cool);

  std::string window_text;
  auto* optimize =
      app.add_subcommand("optimize", "Optimal phase and matched bandwidth");
  add_common(optimize);
  optimize->add_option("--detuning-window", window_text,
                       "Also minimize N_st over delta_a in LO:HI");

  std::string kind = "phase";
  std::size_t points = 0;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep as CSV");
  add_common(sweep);
  sweep->add_option("--kind", kind, "Sweep kind")
      ->check(CLI::IsMember(
          {"phase", "squeezing", "matched", "cavity", "detuning"}));
  sweep->add_option("--points", points, "Points per axis")
      ->check(CLI::Range(2, 100000));

  std::optional<double> g;
  std::optional<double> tol;
  std::string dump_dir;
  auto* oracle = app.add_subcommand(
      "oracle-check", "Compare analytic and Lyapunov-oracle occupancy");
  add_common(oracle);
  oracle->add_option("--g", g, "Optomechanical coupling override");
  oracle->add_option("--tol", tol, "Maximum accepted relative error");
  oracle->add_option("--dump-matrices", dump_dir,
                     "Directory for drift/diffusion/covariance CSVs");

  auto* figures =
      app.add_subcommand("figures", "Write fig1b.csv, fig2.csv, fig3.csv");
  add_common(figures);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*spectrum) return cmd_spectrum(common, omega_text, out);
    if (*cool) return cmd_cool(common, out);
    if (*optimize) return cmd_optimize(common, window_text, out);
    if (*sweep) return cmd_sweep(common, kind, points, out);
    if (*oracle) return cmd_oracle_check(common, g, tol, dump_dir, out);
    if (*figures) return cmd_figures(common, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace sqzcool
