#include "sqzcool/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numbers>
#include <optional>
#include <thread>

#include "sqzcool/cooling_rates.hpp"
#include "sqzcool/error.hpp"
#include "sqzcool/optimizer.hpp"
#include "sqzcool/squeezing_spectra.hpp"

namespace sqzcool {

namespace {

constexpr const char* kCsvHeader =
    "series,xi,s0,r_plus,phi,kappa_a,delta_a,n_tilde_wm,m_tilde_wm,"
    "s_a_minus,s_a_plus,gamma_cool,n_a,n_st,feasible";

// Smallest distance kept between a trace's S(0) and the purity bound 1 - xi.
constexpr double kPurityBoundGap = 5e-3;

const Axis& axis_named(const SweepSpec& spec, std::size_t index,
                       const char* name) {
  if (spec.axes.size() <= index || spec.axes[index].name != name) {
    throw Error(ErrorKind::kDomainError,
                std::string("sweep expects axis ") + std::to_string(index) +
                    " to be '" + name + "'");
  }
  return spec.axes[index];
}

void expect_axis_count(const SweepSpec& spec, std::size_t count) {
  if (spec.axes.size() != count) {
    throw Error(ErrorKind::kDomainError,
                "sweep expects " + std::to_string(count) + " axes, got " +
                    std::to_string(spec.axes.size()));
  }
}

// Evaluates fn(0..count-1) on a pool of workers; results land in index
// order, so the output never depends on scheduling.
template <typename Fn>
std::vector<SweepRecord> parallel_map(std::size_t count, Fn fn) {
  std::vector<SweepRecord> out(count);
  const std::size_t workers =
      std::min<std::size_t>(sweep_threads(), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < count; i += workers) out[i] = fn(i);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

SweepRecord describe(const ValidatedModel& model, bool feasible,
                     std::optional<double> n_a_override,
                     std::string series) {
  SweepRecord r;
  r.series = std::move(series);
  const double w = model.omega_m();
  r.xi = model.xi;
  r.s0 = input_squeezing_spectrum(0.0, model);
  r.r_plus = model.r_plus;
  r.phi = model.phi();
  r.kappa_a = model.kappa_a();
  r.delta_a = model.delta_a();
  r.n_tilde_wm = n_tilde(w, model);
  r.m_tilde_wm = m_tilde(w, model);
  r.s_a_minus = force_spectrum(-w, model);
  r.s_a_plus = force_spectrum(w, model);
  r.gamma_cool = cooling_rate(model);
  r.n_a = n_a_override ? *n_a_override : backaction_limit(model);
  r.n_st = mix_occupancy(model.optomech.gamma, model.optomech.n_th,
                         r.gamma_cool, r.n_a);
  r.feasible = feasible;
  return r;
}

SweepRecord describe(const MatchedConfiguration& config, std::string series) {
  SweepRecord r = describe(config.model, config.optimum.feasible, config.n_a,
                           std::move(series));
  return r;
}

void append(std::string& line, double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), ",%.12g", value);
  line += buffer;
}

}  // namespace

std::vector<double> Axis::values() const {
  if (points < 2) {
    throw Error(ErrorKind::kDomainError, "axis " + name + " needs >= 2 points");
  }
  if (!(min < max)) {
    throw Error(ErrorKind::kDomainError, "axis " + name + " needs min < max");
  }
  if (scale == AxisScale::kLog && !(min > 0.0)) {
    throw Error(ErrorKind::kDomainError,
                "log axis " + name + " needs min > 0");
  }
  std::vector<double> out(points);
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / last;
    out[i] = scale == AxisScale::kLinear
                 ? min + (max - min) * t
                 : std::exp(std::log(min) + (std::log(max) - std::log(min)) * t);
  }
  out.front() = min;
  out.back() = max;
  return out;
}

std::vector<SweepRecord> sweep_phase(const SweepSpec& spec) {
  expect_axis_count(spec, 1);
  const auto phases = axis_named(spec, 0, "phi").values();
  const MatchedConfiguration matched =
      configure_matched(spec.base, spec.s0, spec.xi);
  return parallel_map(phases.size(), [&](std::size_t i) {
    SqueezerParams squeezer = matched.model.squeezer;
    squeezer.phi = phases[i];
    // The matched model is already in units of omega_m.
    const ValidatedModel model = validate(matched.model.optomech, squeezer);
    SweepRecord r = describe(model, matched.optimum.feasible, std::nullopt,
                             "grid");
    r.phi = phases[i];
    return r;
  });
}

std::vector<SweepRecord> sweep_squeezing(const SweepSpec& spec) {
  expect_axis_count(spec, 2);
  const auto s0_values = axis_named(spec, 0, "s0").values();
  const auto r_values = axis_named(spec, 1, "r_plus").values();
  if (spec.xi > 0.0 && !(s0_values.front() > 1.0 - spec.xi)) {
    throw Error(ErrorKind::kDomainError,
                "s0 axis must stay above 1 - xi for a drive of purity xi");
  }
  const double unit = spec.base.omega_m;
  const double kappa = spec.base.kappa_a() / unit;
  const double delta = spec.base.delta_a / unit;
  const double phi = optimal_phase(delta, kappa);
  const double threshold = matching_threshold(spec.xi, delta, kappa);

  OptomechParams optomech = spec.base;
  optomech.kappa_a_s = spec.xi * spec.base.kappa_a();
  optomech.kappa_a_loss = spec.base.kappa_a() - optomech.kappa_a_s;

  return parallel_map(s0_values.size() * r_values.size(), [&](std::size_t k) {
    const double s0 = s0_values[k / r_values.size()];
    const double r_plus = r_values[k % r_values.size()];
    SqueezerParams squeezer;
    if (spec.xi > 0.0) {
      squeezer = from_observables(s0, r_plus * unit, spec.xi, phi, spec.xi);
    } else {
      squeezer.kappa_c_s = unit;
      squeezer.phi = phi;
    }
    const ValidatedModel model = validate(optomech, squeezer);
    SweepRecord r = describe(model, spec.xi > 0.0 && s0 < threshold,
                             std::nullopt, "grid");
    r.s0 = s0;
    r.r_plus = r_plus;
    return r;
  });
}

std::vector<SweepRecord> matched_trace(const SweepSpec& spec) {
  expect_axis_count(spec, 1);
  const auto s0_values = axis_named(spec, 0, "s0").values();
  return parallel_map(s0_values.size(), [&](std::size_t i) {
    const auto config = configure_matched(spec.base, s0_values[i], spec.xi);
    SweepRecord r = describe(config, "trace");
    r.s0 = s0_values[i];
    return r;
  });
}

std::vector<SweepRecord> sweep_cavity(const SweepSpec& spec) {
  expect_axis_count(spec, 2);
  const auto kappas = axis_named(spec, 0, "kappa_a").values();
  const auto deltas = axis_named(spec, 1, "delta_a").values();
  return parallel_map(kappas.size() * deltas.size(), [&](std::size_t k) {
    OptomechParams base = spec.base;
    base.kappa_a_s = kappas[k / deltas.size()];
    base.kappa_a_loss = 0.0;
    base.delta_a = deltas[k % deltas.size()];
    return describe(configure_matched(base, spec.s0, spec.xi), "grid");
  });
}

std::vector<SweepRecord> minimizing_trace(const SweepSpec& spec,
                                          double delta_lo, double delta_hi) {
  expect_axis_count(spec, 1);
  const auto kappas = axis_named(spec, 0, "kappa_a").values();
  return parallel_map(kappas.size(), [&](std::size_t i) {
    OptomechParams base = spec.base;
    base.kappa_a_s = kappas[i];
    base.kappa_a_loss = 0.0;
    const auto best =
        optimize_detuning(base, spec.s0, spec.xi, delta_lo, delta_hi);
    base.delta_a = best.delta_opt;
    return describe(configure_matched(base, spec.s0, spec.xi), "trace");
  });
}

std::size_t emit_csv(const std::vector<SweepRecord>& records,
                     std::ostream& out) {
  if (records.empty()) {
    throw Error(ErrorKind::kEmptyInput, "no records to write");
  }
  std::size_t bytes = 0;
  std::string line = kCsvHeader;
  line += '\n';
  out << line;
  bytes += line.size();
  for (const auto& r : records) {
    line = r.series;
    for (double v : {r.xi, r.s0, r.r_plus, r.phi, r.kappa_a, r.delta_a,
                     r.n_tilde_wm, r.m_tilde_wm, r.s_a_minus, r.s_a_plus,
                     r.gamma_cool, r.n_a, r.n_st}) {
      append(line, v);
    }
    line += r.feasible ? ",true\n" : ",false\n";
    out << line;
    bytes += line.size();
  }
  if (!out) throw Error(ErrorKind::kIoError, "write failed");
  return bytes;
}

std::size_t emit_csv(const std::vector<SweepRecord>& records,
                     const std::string& destination) {
  if (destination == "-") return emit_csv(records, std::cout);
  std::ofstream file(destination, std::ios::binary);
  if (!file) throw Error(ErrorKind::kIoError, "cannot open " + destination);
  const std::size_t bytes = emit_csv(records, file);
  file.close();
  if (!file) throw Error(ErrorKind::kIoError, "cannot write " + destination);
  return bytes;
}

OptomechParams figure_baseline() {
  OptomechParams p;
  p.omega_m = 1.0;
  p.gamma = 2e-7;
  p.n_th = 1000.0;
  p.kappa_a_s = 1.0;
  p.kappa_a_loss = 0.0;
  p.delta_a = 1.0;
  p.g = 0.1;
  return p;
}

SweepSpec fig1b_spec(double xi) {
  SweepSpec spec;
  spec.axes = {{"phi", 0.0, 2.0 * std::numbers::pi, 721, AxisScale::kLinear}};
  spec.base = figure_baseline();
  spec.s0 = 0.3;
  spec.xi = xi;
  return spec;
}

SweepSpec fig2_grid_spec() {
  SweepSpec spec;
  spec.axes = {{"s0", 0.05, 1.0, 201, AxisScale::kLinear},
               {"r_plus", 0.5, 20.0, 201, AxisScale::kLog}};
  spec.base = figure_baseline();
  spec.xi = 1.0;
  return spec;
}

SweepSpec fig2_trace_spec(double xi) {
  SweepSpec spec;
  // An unsqueezed drive ignores S(0), so it keeps the full range.
  const double lo =
      xi > 0.0 ? std::max(0.05, 1.0 - xi + kPurityBoundGap) : 0.05;
  spec.axes = {{"s0", lo, 1.0, 201, AxisScale::kLinear}};
  spec.base = figure_baseline();
  spec.xi = xi;
  return spec;
}

SweepSpec fig3_grid_spec() {
  SweepSpec spec;
  spec.axes = {{"kappa_a", 0.05, 5.0, 201, AxisScale::kLog},
               {"delta_a", 0.2, 3.0, 201, AxisScale::kLinear}};
  spec.base = figure_baseline();
  spec.s0 = 0.3;
  spec.xi = 1.0;
  return spec;
}

SweepSpec fig3_trace_spec(double xi) {
  SweepSpec spec;
  spec.axes = {{"kappa_a", 0.05, 5.0, 201, AxisScale::kLog}};
  spec.base = figure_baseline();
  spec.s0 = 0.3;
  spec.xi = xi;
  return spec;
}

std::vector<std::filesystem::path> run_figures(
    const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  constexpr double kFigureXi[] = {1.0, 0.8, 0.0};

  std::vector<SweepRecord> fig1b;
  for (double xi : kFigureXi) {
    auto part = sweep_phase(fig1b_spec(xi));
    fig1b.insert(fig1b.end(), part.begin(), part.end());
  }

  std::vector<SweepRecord> fig2 = sweep_squeezing(fig2_grid_spec());
  for (double xi : kFigureXi) {
    auto part = matched_trace(fig2_trace_spec(xi));
    fig2.insert(fig2.end(), part.begin(), part.end());
  }

  std::vector<SweepRecord> fig3 = sweep_cavity(fig3_grid_spec());
  for (double xi : kFigureXi) {
    auto part =
        minimizing_trace(fig3_trace_spec(xi), kFig3DetuningLo, kFig3DetuningHi);
    fig3.insert(fig3.end(), part.begin(), part.end());
  }

  std::vector<std::filesystem::path> written = {
      directory / "fig1b.csv", directory / "fig2.csv", directory / "fig3.csv"};
  emit_csv(fig1b, written[0].string());
  emit_csv(fig2, written[1].string());
  emit_csv(fig3, written[2].string());
  return written;
}

unsigned sweep_threads() {
  if (const char* env = std::getenv("SQZCOOL_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) {
      return static_cast<unsigned>(value);
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace sqzcool
