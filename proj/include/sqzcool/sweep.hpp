#pragma once

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "sqzcool/model_params.hpp"

namespace sqzcool {

enum class AxisScale { kLinear, kLog };

/// One swept parameter. Recognized names: phi, s0, r_plus, kappa_a, delta_a.
struct Axis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  std::size_t points = 2;
  AxisScale scale = AxisScale::kLinear;

  /// Grid values, endpoints included exactly. Throws kDomainError if
  /// points < 2, min >= max, or a log axis has min <= 0.
  std::vector<double> values() const;
};

/// Grid plus the fixed part of the model. Quantities not on an axis are
/// taken from `base` (cavity and mechanics), `s0` and `xi`; the phase and
/// bandwidth follow the optimal-phase and matched-bandwidth rules unless
/// swept explicitly.
struct SweepSpec {
  std::vector<Axis> axes;
  OptomechParams base;
  double s0 = 1.0;
  double xi = 1.0;
};

struct SweepRecord {
  std::string series = "grid";
  double xi = 0.0;
  double s0 = 1.0;
  double r_plus = 0.0;
  double phi = 0.0;
  double kappa_a = 0.0;
  double delta_a = 0.0;
  double n_tilde_wm = 0.0;
  double m_tilde_wm = 0.0;
  double s_a_minus = 0.0;  // s_a(-omega_m), Stokes side
  double s_a_plus = 0.0;   // s_a(+omega_m), anti-Stokes side
  double gamma_cool = 0.0;
  double n_a = 0.0;
  double n_st = 0.0;
  bool feasible = false;  // matching equation solvable at finite r_+
};

/// Occupancy versus squeezing phase; axes = {phi}. The bandwidth is matched
/// once for the fixed cavity.
std::vector<SweepRecord> sweep_phase(const SweepSpec& spec);

/// Occupancy over (S(0), r_+) at the optimal phase; axes = {s0, r_plus},
/// s0 outermost. The s0 axis must stay above 1 - xi.
std::vector<SweepRecord> sweep_squeezing(const SweepSpec& spec);

/// Occupancy along the matched curve r_+(S(0)); axes = {s0}. Points where
/// matching fails carry feasible = false and the r_+ -> infinity values.
std::vector<SweepRecord> matched_trace(const SweepSpec& spec);

/// Occupancy over (kappa_a, delta_a) with optimal phase and matched (or
/// infinite) bandwidth; axes = {kappa_a, delta_a}, kappa_a outermost.
std::vector<SweepRecord> sweep_cavity(const SweepSpec& spec);

/// For each kappa_a on axes = {kappa_a}, the detuning in
/// [delta_lo, delta_hi] minimizing the occupancy.
std::vector<SweepRecord> minimizing_trace(const SweepSpec& spec,
                                          double delta_lo, double delta_hi);

/// Header plus one row per record, 12 significant digits. Throws
/// kEmptyInput for no records. Returns the number of bytes written.
std::size_t emit_csv(const std::vector<SweepRecord>& records,
                     std::ostream& out);
/// Same, to a file; "-" means standard output. Throws kIoError.
std::size_t emit_csv(const std::vector<SweepRecord>& records,
                     const std::string& destination);

/// Parameters shared by all figures: gamma = 2e-7, N_th = 1000,
/// kappa_a = delta_a = 1, g = 0.1, in units of omega_m.
OptomechParams figure_baseline();

/// Default grids.
SweepSpec fig1b_spec(double xi);
SweepSpec fig2_grid_spec();
SweepSpec fig2_trace_spec(double xi);
SweepSpec fig3_grid_spec();
SweepSpec fig3_trace_spec(double xi);
inline constexpr double kFig3DetuningLo = 0.01;
inline constexpr double kFig3DetuningHi = 10.0;

/// Writes fig1b.csv, fig2.csv and fig3.csv into `directory`; returns the
/// paths written.
std::vector<std::filesystem::path> run_figures(
    const std::filesystem::path& directory);

/// Worker count: SQZCOOL_THREADS when set to a positive integer, else the
/// hardware concurrency.
unsigned sweep_threads();

}  // namespace sqzcool
