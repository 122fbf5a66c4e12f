#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sqzcool/cooling_rates.hpp"
#include "sqzcool/error.hpp"
#include "sqzcool/golden_section.hpp"
#include "sqzcool/optimizer.hpp"
#include "sqzcool/squeezing_spectra.hpp"
#include "sqzcool/sweep.hpp"

using namespace sqzcool;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::kDomainError;
}

// Numerical minimizer of s_a(-1) over phi in [0, pi), periodic wrap.
double numerical_phase(const OptomechParams& om, const SqueezerParams& sq) {
  auto stokes = [&](double phi) {
    SqueezerParams s = sq;
    s.phi = phi;
    return force_spectrum(-1.0, validate(om, s));
  };
  const double period = std::numbers::pi;
  const auto bracket = bracket_scan(stokes, -0.25 * period, 1.25 * period, 241);
  const double coarse =
      golden_section_minimize(stokes, bracket.lo, bracket.hi, 1e-10);
  const double fine = refine_stationary(stokes, coarse - 1e-3, coarse + 1e-3,
                                        1e-4);
  return canonical_phase(fine);
}

double phase_distance(double a, double b) {
  const double d = std::fmod(std::abs(a - b), std::numbers::pi);
  return std::min(d, std::numbers::pi - d);
}

}  // namespace

TEST_CASE("optimal phase") {
  CHECK(optimal_phase(1.0, 1.0) ==
        doctest::Approx(1.0172219678978514).epsilon(1e-15));
  CHECK(optimal_phase(1.0, 1.0) / std::numbers::pi ==
        doctest::Approx(0.32379).epsilon(1e-5));
  // Resonant drive with a vanishing linewidth: atan2(2k, -k^2) -> pi/2.
  CHECK(optimal_phase(1.0, 1e-4) ==
        doctest::Approx(std::numbers::pi / 4).epsilon(1e-4));
  OptomechParams narrow = figure_baseline();
  narrow.kappa_a_s = 1e-4;
  CHECK(phase_distance(
            numerical_phase(narrow, from_observables(0.3, 2.0, 1.0, 0.0)),
            optimal_phase(1.0, 1e-4)) < 1e-8);
  CHECK(kind_of([] { optimal_phase(0.0, 1.0); }) == ErrorKind::kDomainError);
  CHECK(kind_of([] { optimal_phase(-1.0, 1.0); }) == ErrorKind::kDomainError);
}

TEST_CASE("matched bandwidth examples") {
  const double five_db = std::pow(10.0, -0.5);
  const auto five = matched_bandwidth(five_db, 1.0, 1.0, 1.0);
  REQUIRE(five.feasible);
  CHECK(*five.r_plus_matched ==
        doctest::Approx(3.066176327159147).epsilon(1e-12));
  CHECK(*five.r_plus_matched == doctest::Approx(3.065).epsilon(1e-3));
  CHECK(five.n_a_predicted == 0.0);

  const auto fig1 = matched_bandwidth(0.3, 1.0, 1.0, 1.0);
  REQUIRE(fig1.feasible);
  CHECK(*fig1.r_plus_matched ==
        doctest::Approx(2.7459288449830863).epsilon(1e-12));
  CHECK(*fig1.r_plus_matched == doctest::Approx(2.7462).epsilon(2e-4));
  CHECK(fig1.s0_threshold == doctest::Approx(0.3819660112501051));

  const auto edge = matched_bandwidth(fig1.s0_threshold, 1.0, 1.0, 1.0);
  CHECK_FALSE(edge.feasible);
  CHECK_FALSE(edge.r_plus_matched.has_value());

  const auto above = matched_bandwidth(0.5, 1.0, 1.0, 1.0);
  CHECK_FALSE(above.feasible);
  CHECK(above.n_a_predicted ==
        doctest::Approx(infinite_bandwidth_backaction(0.5, 1.0, 1.0, 1.0)));

  CHECK(kind_of([] { matched_bandwidth(0.0, 1.0, 1.0, 1.0); }) ==
        ErrorKind::kDomainError);
  CHECK(kind_of([] { matched_bandwidth(0.5, 0.0, 1.0, 1.0); }) ==
        ErrorKind::kDomainError);
  CHECK(kind_of([] { matched_bandwidth(0.5, 1.0, -1.0, 1.0); }) ==
        ErrorKind::kDomainError);
}

TEST_CASE("infinite-bandwidth back-action") {
  CHECK(infinite_bandwidth_backaction(std::pow(10.0, -0.5), 1.0, 1.0, 1.0) ==
        doctest::Approx(0.008944405984590398).epsilon(1e-12));
  CHECK(infinite_bandwidth_backaction(0.3162, 1.0, 1.0, 1.0) ==
        doctest::Approx(0.008942).epsilon(1e-3));
  CHECK(infinite_bandwidth_backaction(1.0, 1.0, 1.0, 1.0) == 0.25);
  CHECK(infinite_bandwidth_backaction(1.0, 1e-9, 1.0, 1.0) ==
        doctest::Approx(0.25));
  CHECK(kind_of([] { infinite_bandwidth_backaction(0.2, 0.8, 1.0, 1.0); }) ==
        ErrorKind::kDomainError);
}

TEST_CASE("configure_matched realizes the matched configuration") {
  const auto base = figure_baseline();
  const auto pure = configure_matched(base, 0.3, 1.0);
  CHECK(pure.optimum.feasible);
  CHECK(pure.model.r_plus == doctest::Approx(2.7459288449830863));
  CHECK(std::abs(pure.n_a) <= 1e-9);
  CHECK(pure.n_st == doctest::Approx(0.0125).epsilon(1e-4));
  CHECK(pure.gamma_cool == doctest::Approx(0.016));

  const auto lossy = configure_matched(base, 0.3, 0.8);
  CHECK(lossy.model.xi == doctest::Approx(0.8));
  CHECK(lossy.n_a == doctest::Approx(0.05).epsilon(1e-9));

  const auto plain = configure_matched(base, 0.3, 0.0);
  CHECK_FALSE(plain.optimum.feasible);
  CHECK(plain.n_a == doctest::Approx(0.25));
  CHECK(plain.n_st == doctest::Approx(0.2624967).epsilon(1e-6));

  const auto wide = configure_matched(base, 0.5, 1.0);
  CHECK_FALSE(wide.optimum.feasible);
  CHECK(wide.model.r_plus == doctest::Approx(kInfiniteBandwidthProxy));
  CHECK(wide.n_a ==
        doctest::Approx(infinite_bandwidth_backaction(0.5, 1.0, 1.0, 1.0)));

  CHECK_THROWS_AS(configure_matched(base, 0.1, 0.8), Error);
}

TEST_CASE("phase optimality against a numerical minimizer") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 150; ++i) {
    const double delta = 0.05 + 3.0 * unit(rng);
    const double kappa = 0.05 + 3.0 * unit(rng);
    OptomechParams om = figure_baseline();
    om.delta_a = delta;
    om.kappa_a_s = kappa;
    const auto sq = from_observables(0.2 + 0.7 * unit(rng),
                                     0.3 + 5.0 * unit(rng), 1.0, 0.0);
    const double closed = optimal_phase(delta, kappa);
    CHECK(closed >= 0.0);
    CHECK(closed < std::numbers::pi);
    CHECK(phase_distance(numerical_phase(om, sq), closed) < 1e-8);
  }
}

TEST_CASE("matching identity across random cavities") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int feasible = 0;
  for (int i = 0; i < 1000; ++i) {
    OptomechParams om = figure_baseline();
    om.delta_a = 0.1 + 3.0 * unit(rng);
    om.kappa_a_s = 0.05 + 2.0 * unit(rng);
    const double xi = 0.3 + 0.7 * unit(rng);
    const double s0 = 1.0 - xi + 1e-3 + (xi - 1e-3) * unit(rng);
    const auto config = configure_matched(om, s0, xi);
    if (!config.optimum.feasible) continue;
    ++feasible;
    const auto& model = config.model;
    const double zeta = sideband_asymmetry(model);
    CHECK(n_tilde(1.0, model) / m_tilde(1.0, model) ==
          doctest::Approx(zeta).epsilon(1e-9));
    CHECK(std::abs(backaction_limit(model) -
                   standard_backaction_limit(model) * (1.0 - xi)) <= 1e-9);
    CHECK(s0 <= config.optimum.s0_threshold);
  }
  CHECK(feasible > 100);
}

TEST_CASE("feasibility boundary continuity") {
  const double threshold = matching_threshold(1.0, 1.0, 1.0);
  const double limit = infinite_bandwidth_backaction(threshold, 1.0, 1.0, 1.0);
  CHECK(limit == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
  for (double delta : {1e-3, 1e-5, 1e-7}) {
    const auto below = configure_matched(figure_baseline(), threshold - delta,
                                         1.0);
    const double above =
        infinite_bandwidth_backaction(threshold + delta, 1.0, 1.0, 1.0);
    CHECK(below.optimum.feasible);
    CHECK(std::abs(below.n_a - above) < 10.0 * delta);
  }
}

TEST_CASE("detuning optimization") {
  SUBCASE("resolved sideband") {
    OptomechParams om = figure_baseline();
    om.kappa_a_s = 0.1;
    const auto best = optimize_detuning(om, 0.3, 1.0, 0.2, 3.0);
    CHECK(best.delta_opt == doctest::Approx(1.0).epsilon(0.02));
    om.delta_a = best.delta_opt;
    const double gamma = cooling_rate(validate(om, {0.0, 1.0, 0.0, 0.0}));
    CHECK(best.n_st_min ==
          doctest::Approx(om.gamma * om.n_th / (om.gamma + gamma))
              .epsilon(0.05));
  }
  SUBCASE("fig1 cavity") {
    const auto best = optimize_detuning(figure_baseline(), 0.3, 1.0, 0.2, 3.0);
    CHECK(best.n_st_min <= 0.0125);
  }
  SUBCASE("unsqueezed baseline against a dense scan") {
    const auto base = figure_baseline();
    const auto best = optimize_detuning(base, 1.0, 0.0, 0.2, 3.0);
    double scan_delta = 0.0, scan_value = 1e300;
    for (int i = 0; i <= 280000; ++i) {
      const double delta = 0.2 + 2.8 * i / 280000.0;
      OptomechParams om = base;
      om.delta_a = delta;
      const double value = configure_matched(om, 1.0, 0.0).n_st;
      if (value < scan_value) {
        scan_value = value;
        scan_delta = delta;
      }
    }
    CHECK(best.delta_opt == doctest::Approx(scan_delta).epsilon(1e-4));
    CHECK(best.n_st_min <= scan_value + 1e-9);
  }
  SUBCASE("never worse than a 1000-point scan") {
    for (double kappa : {0.05, 0.3, 1.0, 2.0, 4.0}) {
      OptomechParams om = figure_baseline();
      om.kappa_a_s = kappa;
      const auto best = optimize_detuning(om, 0.3, 1.0, 0.01, 10.0);
      double scan = 1e300;
      for (int i = 0; i < 1000; ++i) {
        om.delta_a = 0.01 + (10.0 - 0.01) * i / 999.0;
        scan = std::min(scan, configure_matched(om, 0.3, 1.0).n_st);
      }
      CHECK(best.n_st_min <= scan + 1e-9);
    }
  }
  SUBCASE("monotone window") {
    CHECK(kind_of([] {
            optimize_detuning(figure_baseline(), 0.3, 1.0, 0.2, 0.5);
          }) == ErrorKind::kNoMinimumInWindow);
  }
}
