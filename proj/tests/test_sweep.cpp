#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <string>

#include "sqzcool/error.hpp"
#include "sqzcool/optimizer.hpp"
#include "sqzcool/sweep.hpp"

using namespace sqzcool;

namespace {

std::string csv(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  emit_csv(records, out);
  return out.str();
}

int line_count(const std::string& text) {
  int n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("axis grids") {
  const auto lin = Axis{"phi", 0.0, 1.0, 5}.values();
  REQUIRE(lin.size() == 5);
  CHECK(lin.front() == 0.0);
  CHECK(lin[2] == 0.5);
  CHECK(lin.back() == 1.0);
  const auto log = Axis{"r_plus", 0.5, 20.0, 3, AxisScale::kLog}.values();
  CHECK(log.front() == 0.5);
  CHECK(log[1] == doctest::Approx(std::sqrt(10.0)));
  CHECK(log.back() == 20.0);
  CHECK_THROWS_AS((Axis{"phi", 0.0, 1.0, 1}.values()), Error);
  CHECK_THROWS_AS((Axis{"phi", 1.0, 1.0, 4}.values()), Error);
  CHECK_THROWS_AS((Axis{"s0", 0.0, 1.0, 4, AxisScale::kLog}.values()), Error);
}

TEST_CASE("phase sweep") {
  auto spec = fig1b_spec(1.0);
  const auto records = sweep_phase(spec);
  REQUIRE(records.size() == 721);
  const double phi_opt = optimal_phase(1.0, 1.0);
  double best = 1e300;
  for (const auto& r : records) best = std::min(best, r.n_st);
  CHECK(best == doctest::Approx(0.0125).epsilon(1e-3));
  // Local minima sit one period apart.
  std::vector<double> minima;
  for (std::size_t i = 1; i + 1 < records.size(); ++i) {
    if (records[i].n_st < records[i - 1].n_st &&
        records[i].n_st <= records[i + 1].n_st) {
      minima.push_back(records[i].phi);
    }
  }
  REQUIRE(minima.size() == 2);
  const double step = 2.0 * std::numbers::pi / 720.0;
  CHECK(std::abs(minima[0] - phi_opt) <= step);
  CHECK(std::abs(minima[1] - minima[0] - std::numbers::pi) <= step);

  spec.axes[0].points = 3;
  const auto at_opt = sweep_phase(
      SweepSpec{{Axis{"phi", phi_opt, phi_opt + 1.0, 2}}, spec.base, 0.3, 1.0});
  CHECK(at_opt[0].n_st == doctest::Approx(0.0124998).epsilon(1e-5));
  CHECK(line_count(csv(sweep_phase(spec))) == 4);

  for (const auto& r : sweep_phase(fig1b_spec(0.0))) {
    CHECK(r.n_st == doctest::Approx(0.2624967).epsilon(1e-6));
  }
}

TEST_CASE("squeezing sweep and matched trace") {
  SweepSpec spec = fig2_grid_spec();
  spec.axes[0] = Axis{"s0", 0.3, 1.0, 3};
  spec.axes[1] = Axis{"r_plus", 2.7459288449830863, 10.0, 2};
  const auto grid = sweep_squeezing(spec);
  REQUIRE(grid.size() == 6);
  CHECK(grid[0].s0 == 0.3);
  CHECK(grid[1].r_plus == 10.0);
  CHECK(grid[0].n_st == doctest::Approx(0.0125).epsilon(1e-3));
  CHECK(grid[4].n_st == doctest::Approx(grid[5].n_st));  // S(0) = 1
  CHECK(grid[4].n_st == doctest::Approx(0.2624967).epsilon(1e-6));

  SweepSpec trace{{Axis{"s0", 0.3, 0.5, 3}}, figure_baseline(), 1.0, 1.0};
  const auto along = matched_trace(trace);
  REQUIRE(along.size() == 3);
  CHECK(along[0].feasible);
  CHECK(std::abs(along[0].n_a) <= 1e-9);
  CHECK(along[0].series == "trace");
  CHECK_FALSE(along[2].feasible);
  CHECK(std::isfinite(along[2].n_st));
}

TEST_CASE("cavity sweep") {
  SweepSpec spec = fig3_grid_spec();
  spec.axes[0] = Axis{"kappa_a", 0.05, 1.0, 2, AxisScale::kLog};
  spec.axes[1] = Axis{"delta_a", 1.0, 2.0, 2};
  const auto records = sweep_cavity(spec);
  REQUIRE(records.size() == 4);
  CHECK(records[2].kappa_a == 1.0);
  CHECK(records[2].delta_a == 1.0);
  CHECK(records[2].n_st == doctest::Approx(0.0125).epsilon(1e-3));

  spec.xi = 0.0;
  const auto plain = sweep_cavity(spec);
  CHECK(plain[2].n_st == doctest::Approx(0.2624967).epsilon(1e-6));
  CHECK(plain[0].n_a == doctest::Approx(0.05 * 0.05 / 4.0).epsilon(1e-12));
}

TEST_CASE("CSV format and determinism") {
  CHECK_THROWS_AS(csv({}), Error);
  const auto records = sweep_phase(
      SweepSpec{{Axis{"phi", 0.0, 1.0, 3}}, figure_baseline(), 0.3, 1.0});
  const auto text = csv(records);
  CHECK(text.rfind(
            "series,xi,s0,r_plus,phi,kappa_a,delta_a,n_tilde_wm,m_tilde_wm,"
            "s_a_minus,s_a_plus,gamma_cool,n_a,n_st,feasible\n",
            0) == 0);
  CHECK(text.find(",true\n") != std::string::npos);

  auto spec = fig3_grid_spec();
  spec.axes[0].points = 23;
  spec.axes[1].points = 17;
  setenv("SQZCOOL_THREADS", "1", 1);
  CHECK(sweep_threads() == 1);
  const auto serial = csv(sweep_cavity(spec));
  setenv("SQZCOOL_THREADS", "4", 1);
  CHECK(sweep_threads() == 4);
  const auto parallel = csv(sweep_cavity(spec));
  unsetenv("SQZCOOL_THREADS");
  CHECK(serial == parallel);
  CHECK(line_count(serial) == 1 + 23 * 17);

  CHECK_THROWS_AS(emit_csv(records, "/nonexistent/dir/out.csv"), Error);
}

TEST_CASE("minimizing trace") {
  SweepSpec spec{{Axis{"kappa_a", 0.1, 1.0, 2}}, figure_baseline(), 0.3, 1.0};
  const auto trace =
      minimizing_trace(spec, kFig3DetuningLo, kFig3DetuningHi);
  REQUIRE(trace.size() == 2);
  CHECK(trace[0].delta_a == doctest::Approx(1.0).epsilon(0.02));
  CHECK(trace[1].n_st <= 0.0125);
}
