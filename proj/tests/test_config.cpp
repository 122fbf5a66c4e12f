#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "sqzcool/config.hpp"
#include "sqzcool/error.hpp"

using namespace sqzcool;

TEST_CASE("parse key = value lines with comments") {
  std::istringstream in(R"(# cavity
kappa_a_s = 1.0
kappa_a_loss=0.25   # trailing comment
delta_a = 1
optomech.g = 0.1
squeezer.chi = 6.2e-1

phi = -0.5
)");
  const auto config = parse_config(in);
  CHECK(config.optomech.kappa_a_s == 1.0);
  CHECK(config.optomech.kappa_a_loss == 0.25);
  CHECK(config.optomech.delta_a == 1.0);
  CHECK(config.optomech.g == 0.1);
  CHECK(config.squeezer.chi == 0.62);
  CHECK(config.squeezer.phi == -0.5);
  CHECK(config.optomech.omega_m == 1.0);
}

TEST_CASE("unknown keys and bad values are errors") {
  auto fails = [](const char* text) {
    std::istringstream in(text);
    try {
      parse_config(in);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::kConfigError;
    }
    return false;
  };
  CHECK(fails("kappa = 1\n"));
  CHECK(fails("squeezer.g = 1\n"));
  CHECK(fails("optomech.chi = 1\n"));
  CHECK(fails("cavity.g = 1\n"));
  CHECK(fails("g = fast\n"));
  CHECK(fails("g = 1.0x\n"));
  CHECK(fails("g =\n"));
  CHECK(fails("just words\n"));
}

TEST_CASE("overrides use dotted or bare names") {
  ModelConfig config;
  apply_override(config, "squeezer.chi=0.6");
  apply_override(config, "n_th = 12");
  CHECK(config.squeezer.chi == 0.6);
  CHECK(config.optomech.n_th == 12.0);
  CHECK_THROWS_AS(apply_override(config, "squeezer.n_th=1"), Error);
}

TEST_CASE("missing file is an I/O error") {
  try {
    load_config("/nonexistent/dir/model.cfg");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kIoError);
  }
}

TEST_CASE("shipped configuration parses") {
  const auto config = load_config(SQZCOOL_CONFIG_DIR "/fig1.cfg");
  CHECK(config.optomech.n_th == 1000.0);
  CHECK(config.squeezer.kappa_c_s > config.squeezer.chi);
}
