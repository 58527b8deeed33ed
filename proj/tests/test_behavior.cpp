#include <catch2/catch_amalgamated.hpp>

#include "leggett/behavior.hpp"
#include "leggett/rng.hpp"

using namespace leggett;

TEST_CASE("behavior ingest") {
  SECTION("tiny negatives are clamped") {
    const std::vector<double> t = {0.25 + 5e-13, -5e-13, 0.5, 0.25};
    const Behavior b(1, 1, t);
    CHECK(b(0, 0, 0, 1) == 0.0);
    double sum = 0.0;
    for (double v : b.table()) sum += v;
    CHECK(sum == Catch::Approx(1.0).margin(1e-14));
  }
  SECTION("larger violations are rejected") {
    CHECK_THROWS_AS(Behavior(1, 1, {0.5, -1e-6, 0.25, 0.25}), std::invalid_argument);
    CHECK_THROWS_AS(Behavior(1, 1, {0.5, 0.25, 0.25, 0.25}), std::invalid_argument);
  }
}

TEST_CASE("quantum behavior basics") {
  SECTION("product state on aligned settings is deterministic") {
    const auto rho = pure_product_state({1.0, 0.0}, {1.0, 0.0});
    SettingsSet s;
    s.alice = {{{1.0, 0.0}, std::nullopt}};
    s.bob = {{{1.0, 0.0}, std::nullopt}};
    const auto b = quantum_behavior(rho, s);
    CHECK(b(0, 0, 0, 0) == Catch::Approx(1.0).margin(1e-12));
    CHECK(b(0, 0, 0, 1) == Catch::Approx(0.0).margin(1e-12));
    CHECK(b(0, 0, 1, 0) == Catch::Approx(0.0).margin(1e-12));
    CHECK(b(0, 0, 1, 1) == Catch::Approx(0.0).margin(1e-12));
  }
  SECTION("maximally mixed state is uniform") {
    const auto b = quantum_behavior(State4::maximally_mixed(), chsh_optimal_settings());
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int a = 0; a < 2; ++a)
          for (int bb = 0; bb < 2; ++bb) CHECK(b(x, y, a, bb) == Catch::Approx(0.25).margin(1e-12));
  }
  SECTION("singlet with orthogonal polarization directions") {
    // Alice at Bloch angle 0, Bob at Bloch angle pi: P(0,0) = 1/2 by the trace formula
    SettingsSet s;
    s.alice = {{PolarizationVector::from_bloch(0.0, 0.0), std::nullopt}};
    s.bob = {{PolarizationVector::from_bloch(M_PI, 0.0), std::nullopt}};
    const auto b = quantum_behavior(singlet_state(), s);
    CHECK(b(0, 0, 0, 0) == Catch::Approx(0.5).margin(1e-12));
    CHECK(b(0, 0, 1, 1) == Catch::Approx(0.5).margin(1e-12));
    CHECK(b(0, 0, 0, 1) == Catch::Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("no-signalling checks") {
  SECTION("quantum behaviors pass") {
    Rng rng(53);
    for (int k = 0; k < 30; ++k) {
      const auto rho = random_density<4>(rng);
      SettingsSet s;
      for (int i = 0; i < 3; ++i) s.alice.push_back({random_polarization(rng), std::nullopt});
      for (int i = 0; i < 3; ++i) s.bob.push_back({random_polarization(rng), std::nullopt});
      const auto rep = check_no_signalling(quantum_behavior(rho, s), 1e-10);
      CHECK(rep.ok);
    }
  }
  SECTION("hand-built signalling table is flagged") {
    // Alice outcome 0 certain when y = 0, fifty-fifty when y = 1.
    std::vector<double> t(16, 0.0);
    auto at = [&](int x, int y, int a, int b) -> double& { return t[((x * 2 + y) * 2 + a) * 2 + b]; };
    at(0, 0, 0, 0) = 1.0;
    at(0, 1, 0, 0) = 0.5;
    at(0, 1, 1, 0) = 0.5;
    at(1, 0, 0, 0) = 1.0;
    at(1, 1, 0, 0) = 1.0;
    const auto rep = check_no_signalling(Behavior(2, 2, t), 1e-10);
    CHECK_FALSE(rep.ok);
    CHECK(rep.maxViolation == Catch::Approx(0.5));
  }
}

TEST_CASE("bell values") {
  const auto chsh = BellFunctional::chsh();

  SECTION("deterministic local behavior reaches 2") {
    std::vector<double> t(16, 0.0);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) t[((x * 2 + y) * 2 + 0) * 2 + 0] = 1.0;
    CHECK(bell_value(Behavior(2, 2, t), chsh) == Catch::Approx(2.0));
  }

  SECTION("singlet at optimal settings reaches 2 sqrt 2") {
    const auto b = quantum_behavior(singlet_state(), chsh_optimal_settings());
    CHECK(chsh_value(b) == Catch::Approx(2.0 * std::sqrt(2.0)).margin(1e-9));
  }

  SECTION("maximally mixed state scores zero") {
    const auto b = quantum_behavior(State4::maximally_mixed(), chsh_optimal_settings());
    CHECK(chsh_value(b) == Catch::Approx(0.0).margin(1e-12));
  }

  SECTION("linearity under mixing") {
    Rng rng(59);
    const auto s = chsh_optimal_settings();
    for (int k = 0; k < 20; ++k) {
      const auto r1 = random_density<4>(rng);
      const auto r2 = random_density<4>(rng);
      const double lam = rng.uniform();
      const State4 mix(cplx(lam) * r1.matrix() + cplx(1 - lam) * r2.matrix());
      const double v1 = chsh_value(quantum_behavior(r1, s));
      const double v2 = chsh_value(quantum_behavior(r2, s));
      const double vm = chsh_value(quantum_behavior(mix, s));
      CHECK(vm == Catch::Approx(lam * v1 + (1 - lam) * v2).margin(1e-11));
    }
  }

  SECTION("dimension mismatch rejected") {
    std::vector<double> t(4, 0.25);
    CHECK_THROWS_AS(bell_value(Behavior(1, 1, t), chsh), std::invalid_argument);
  }
}

TEST_CASE("separable states respect the CHSH bound") {
  Rng rng(61);
  const auto s = chsh_optimal_settings();
  double worst = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const auto rho = random_separable_state(rng, 8);
    worst = std::max(worst, chsh_value(quantum_behavior(rho, s)));
  }
  CHECK(worst <= 2.0 + 1e-9);
}

TEST_CASE("imperfect settings feed through behavior generation") {
  SettingsSet s;
  s.alice = {{{1.0, 0.0}, ImperfectParams{0.2, 0.1}}};
  s.bob = {{{1.0, 0.0}, std::nullopt}};
  const auto b = quantum_behavior(pure_product_state({1.0, 0.0}, {1.0, 0.0}), s);
  CHECK(b(0, 0, 0, 0) == Catch::Approx(0.9));
  CHECK(b(0, 0, 1, 0) == Catch::Approx(0.1));
}
