#include <catch2/catch_amalgamated.hpp>

#include "leggett/lp.hpp"
#include "leggett/rng.hpp"
#include "support/lp_oracle.hpp"

using namespace leggett;
using namespace leggett::lp;

TEST_CASE("tiny programs") {
  SECTION("maximize x subject to x <= 1, x >= 0") {
    LinearProgram p;
    p.add_variable();
    p.add_inequality({{0, 1.0}}, 1.0);
    p.set_objective(0, 1.0);
    const auto r = solve(p);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(*r.objective == Catch::Approx(1.0));
    CHECK(r.certificate.primal[0] == Catch::Approx(1.0));
    CHECK(verify_certificate(p, r.certificate).ok);
  }

  SECTION("x >= 0 with x <= -1 is infeasible with a verifiable ray") {
    LinearProgram p;
    p.add_variable();
    p.add_inequality({{0, 1.0}}, -1.0);
    const auto r = solve(p);
    REQUIRE(r.status == SolveStatus::Infeasible);
    const auto v = verify_certificate(p, r.certificate);
    CHECK(v.ok);
    CHECK(v.margin > 0.0);

    SECTION("sign-flipped ray is rejected") {
      auto bad = r.certificate;
      for (double& y : bad.dualIneq) y = -y;
      CHECK_FALSE(verify_certificate(p, bad).ok);
    }

    SECTION("margin shrinks when the rhs is relaxed") {
      auto relaxed = p;
      relaxed.inequalities[0].rhs += 1e-3;
      const auto v2 = verify_certificate(relaxed, r.certificate);
      CHECK(v2.margin == Catch::Approx(v.margin - r.certificate.dualIneq[0] * 1e-3).margin(1e-12));
    }
  }

  SECTION("transportation toy") {
    // two supplies (1,1), two demands (1,1), identity cost, maximize matching
    // on the diagonal routes; optimal ships everything diagonally
    LinearProgram p;
    for (int k = 0; k < 4; ++k) p.add_variable();  // x00 x01 x10 x11
    p.add_equality({{0, 1.0}, {1, 1.0}}, 1.0);     // supply 0
    p.add_equality({{2, 1.0}, {3, 1.0}}, 1.0);     // supply 1
    p.add_equality({{0, 1.0}, {2, 1.0}}, 1.0);     // demand 0
    p.add_equality({{1, 1.0}, {3, 1.0}}, 1.0);     // demand 1
    p.objective = {1.0, 0.0, 0.0, 1.0};
    const auto r = solve(p);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(*r.objective == Catch::Approx(2.0));
    CHECK(verify_certificate(p, r.certificate).ok);
  }

  SECTION("unbounded direction is detected") {
    LinearProgram p;
    p.add_variable();
    p.set_objective(0, 1.0);
    const auto r = solve(p);
    CHECK(r.status == SolveStatus::Unbounded);
    REQUIRE_FALSE(r.certificate.primalRay.empty());
    CHECK(r.certificate.primalRay[0] > 0.0);
  }

  SECTION("feasibility-only program") {
    LinearProgram p;
    p.add_variable();
    p.add_variable();
    p.add_equality({{0, 1.0}, {1, 1.0}}, 2.0);
    const auto r = solve(p);
    REQUIRE(r.status == SolveStatus::Feasible);
    CHECK(verify_certificate(p, r.certificate).ok);
  }
}

TEST_CASE("row scaling does not change status") {
  Rng rng(67);
  for (int k = 0; k < 100; ++k) {
    auto p = lp_oracle::random_lp(rng, true);
    const auto base = solve(p);
    auto scaled = p;
    for (auto& row : scaled.equalities) {
      const double f = rng.uniform(0.1, 10.0);
      for (auto& t : row.terms) t.coef *= f;
      row.rhs *= f;
    }
    for (auto& row : scaled.inequalities) {
      const double f = rng.uniform(0.1, 10.0);
      for (auto& t : row.terms) t.coef *= f;
      row.rhs *= f;
    }
    const auto after = solve(scaled);
    CHECK(after.status == base.status);
  }
}

TEST_CASE("every decided status carries a certificate the verifier accepts") {
  Rng rng(71);
  int checked = 0;
  for (int k = 0; k < 300; ++k) {
    const auto p = lp_oracle::random_lp(rng, k % 2 == 0);
    const auto r = solve(p);
    if (r.status == SolveStatus::Undecided) continue;
    if (r.status == SolveStatus::Unbounded) continue;  // ray checked separately below
    const auto v = verify_certificate(p, r.certificate);
    INFO("status " << to_string(r.status) << " detail " << v.detail);
    CHECK(v.ok);
    ++checked;
  }
  CHECK(checked > 200);
}

TEST_CASE("agreement with the vertex-enumeration oracle") {
  Rng rng(20240810);
  int tested = 0;
  int agreed = 0;
  while (tested < 500) {
    const auto p = lp_oracle::random_lp(rng, true);
    const auto oracle = lp_oracle::classify(p);
    if (oracle.decisionMargin < 1e-5) continue;  // numerically ambiguous instance
    ++tested;
    const auto r = solve(p);
    REQUIRE(r.status != SolveStatus::Undecided);
    bool match = r.status == oracle.status;
    if (match && r.status == SolveStatus::Optimal)
      match = std::abs(*r.objective - oracle.objective) <= 1e-6 * std::max(1.0, std::abs(oracle.objective));
    if (!match) {
      INFO("solver " << to_string(r.status) << " oracle " << to_string(oracle.status)
                     << "\n" << dump(p));
      CHECK(match);
    }
    agreed += match ? 1 : 0;
  }
  CHECK(agreed == 500);
}

TEST_CASE("feasibility statuses also agree with the oracle") {
  Rng rng(73);
  int tested = 0, agreed = 0;
  while (tested < 200) {
    const auto p = lp_oracle::random_lp(rng, false);
    const auto oracle = lp_oracle::classify(p);
    if (oracle.decisionMargin < 1e-5) continue;
    ++tested;
    const auto r = solve(p);
    agreed += (r.status == oracle.status) ? 1 : 0;
  }
  CHECK(agreed == 200);
}

TEST_CASE("dump round trip") {
  Rng rng(79);
  for (int k = 0; k < 50; ++k) {
    const auto p = lp_oracle::random_lp(rng, k % 2 == 0);
    const auto q = parse_dump(dump(p));
    CHECK(q.numVars == p.numVars);
    CHECK(q.equalities.size() == p.equalities.size());
    CHECK(q.inequalities.size() == p.inequalities.size());
    CHECK(solve(q).status == solve(p).status);
    CHECK(dump(q) == dump(p));
  }
}

TEST_CASE("certificate replayed against a perturbed program") {
  LinearProgram p;
  p.add_variable();
  p.add_variable();
  p.add_equality({{0, 1.0}, {1, 1.0}}, -3.0);  // impossible with x >= 0
  const auto r = solve(p);
  REQUIRE(r.status == SolveStatus::Infeasible);
  const double m0 = verify_certificate(p, r.certificate).margin;
  auto shifted = p;
  shifted.equalities[0].rhs += 1e-3;
  const double m1 = verify_certificate(shifted, r.certificate).margin;
  CHECK(std::abs((m0 - m1)) == Catch::Approx(std::abs(r.certificate.dualEq[0]) * 1e-3).margin(1e-12));
}
