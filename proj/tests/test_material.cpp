#include <doctest.h>

#include <numbers>

#include "dporo/material.hpp"
#include "oracles.hpp"

using namespace dporo;

namespace {

bool mentions(const ValidationReport& r, const char* needle) {
  for (const auto& m : r.messages)
    if (m.find(needle) != std::string::npos) return true;
  return false;
}

} // namespace

TEST_CASE("leading minors of the energy matrix, hand-computed set") {
  // mu=1, b=d=0.1, a1=a2=1, a3=0, alpha=gamma=2, beta=0:
  // 1, 0.99, 0.98, 0.98*2, 0.98*4.
  const MaterialParams p = oracle::p_case1();
  const ValidationReport r = validate_positivity(p);
  CHECK(r.positivity_ok);
  CHECK(r.minors[0] == doctest::Approx(1.0));
  CHECK(r.minors[1] == doctest::Approx(0.99));
  CHECK(r.minors[2] == doctest::Approx(0.98));
  CHECK(r.minors[3] == doctest::Approx(1.96));
  CHECK(r.minors[4] == doctest::Approx(3.92));
  CHECK(r.alpha1mu_minus_b2 == doctest::Approx(0.99));
  CHECK(r.alpha2mu_minus_d2 == doctest::Approx(0.99));
  CHECK(r.alphagamma_minus_beta2 == doctest::Approx(4.0));
  CHECK(r.schur_det == doctest::Approx(0.98));
}

TEST_CASE("alpha1*mu == b^2 boundary is rejected with the definiteness message") {
  MaterialParams p = oracle::p_case1();
  p.b = 0.5;
  p.alpha1 = 0.25;  // alpha1*mu - b^2 == 0 exactly
  const ValidationReport r = validate_positivity(p);
  CHECK_FALSE(r.positivity_ok);
  CHECK(mentions(r, "alpha1*mu - b^2"));
}

TEST_CASE("alpha*gamma == beta^2 boundary is rejected") {
  MaterialParams p = oracle::p_case1();
  p.alpha = 1.0;
  p.gamma = 1.0;
  p.beta = 1.0;
  const ValidationReport r = validate_positivity(p);
  CHECK_FALSE(r.positivity_ok);
  CHECK(mentions(r, "alpha*gamma - beta^2"));
}

TEST_CASE("near-zero minor is flagged marginal but still positive") {
  MaterialParams p = oracle::p_case1();
  p.alpha1 = (p.b * p.b + 1e-14) / p.mu;
  const ValidationReport r = validate_positivity(p);
  CHECK(mentions(r, "marginal"));
}

TEST_CASE("damping condition is strict") {
  MaterialParams p = oracle::p_exp();
  CHECK(validate_damping(p));

  p.tau1 = 0.0;
  CHECK_FALSE(validate_damping(p));

  p = oracle::p_exp();
  p.tau2 = 1.0;
  p.tau3 = 1.0;  // 4*tau1*tau4 == (tau2+tau3)^2
  CHECK_FALSE(validate_damping(p));

  p.tau3 = 0.9;
  CHECK(validate_damping(p));
}

TEST_CASE("validate_all aggregates and reports") {
  for (const MaterialParams& p : {oracle::p_exp(), oracle::p_case1(),
                                  oracle::p_case2(), oracle::p_case3()}) {
    const ValidationReport r = validate_all(p, BoundaryKind::MixedA3);
    CHECK(r.ok());
    CHECK(r.messages.empty());
  }

  MaterialParams bad = oracle::p_exp();
  bad.rho = 0.0;
  const ValidationReport r = validate_all(bad, BoundaryKind::MixedA3);
  CHECK_FALSE(r.fields_ok);
  CHECK_FALSE(r.ok());
  CHECK(mentions(r, "rho must be positive"));

  MaterialParams uncoupled = oracle::p_exp();
  uncoupled.b = 0.0;
  CHECK_FALSE(validate_all(uncoupled, BoundaryKind::MixedA3).coupling_ok);
}

TEST_CASE("negative damping fails even with a positive product") {
  MaterialParams p = oracle::p_exp();
  p.tau1 = -1.0;
  p.tau4 = -1.0;  // 4*tau1*tau4 = 4 > 0 but tau1 <= 0
  CHECK_FALSE(validate_damping(p));
}

TEST_CASE("wavenumber is n*pi/length") {
  MaterialParams p = oracle::p_exp();
  CHECK(wavenumber(p, 1) == doctest::Approx(1.0));
  CHECK(wavenumber(p, 7) == doctest::Approx(7.0));
  p.length = 2.0;
  CHECK(wavenumber(p, 3) == doctest::Approx(3.0 * std::numbers::pi / 2.0));
}

TEST_CASE("boundary kind names") {
  CHECK(std::string(to_string(BoundaryKind::MixedA2)) == "A2");
  CHECK(std::string(to_string(BoundaryKind::MixedA3)) == "A3");
}
