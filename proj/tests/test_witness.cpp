#include <doctest.h>

#include "support/random.hpp"
#include "tristeer/error.hpp"
#include "tristeer/witness.hpp"

using namespace tristeer;
using namespace tristeer::testing;

namespace {

double e(const ComplexMatrix& m, int i, int j) { return std::abs(m(i - 1, j - 1)); }
double d(const ComplexMatrix& m, int i) { return std::max(0.0, m(i - 1, i - 1).real()); }

struct Oracle {
  double ghz_gme, ghz_ent, prop1, w_ref;
};

Oracle oracle_margins(const ComplexMatrix& t) {
  const double c18 = e(t, 1, 8);
  const double s27 = std::sqrt(d(t, 2) * d(t, 7));
  const double s36 = std::sqrt(d(t, 3) * d(t, 6));
  const double s45 = std::sqrt(d(t, 4) * d(t, 5));
  const double w = e(t, 2, 3) + e(t, 2, 5) + e(t, 3, 5);
  const double half = 0.5 * (d(t, 2) + d(t, 3) + d(t, 5));
  return {c18 - (s27 + s36 + s45), c18 - std::max({s27, s36, s45}),
          w - 0.5 * (2 * d(t, 1) + d(t, 4) + d(t, 6) + d(t, 7)) - half,
          w - std::sqrt(d(t, 1) * d(t, 4)) - std::sqrt(d(t, 1) * d(t, 6)) -
              std::sqrt(d(t, 1) * d(t, 7)) - half};
}

ThreeQubitState pure(const ComplexVector& v) { return ThreeQubitState(v * v.adjoint()); }

}  // namespace

TEST_CASE("criterion ids round trip") {
  for (auto id : {CriterionId::kGhzGme, CriterionId::kGhzEnt, CriterionId::kProp1Gme,
                  CriterionId::kWGmeRef, CriterionId::kPptEnt}) {
    CHECK(parse_criterion(to_string(id)) == id);
  }
  CHECK(to_string(CriterionId::kWGmeRef) == "W_GME_REF");
  CHECK_THROWS_AS(parse_criterion("GHZ"), Error);
  CHECK(certifies_genuine(CriterionId::kProp1Gme));
  CHECK_FALSE(certifies_genuine(CriterionId::kPptEnt));
}

TEST_CASE("entry criteria match the oracle on random states") {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const ThreeQubitState rho(random_density(rng, 8, 1 + trial % 4));
    const Oracle o = oracle_margins(rho.matrix());
    CHECK(ghz_gme(rho).margin == doctest::Approx(o.ghz_gme).epsilon(1e-12));
    CHECK(ghz_ent(rho).margin == doctest::Approx(o.ghz_ent).epsilon(1e-12));
    CHECK(prop1_gme(rho).margin == doctest::Approx(o.prop1).epsilon(1e-12));
    CHECK(w_gme_ref(rho).margin == doctest::Approx(o.w_ref).epsilon(1e-12));
    for (const auto& v : {ghz_gme(rho), prop1_gme(rho), ppt_ent(rho)}) {
      CHECK(v.margin == doctest::Approx(v.lhs - v.rhs).epsilon(1e-12));
      CHECK(v.detected == (v.margin > kCriterionTol));
    }
  }
}

TEST_CASE("ppt margin matches the oracle eigenvalues") {
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const ThreeQubitState rho(random_density(rng, 8, 1 + trial % 6));
    double lo = 1.0;
    for (int q = 0; q < 3; ++q) {
      lo = std::min(lo, min_eigenvalue_oracle(partial_transpose_oracle(rho.matrix(), q)));
    }
    CHECK(ppt_ent(rho).margin == doctest::Approx(-lo).epsilon(1e-10));
  }
}

TEST_CASE("pure ghz and w are detected by their witnesses") {
  const ThreeQubitState g = noisy_ghz().at(1.0);
  CHECK(ghz_gme(g).detected);
  CHECK(ghz_ent(g).detected);
  CHECK(ppt_ent(g).detected);
  const ThreeQubitState w = noisy_w().at(1.0);
  CHECK(prop1_gme(w).detected);
  CHECK(w_gme_ref(w).detected);
  CHECK_FALSE(ghz_gme(w).detected);
}

TEST_CASE("maximally mixed state fires nothing") {
  const ThreeQubitState mixed(qmat::identity(8) / 8.0);
  for (auto id : {CriterionId::kGhzGme, CriterionId::kGhzEnt, CriterionId::kProp1Gme,
                  CriterionId::kWGmeRef, CriterionId::kPptEnt}) {
    CHECK_FALSE(evaluate(id, mixed).detected);
  }
}

TEST_CASE("ghz entanglement uses the weakest cut") {
  Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const ThreeQubitState rho(random_density(rng, 8, 2));
    const GhzCutMargins m = ghz_cut_margins(rho);
    CHECK(ghz_ent(rho).margin == doctest::Approx(std::min({m.a_bc, m.b_ac, m.c_ab})));
  }
  // Bell pair on BC with A in |0>+|1>: entangled across B|AC and C|AB only.
  ComplexVector v = ComplexVector::Zero(8);
  v(0) = v(3) = v(4) = v(7) = 0.5;
  const GhzCutMargins m = ghz_cut_margins(pure(v));
  CHECK(m.a_bc <= 0.0);
  CHECK_FALSE(ghz_ent(pure(v)).detected);
  CHECK(ghz_ent(pure(v)).detail.find("A|BC") != std::string::npos);
}

TEST_CASE("biseparable pure states satisfy the entry inequalities") {
  Rng rng(44);
  const Subsystem cuts[] = {Subsystem::A, Subsystem::B, Subsystem::C};
  for (int q = 0; q < 3; ++q) {
    for (int trial = 0; trial < 200; ++trial) {
      const ComplexVector v = random_biseparable_pure(rng, q);
      const auto ineqs = biseparability_inequalities(v * v.adjoint(), cuts[q]);
      REQUIRE(ineqs.size() == 3);
      for (const auto& in : ineqs) CHECK(in.holds(1e-12));
      CHECK(pure_biseparable_check(PureState(v), cuts[q]));
    }
  }
}

TEST_CASE("ghz and w violate the entry inequalities for every cut") {
  for (auto cut : {Subsystem::A, Subsystem::B, Subsystem::C}) {
    CHECK_FALSE(pure_biseparable_check(w_state(), cut));
  }
  // GHZ only has the |000>,|111> coherence, invisible to these entries.
  CHECK(pure_biseparable_check(ghz(0.7), Subsystem::A));
}
