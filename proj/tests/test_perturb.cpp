#include "bfred/algebra/families.hpp"
#include "bfred/error.hpp"
#include "bfred/fredholm/classify.hpp"
#include "bfred/perturb/perturb.hpp"
#include "doctest.h"

using namespace bfred::algebra;
using namespace bfred::perturb;
using bfred::exact::GaussianRational;
using bfred::exact::Rational;

namespace {

ExactMatrix E(std::size_t n, std::size_t i, std::size_t j) { return ExactMatrix::unit(n, i, j); }
GaussianRational q(long a, long b = 1) { return GaussianRational(Rational(a, b)); }

}  // namespace

TEST_CASE("spectral idempotent pair in U2") {
  Homomorphism t = diagonal_part(2);
  auto u2 = t.source();
  Element a1 = u2->element(ExactMatrix{{2, 0}, {0, 0}});
  Element a2 = u2->element(ExactMatrix{{3, 1}, {0, 0}});
  auto pr = build_pair(t, a1, a2);
  CHECK(pr.p == u2->element(E(2, 1, 1)));
  CHECK(pr.w1 == u2->element(ExactMatrix{{q(1, 2), 0}, {0, 0}}));
  CHECK(pr.w2 == u2->element(ExactMatrix{{q(1, 3), 0}, {0, 0}}));
  CHECK(pr.same_idempotent());
  CHECK(pr.c1.is_zero());

  auto corner = corner_check(t, pr);
  CHECK(corner.z == t.target()->element(ExactMatrix{{q(3, 2), 0}, {0, 1}}));
  CHECK(corner.z_invertible);
  CHECK(corner.cond_i);
  CHECK(corner.holds());
  CHECK(pr.p + pr.w1 * a2 == u2->element(ExactMatrix{{q(3, 2), q(1, 2)}, {0, 1}}));

  auto eq = idempotent_equivalence(t, pr);
  CHECK(eq.i);
  CHECK(eq.ii);
  CHECK(eq.iii);
  CHECK(eq.iv);
  CHECK(eq.equivalent());
  CHECK(eq.bf_equivalent());
  CHECK(eq.c.is_zero());

  auto inv = inverse_identity(t, pr);
  CHECK(inv.applicable);
  CHECK(inv.d.is_zero());
  CHECK(inv.holds);

  auto prod = product_identity(t, a1, a2);
  REQUIRE(prod.holds());
  CHECK(*prod.w12 == u2->element(ExactMatrix{{q(1, 6), 0}, {0, 0}}));
  CHECK(*prod.w12 == pr.w2 * pr.w1);
  CHECK(prod.c->is_zero());
}

TEST_CASE("conditions fail together when the idempotents differ") {
  Homomorphism t = diagonal_part(2);
  auto u2 = t.source();
  auto pr = build_pair(t, u2->element(ExactMatrix{{2, 0}, {0, 0}}), u2->one());
  CHECK_FALSE(pr.same_idempotent());
  auto eq = idempotent_equivalence(t, pr);
  CHECK_FALSE(eq.i);
  CHECK_FALSE(eq.ii);
  CHECK_FALSE(eq.iii);
  CHECK_FALSE(eq.iv);
  CHECK(eq.equivalent());
  CHECK(eq.bf_equivalent());
  CHECK_FALSE(inverse_identity(t, pr).applicable);
  auto prod = product_identity(t, u2->element(ExactMatrix{{2, 0}, {0, 0}}), u2->one());
  CHECK(prod.hypothesis_failure);
}

TEST_CASE("pairs need lifting") {
  auto m2 = full_matrix(2);
  Homomorphism id(m2, m2, ExactMatrix::identity(m2->dim()));
  CHECK_NOTHROW(build_pair(id, m2->one(), m2->one()));
}

TEST_CASE("commutant and partners") {
  auto u2 = upper_triangular(2);
  Element e12 = u2->element(E(2, 0, 1));
  CHECK(commutant_basis(e12).size() == 2);
  CHECK(commutant_basis(u2->one()).size() == 3);
  for (const auto& s : commuting_partners(e12, 20, 5)) CHECK(s.commutes_with(e12));
}

TEST_CASE("pcomm probes") {
  auto u2 = upper_triangular(2);
  Element e12 = u2->element(E(2, 0, 1));
  auto ok = pcomm_probe(e12, PerturbClass::DrazinMinusInvertible, 30, 1);
  CHECK(ok.consistent());
  CHECK(ok.partners_in_class > 0);

  auto bad = pcomm_probe(u2->one(), PerturbClass::DrazinMinusInvertible, 30, 1);
  REQUIRE_FALSE(bad.consistent());
  CHECK(bad.counterexample->partner.commutes_with(u2->one()));
  CHECK(bfred::algebra::invert_in_algebra(bad.counterexample->sum));

  CHECK(pcomm_probe(u2->one(), PerturbClass::Drazin, 10, 2).consistent());
  CHECK_THROWS_AS(pcomm_probe(e12, PerturbClass::BFredholm, 5, 1), bfred::ShapeError);

  Homomorphism t = diagonal_part(2);
  CHECK(pcomm_probe(t.source()->element(E(2, 0, 1)), PerturbClass::BFMinusFredholm, 20, 3, &t).consistent());
  CHECK_FALSE(pcomm_probe(t.source()->one(), PerturbClass::BFMinusFredholm, 20, 3, &t).consistent());
}

TEST_CASE("nilpotent perturbation") {
  Homomorphism t = diagonal_part(2);
  auto u2 = t.source();
  Element a = u2->element(ExactMatrix{{1, 0}, {0, 0}});
  Element b = u2->element(E(2, 0, 1));
  CHECK(nilpotent_perturbation(t, a, b).holds());
  CHECK(nilpotent_perturbation(t, a, u2->one()).precondition_failure);

  using bfred::spectral::parse_diagonal;
  CHECK(nilpotent_perturbation(parse_diagonal("const 1"), parse_diagonal("tail 1/n -> 0")).holds());
  CHECK(nilpotent_perturbation(parse_diagonal("tail 2+1/n"), parse_diagonal("tail 1/n")).holds());
  CHECK(nilpotent_perturbation(parse_diagonal("const 1"), parse_diagonal("const 1")).precondition_failure);
}

TEST_CASE("Riesz equivalence") {
  Homomorphism t = diagonal_part(3);
  auto u3 = t.source();
  auto r = riesz_equivalence(t, u3->element(E(3, 0, 2) + E(3, 1, 2)), 15, 9);
  CHECK(r.algebraic);
  CHECK(r.bf_spectrum_empty);
  CHECK(r.fredholm_spectrum_preserved);
  CHECK(r.equivalent());
  CHECK(r.partners > 0);
  CHECK_THROWS_AS(riesz_equivalence(t, u3->one(), 5, 1), bfred::VerificationError);

  using bfred::spectral::parse_diagonal;
  auto d = riesz_equivalence(parse_diagonal("tail 1/n -> 0"), {parse_diagonal("const 2"), parse_diagonal("tail 3+1/n")});
  CHECK(d.equivalent());
  CHECK(d.fredholm_spectrum_preserved);
  CHECK(drazin_spectrum_preserved(u3->element(ExactMatrix{{1, 0, 0}, {0, 2, 0}, {0, 0, 2}}), u3->element(E(3, 1, 2))));
}

TEST_CASE("class membership") {
  Homomorphism t = diagonal_part(2);
  auto u2 = t.source();
  CHECK(in_class(u2->zero(), PerturbClass::KDMinusInvertible));
  CHECK_FALSE(in_class(u2->one(), PerturbClass::KDMinusInvertible));
  CHECK(in_class(u2->one(), PerturbClass::GBFredholm, &t));
  CHECK(in_class(u2->element(E(2, 0, 1)), PerturbClass::GBFMinusFredholm, &t));
  CHECK(std::string(to_string(PerturbClass::BFMinusFredholm)) == "BFMinusFredholm");
}
