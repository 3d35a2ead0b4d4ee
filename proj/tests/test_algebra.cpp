#include <random>

#include "bfred/algebra/families.hpp"
#include "bfred/error.hpp"
#include "doctest.h"

using namespace bfred::algebra;
using bfred::exact::GaussianRational;

namespace {

ExactMatrix E(std::size_t n, std::size_t i, std::size_t j) { return ExactMatrix::unit(n, i, j); }

}  // namespace

TEST_CASE("build_algebra examples") {
  CHECK(build_algebra(2, {E(2, 0, 1)})->dim() == 2);
  CHECK(build_algebra(3, {})->dim() == 1);
  auto u2 = build_algebra(2, {E(2, 0, 0), E(2, 0, 1), E(2, 1, 1)});
  CHECK(u2->dim() == 3);
  for (const auto& b : u2->basis()) CHECK(b(1, 0).is_zero());
  CHECK(build_algebra(3, {E(3, 0, 1), E(3, 1, 0), E(3, 1, 2), E(3, 2, 1)})->dim() == 9);
  CHECK_THROWS_AS(build_algebra(3, {E(3, 0, 1), E(3, 1, 0)}, 2), bfred::ClosureCapExceeded);
}

TEST_CASE("algebra construction is verified") {
  CHECK_THROWS_AS(FiniteAlgebra::create(2, {E(2, 0, 1)}), bfred::VerificationError);
  CHECK_THROWS_AS(FiniteAlgebra::create(2, {ExactMatrix::identity(2), E(2, 0, 1), E(2, 1, 0)}),
                  bfred::VerificationError);
  CHECK_THROWS_AS(FiniteAlgebra::create(2, {ExactMatrix::identity(2), ExactMatrix::identity(2)}),
                  bfred::VerificationError);
  auto u2 = upper_triangular(2);
  CHECK_THROWS_AS(u2->element(E(2, 1, 0)), bfred::VerificationError);
  // structure constants reproduce the products
  const auto& c = u2->structure_constants();
  for (std::size_t i = 0; i < u2->dim(); ++i)
    for (std::size_t j = 0; j < u2->dim(); ++j)
      CHECK(u2->from_coords(c[i][j]).matrix() == u2->basis()[i] * u2->basis()[j]);
}

TEST_CASE("invert_in_algebra examples") {
  auto u2 = upper_triangular(2);
  CHECK(invert_in_algebra(u2->one())->is_one());
  auto a = u2->element(ExactMatrix{{1, 1}, {0, 1}});
  CHECK(invert_in_algebra(a)->matrix() == ExactMatrix({{1, -1}, {0, 1}}));
  CHECK_FALSE(invert_in_algebra(u2->element(E(2, 0, 1))));
}

TEST_CASE("homomorphism verification and kernel") {
  Homomorphism t = diagonal_part(3);
  CHECK(t.is_surjective());
  CHECK(t.has_lifting_oracle());
  CHECK(t.kernel().dim() == 3);
  CHECK(t.kernel().nilpotency_index() == 3u);
  auto u2 = upper_triangular(2);
  // unital but E12 -> E12 + E11 is not multiplicative
  ExactMatrix bad = ExactMatrix::identity(u2->dim());
  bad(0, 1) = 1;
  CHECK_THROWS_AS(Homomorphism(u2, u2, bad), bfred::VerificationError);
  ExactMatrix zero_map(u2->dim(), u2->dim());
  CHECK_THROWS_AS(Homomorphism(u2, u2, zero_map), bfred::VerificationError);
  // identity homomorphism has a trivial kernel
  Homomorphism id(u2, u2, ExactMatrix::identity(u2->dim()));
  CHECK(id.kernel().dim() == 0);
  // projection of a direct sum onto one summand: idempotent kernel
  auto d2 = diagonal_algebra(2);
  auto d1 = diagonal_algebra(1);
  Homomorphism first = Homomorphism::from_function(d2, d1, [](const ExactMatrix& m) {
    return ExactMatrix{{m(0, 0)}};
  });
  CHECK(first.kernel().dim() == 1);
  CHECK_FALSE(first.has_lifting_oracle());
}

TEST_CASE("quotient examples") {
  Homomorphism t = diagonal_part(2);
  Quotient q = quotient(t);
  CHECK(q.algebra->dim() == 2);
  CHECK(q.algebra->is_commutative());
  // two orthogonal idempotents summing to 1
  Element e11 = q.projection(t.source()->element(E(2, 0, 0)));
  CHECK(e11.is_idempotent());
  CHECK((e11 * (q.algebra->one() - e11)).is_zero());
  CHECK_FALSE(e11.is_zero());
  CHECK_FALSE(e11.is_one());

  auto u2 = upper_triangular(2);
  Quotient same = quotient(Homomorphism(u2, u2, ExactMatrix::identity(u2->dim())));
  CHECK(same.algebra->dim() == 3);
  CHECK_FALSE(same.algebra->is_commutative());

  Quotient q3 = quotient(diagonal_part(3));
  CHECK(q3.algebra->dim() == 3);
  CHECK(q3.algebra->is_commutative());
  // quotient o section = identity on coordinates
  for (std::size_t k = 0; k < q3.algebra->dim(); ++k) {
    Element x = q3.algebra->basis_element(k);
    CHECK(q3.projection(q3.section(x)) == x);
  }
}

TEST_CASE("lift_idempotent examples") {
  Homomorphism t2 = diagonal_part(2);
  auto q = t2.target()->element(ExactMatrix::diagonal(std::vector<GaussianRational>{1, 0}));
  auto r = lift_idempotent(t2, q);
  CHECK(r.p.matrix() == E(2, 0, 0));
  CHECK(r.steps == 0);

  Homomorphism t3 = diagonal_part(3);
  auto q3 = t3.target()->element(ExactMatrix::diagonal(std::vector<GaussianRational>{1, 0, 1}));
  ExactMatrix noisy = q3.matrix() + E(3, 0, 1) * GaussianRational(2) - E(3, 1, 2) + E(3, 0, 2) * GaussianRational(5);
  auto lifted = lift_idempotent(t3, q3, t3.source()->element(noisy));
  CHECK(lifted.p.is_idempotent());
  CHECK(t3(lifted.p) == q3);
  CHECK(lifted.steps >= 1);
  CHECK(lifted.steps <= 2);

  auto zero = lift_idempotent(t3, t3.target()->zero());
  CHECK(zero.p.is_zero());
  CHECK_THROWS_AS(lift_idempotent(t3, t3.target()->one() * GaussianRational(2)), bfred::VerificationError);
}

TEST_CASE("random_closed families are verified homomorphisms") {
  std::mt19937_64 rng(3);
  IntSource next = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  for (int trial = 0; trial < 8; ++trial) {
    Homomorphism h = random_closed({2, 1, 1}, 2, next);
    CHECK(h.is_surjective());
    CHECK(h.has_lifting_oracle());
    for (const auto& k : h.kernel().elements()) CHECK(k.matrix().block_diagonal_part(std::vector<std::size_t>{2, 1, 1}).is_zero());
  }
  Homomorphism b = block_diagonal_part({2, 1});
  CHECK(b.source()->dim() == 7);
  CHECK(b.target()->dim() == 5);
  CHECK(b.kernel().dim() == 2);
}
