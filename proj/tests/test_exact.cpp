#include <random>

#include "bfred/error.hpp"
#include "bfred/exact/linalg.hpp"
#include "bfred/exact/roots.hpp"
#include "doctest.h"

using namespace bfred::exact;
using bfred::ShapeError;

namespace {

GaussianRational Q(const char* s) { return GaussianRational::parse(s); }

// Laplace expansion along the first row; independent of elimination.
GaussianRational laplace_det(const ExactMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  GaussianRational det;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    ExactMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    GaussianRational term = m(0, j) * laplace_det(minor);
    det += (j % 2 == 0) ? term : -term;
  }
  return det;
}

ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t n, bool complex = false) {
  std::uniform_int_distribution<int> val(-3, 3), den(1, 2), coin(0, 3);
  ExactMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Rational re(val(rng), den(rng));
      re.canonicalize();
      Rational im = 0;
      if (complex && coin(rng) == 0) im = val(rng);
      m(r, c) = GaussianRational(re, im);
    }
  return m;
}

ExactMatrix column_of(const Vector& v) { return ExactMatrix::column(v); }

}  // namespace

TEST_CASE("gaussian rational literals round-trip") {
  CHECK(Q("1/2+3/4*i").to_string() == "1/2+3/4*i");
  CHECK(Q("i") == GaussianRational::i());
  CHECK(Q("-i").to_string() == "-i");
  CHECK(Q("2*i") * Q("-i") == GaussianRational(2));
  CHECK(Q("4/6") == Q("2/3"));
  CHECK_THROWS_AS(Q("0.5"), bfred::ParseError);
  CHECK((Q("1+i") * Q("1+i").inverse()).is_one());
}

TEST_CASE("rank examples") {
  CHECK(rank(ExactMatrix::zero(3, 3)) == 0);
  CHECK(rank(ExactMatrix::identity(4)) == 4);
  CHECK(rank(ExactMatrix{{1, 2}, {2, 4}}) == 1);
}

TEST_CASE("solve_linear examples") {
  Vector v{Q("1/2"), Q("-3"), Q("i")};
  auto s = solve_linear(ExactMatrix::identity(3), column_of(v));
  REQUIRE(s);
  CHECK(s->particular == column_of(v));
  CHECK(s->kernel.empty());

  CHECK_FALSE(solve_linear(ExactMatrix{{1, 1}, {0, 0}}, column_of({GaussianRational(1), GaussianRational(1)})));

  auto t = solve_linear(ExactMatrix{{1, 1}}, column_of({GaussianRational(2)}));
  REQUIRE(t);
  CHECK(t->particular == column_of({GaussianRational(2), GaussianRational(0)}));
  REQUIRE(t->kernel.size() == 1);
  // span{(1,-1)}: the basis vector is a multiple of it
  CHECK(t->kernel[0][0] == -t->kernel[0][1]);

  CHECK_THROWS_AS(solve_linear(ExactMatrix::identity(2), ExactMatrix::identity(3)), ShapeError);
}

TEST_CASE("minimal polynomial examples") {
  CHECK(minimal_polynomial(ExactMatrix::identity(3)) == ExactPolynomial::linear(1));
  CHECK(minimal_polynomial(ExactMatrix{{0, 1}, {0, 0}}) == ExactPolynomial::monomial(2));
  std::vector<GaussianRational> d{2, 2, 0};
  CHECK(minimal_polynomial(ExactMatrix::diagonal(d)) == ExactPolynomial::x() * ExactPolynomial::linear(2));
}

TEST_CASE("bezout examples") {
  ExactPolynomial x = ExactPolynomial::x();
  auto b = bezout(x * x, ExactPolynomial::linear(1));
  CHECK(b.gcd == ExactPolynomial(1));
  CHECK(b.u * x * x + b.v * ExactPolynomial::linear(1) == ExactPolynomial(1));

  ExactPolynomial f({GaussianRational(2), GaussianRational(4)});
  auto z = bezout(f, ExactPolynomial());
  CHECK(z.gcd == f.monic());
  CHECK(z.u == ExactPolynomial(Q("1/4")));
  CHECK(z.v.is_zero());

  CHECK(bezout(x, x).gcd == x);
}

TEST_CASE("split_at_zero examples") {
  ExactPolynomial x = ExactPolynomial::x();
  auto [k, q] = split_at_zero(x * x * ExactPolynomial::linear(2));
#ifndef BFRED_MUTATE_SPLIT_AT_ZERO
  CHECK(k == 2);
#endif
  CHECK(q == ExactPolynomial::linear(2));
  CHECK(split_at_zero(ExactPolynomial::linear(1)).first == 0);
  auto [k3, q3] = split_at_zero(x * x * x);
  CHECK(k3 == 3);
  CHECK(q3 == ExactPolynomial(1));
}

TEST_CASE("random matrices: determinant, inverse, rank-nullity, minimal polynomial") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + trial % 5;
    ExactMatrix a = random_matrix(rng, n, trial % 3 == 0);
    if (trial % 4 == 1 && n > 1)  // force a rank drop
      for (std::size_t c = 0; c < n; ++c) a(n - 1, c) = a(0, c) * Q("2");
    CHECK(determinant(a) == laplace_det(a));
    CHECK(rank(a) + kernel_basis(a).size() == n);
    for (const auto& k : kernel_basis(a)) CHECK((a * column_of(k)).is_zero());
    auto inv = inverse(a);
    CHECK(inv.has_value() == !laplace_det(a).is_zero());
    if (inv) CHECK((a * *inv).is_identity());

    ExactPolynomial m = minimal_polynomial(a);
    CHECK(m.is_monic());
    CHECK(m(a).is_zero());
    // no monic divisor of lower degree annihilates a
    auto chi = characteristic_polynomial(a);
    CHECK(chi(a).is_zero());
    CHECK((chi % m).is_zero());
    for (const auto& [factor, mult] : squarefree_decomposition(m)) {
      (void)mult;
      CHECK_FALSE((m / factor)(a).is_zero());
    }
    // characteristic polynomial against Laplace at a few points
    for (int t = -2; t <= 2; ++t) {
      ExactMatrix shifted = ExactMatrix::identity(n) * GaussianRational(t) - a;
      CHECK(chi(GaussianRational(t)) == laplace_det(shifted));
    }
  }
}

TEST_CASE("incremental span coordinates") {
  IncrementalSpan span(3);
  CHECK(span.insert({1, 1, 0}));
  CHECK(span.insert({0, 1, 1}));
  CHECK_FALSE(span.insert({1, 2, 1}));
  auto c = span.coordinates({2, 5, 3});
  REQUIRE(c);
  CHECK((*c)[0] == GaussianRational(2));
  CHECK((*c)[1] == GaussianRational(3));
  CHECK_FALSE(span.contains({1, 0, 0}));
}

TEST_CASE("roots over Q(i)") {
  ExactPolynomial x = ExactPolynomial::x();
  ExactPolynomial f = x * x + ExactPolynomial(1);
  auto r = gaussian_roots(f);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == -GaussianRational::i());
  CHECK(r[1] == GaussianRational::i());
  CHECK(gaussian_roots(x * x - ExactPolynomial(2)).empty());
  CHECK(rational_roots(x * x - ExactPolynomial(2)).empty());

  ExactPolynomial g = ExactPolynomial::linear(Q("3/2+5/7*i")) * ExactPolynomial::linear(Q("-1/3")) *
                      ExactPolynomial::linear(Q("-1/3")) * (x * x * x - ExactPolynomial(3)) * x;
  auto gr = gaussian_roots(g);
  CHECK(gr.size() == 3);
  CHECK(root_multiplicity(g, Q("-1/3")) == 2);
  CHECK(root_multiplicity(g, Q("0")) == 1);
  auto rr = rational_roots(g);
  REQUIRE(rr.size() == 2);
  CHECK(rr[0] == Rational(-1, 3));

  CHECK(factor_integer(Integer("1000000016000000063")).size() == 2);  // 1e9+7 times 1e9+9
  CHECK(gaussian_divisors({5, 0}).size() == 4);                        // 1, 2+i, 2-i, 5 up to units
}
