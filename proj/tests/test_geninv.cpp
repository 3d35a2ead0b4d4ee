#include <random>

#include "bfred/algebra/families.hpp"
#include "bfred/geninv/drazin.hpp"
#include "doctest.h"

using namespace bfred::algebra;
using namespace bfred::geninv;
using bfred::exact::GaussianRational;

namespace {

Element in_full(const ExactMatrix& m) { return full_matrix(m.rows())->element(m); }

// Index oracle independent of polynomials: least k with rank a^k = rank a^(k+1).
unsigned rank_stabilization_index(const ExactMatrix& a) {
  ExactMatrix p = ExactMatrix::identity(a.rows());
  for (unsigned k = 0;; ++k) {
    ExactMatrix next = p * a;
    if (bfred::exact::rank(p) == bfred::exact::rank(next)) return k;
    p = next;
  }
}

}  // namespace

TEST_CASE("drazin_inverse examples") {
  auto one = in_full(ExactMatrix::identity(3));
  auto d1 = drazin_inverse(one);
  CHECK(d1.inverse.is_one());
  CHECK(d1.index == 0);
  CHECK(d1.spectral_idempotent.is_zero());

  auto j2 = in_full(ExactMatrix{{0, 1}, {0, 0}});
  auto d2 = drazin_inverse(j2);
  CHECK(d2.inverse.is_zero());
  CHECK(d2.index == 2);
  CHECK(d2.spectral_idempotent.is_one());

  auto a = in_full(ExactMatrix{{0, 1, 0}, {0, 0, 0}, {0, 0, 2}});
  auto d3 = drazin_inverse(a);
  CHECK(d3.inverse.matrix() == ExactMatrix({{0, 0, 0}, {0, 0, 0}, {0, 0, GaussianRational::parse("1/2")}}));
  CHECK(d3.index == 2);
  CHECK(d3.spectral_idempotent.matrix() == ExactMatrix::diagonal(std::vector<GaussianRational>{1, 1, 0}));

  CHECK(drazin_inverse(in_full(ExactMatrix::zero(2, 2))).index == 1);
}

TEST_CASE("group_inverse examples") {
  auto e = in_full(ExactMatrix{{1, 1}, {0, 0}});
  REQUIRE(group_inverse(e));
  CHECK(group_inverse(e)->inverse == e);
  CHECK_FALSE(group_inverse(in_full(ExactMatrix{{0, 1}, {0, 0}})));
  auto g = group_inverse(in_full(ExactMatrix{{3, 0}, {0, 0}}));
  REQUIRE(g);
  CHECK(g->inverse.matrix() == ExactMatrix({{GaussianRational::parse("1/3"), 0}, {0, 0}}));
}

TEST_CASE("koliha_drazin_inverse examples") {
  CHECK(koliha_drazin_inverse(in_full(ExactMatrix{{2, 1}, {0, 3}})).w.is_zero());
  auto j2 = in_full(ExactMatrix{{0, 1}, {0, 0}});
  auto kd = koliha_drazin_inverse(j2);
  CHECK(kd.w == -j2);
  CHECK(is_quasinilpotent(kd.w));
  CHECK(koliha_drazin_inverse(in_full(ExactMatrix{{2, 0}, {0, 0}})).w.is_zero());
}

TEST_CASE("is_quasinilpotent examples") {
  CHECK(is_quasinilpotent(in_full(ExactMatrix::unit(2, 0, 1))));
  CHECK_FALSE(is_quasinilpotent(in_full(ExactMatrix::identity(2))));
  CHECK(is_quasinilpotent(in_full(ExactMatrix{{1, -1}, {1, -1}})));
}

TEST_CASE("random elements: axioms, index oracle, polynomial form, uniqueness") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> val(-2, 2), coin(0, 2);
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t n = 1 + trial % 5;
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (j > i || coin(rng) == 0) m(i, j) = val(rng);
    auto alg = build_algebra(n, {m});
    Element a = alg->element(m);
    DrazinData d = drazin_inverse(a);
    CHECK(satisfies_drazin_axioms(a, d.inverse, d.index));
    CHECK(d.index == rank_stabilization_index(m));
    CHECK((d.index == 0) == invert_in_algebra(a).has_value());
    CHECK((d.index == 0) == d.spectral_idempotent.is_zero());
    // double inverse law
    DrazinData dd = drazin_inverse(d.inverse);
    CHECK(dd.inverse == a * a * d.inverse);
    // uniqueness: a^D is the only solution; perturbing along the kernel of
    // the axioms breaks them
    Element perturbed = d.inverse + d.spectral_idempotent;
    if (!d.spectral_idempotent.is_zero()) CHECK_FALSE(satisfies_drazin_axioms(a, perturbed, d.index + 1));
  }
}
