#include <random>

#include "bfred/algebra/families.hpp"
#include "bfred/error.hpp"
#include "bfred/fredholm/spectra.hpp"
#include "bfred/geninv/drazin.hpp"
#include "doctest.h"

using namespace bfred::algebra;
using namespace bfred::fredholm;
using bfred::exact::ExactPolynomial;
using bfred::exact::GaussianRational;

namespace {

ExactMatrix E(std::size_t n, std::size_t i, std::size_t j) { return ExactMatrix::unit(n, i, j); }
ExactMatrix diag(std::vector<GaussianRational> d) { return ExactMatrix::diagonal(d); }

// M2 + M2 -> M2, first block. Kernel 0 + M2 is not nilpotent.
Homomorphism first_block() {
  return Homomorphism::from_function(block_diagonal({2, 2}), full_matrix(2), [](const ExactMatrix& m) {
    return ExactMatrix{{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}};
  });
}

ExactMatrix pair(const ExactMatrix& x, const ExactMatrix& y) {
  ExactMatrix m(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      m(i, j) = x(i, j);
      m(i + 2, j + 2) = y(i, j);
    }
  return m;
}

ExactMatrix random_upper(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> v(-2, 2);
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = v(rng);
  return m;
}

}  // namespace

TEST_CASE("is_fredholm examples") {
  Homomorphism t = diagonal_part(2);
  auto u2 = t.source();
  CHECK_FALSE(is_fredholm(t, u2->element(E(2, 0, 1))));
  CHECK(is_fredholm(t, u2->one()));
  CHECK_FALSE(is_fredholm(t, u2->element(ExactMatrix{{0, 1}, {0, 1}})));
}

TEST_CASE("is_weyl and is_browder examples") {
  Homomorphism t = diagonal_part(2);
  auto u2 = t.source();
  Element e12 = u2->element(E(2, 0, 1));
  CHECK_FALSE(is_weyl(t, e12).member);
  CHECK_FALSE(is_browder(t, e12).member);
  CHECK_FALSE(find_invertible_shift(e12, t.kernel().elements()));
  CHECK(kernel_commutant_basis(t, e12).size() == 1);

  Element inv = u2->element(ExactMatrix{{1, 1}, {0, 1}});
  auto w = is_weyl(t, inv);
  REQUIRE(w.member);
  CHECK(w.witness->b == inv);
  CHECK(w.witness->c.is_zero());
  CHECK(is_browder(t, inv).member);
  CHECK(is_weyl(t, u2->one()).member);
}

TEST_CASE("find_invertible_shift: grid and sampling paths") {
  auto m3 = full_matrix(3);
  std::vector<Element> dirs;
  for (auto [i, j] : std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 0}})
    dirs.push_back(m3->element(E(3, i, j)));
  auto c = find_invertible_shift(m3->zero(), dirs, 7);
  REQUIRE(c);
  CHECK_FALSE(bfred::exact::determinant((m3->zero() - *c).matrix()).is_zero());

  // third row stays zero whatever the coefficients
  std::vector<Element> flat;
  for (auto [i, j] : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}, {0, 0}, {1, 1}})
    flat.push_back(m3->element(E(3, i, j)));
  CHECK_FALSE(find_invertible_shift(m3->element(E(3, 0, 2)), flat, 7));
}

TEST_CASE("non-nilpotent kernel: weyl and browder by search") {
  Homomorphism h = first_block();
  CHECK_FALSE(h.has_lifting_oracle());
  auto src = h.source();
  ExactMatrix zero2(2, 2);
  Element a = src->element(pair(ExactMatrix::identity(2), zero2));
  CHECK(is_fredholm(h, a));
  auto w = is_weyl(h, a);
  REQUIRE(w.member);
  verify_decomposition(h, a, *w.witness, false);
  auto b = is_browder(h, a);
  REQUIRE(b.member);
  verify_decomposition(h, a, *b.witness, true);
  CHECK_THROWS_AS(gbf_characterization_check(h, a), bfred::NoLiftingOracle);

  Element bad = src->element(pair(E(2, 0, 1), ExactMatrix::identity(2)));
  CHECK_FALSE(is_weyl(h, bad).member);
}

TEST_CASE("is_bfredholm examples") {
  Homomorphism t = diagonal_part(2);
  auto u2 = t.source();
  CHECK(is_bfredholm(t, u2->element(E(2, 0, 1))).degree == 1);
  CHECK(is_bfredholm(t, u2->one()).degree == 0);
  auto r = is_bfredholm(t, u2->element(ExactMatrix{{0, 1}, {0, 1}}));
  CHECK(r.member);
  CHECK(r.degree == 1);
}

TEST_CASE("degree sets examples") {
  Homomorphism t = diagonal_part(2);
  auto u2 = t.source();
  Element e12 = u2->element(E(2, 0, 1));
  CHECK(bweyl_degrees(t, e12, 4).contains(1));
  CHECK(bweyl_degrees(t, u2->one(), 4).contains(0));
  CHECK(bweyl_degrees(t, u2->element(E(2, 0, 0)), 4).contains(1));
  auto bb = bbrowder_degrees(t, e12, 4);
  REQUIRE(bb.contains(1));
  for (const auto& f : bb.found) {
    CHECK(f.witness.b.commutes_with(f.witness.c));
    if (f.degree == 1) {
      CHECK(f.witness.b.is_zero());
      CHECK(f.witness.c == e12);
    }
  }
  CHECK(bbrowder_degrees(t, u2->one(), 4).contains(0));
  CHECK(bbrowder_degrees(t, u2->element(E(2, 0, 0)), 4).contains(1));
  CHECK(bweyl_degrees(t, e12, 4).witnesses_only);
}

TEST_CASE("is_riesz and is_t_nilpotent examples") {
  Homomorphism t3 = diagonal_part(3);
  Element strict = t3.source()->element(E(3, 0, 1) + E(3, 1, 2));
  CHECK(is_riesz(t3, strict));
  CHECK(is_t_nilpotent(t3, strict));
  CHECK_FALSE(is_riesz(t3, t3.source()->one()));
  CHECK_FALSE(is_t_nilpotent(t3, t3.source()->one()));
}

TEST_CASE("gbf_characterization_check examples") {
  Homomorphism t = diagonal_part(2);
  auto u2 = t.source();
  auto g0 = gbf_characterization_check(t, u2->element(ExactMatrix{{1, 1}, {0, 3}}));
  CHECK(g0.p.is_zero());
  CHECK(g0.forward);
  CHECK(g0.agree());

  auto g1 = gbf_characterization_check(t, u2->element(diag({2, 0})));
  CHECK(g1.p.matrix() == E(2, 1, 1));
  CHECK(g1.plus_p_fredholm);
  CHECK(g1.corner_nilpotent);
  CHECK(g1.forward);
  CHECK(g1.bf_forward);
  CHECK(g1.agree());

  Element e12 = u2->element(E(2, 0, 1));
  auto g2 = gbf_characterization_check(t, e12);
  CHECK(g2.p.is_one());
  CHECK(g2.plus_p_fredholm);
  CHECK(g2.p * e12 * g2.p == e12);
  CHECK(g2.corner_nilpotent);
  CHECK(g2.agree());
  // a wrong idempotent fails the conditions
  CHECK_FALSE(certify_gbf(t, u2->element(diag({2, 0})), u2->element(E(2, 0, 0)), false));
}

TEST_CASE("spectrum examples") {
  auto m2 = full_matrix(2);
  auto s = spectrum(m2->element(diag({1, 2})));
  CHECK(s.explicit_points() == std::vector<GaussianRational>{1, 2});
  auto j = spectrum(m2->element(E(2, 0, 1)));
  REQUIRE(j.factors().size() == 1);
  CHECK(j.factors()[0].multiplicity == 2);
  CHECK(j.factors()[0].polynomial == ExactPolynomial::x());
  auto rot = spectrum(m2->element(ExactMatrix{{0, -1}, {1, 0}}));
  CHECK(rot.explicit_points().size() == 2);
  CHECK(rot.contains(GaussianRational::i()));
  CHECK(rot.contains(-GaussianRational::i()));
  auto irr = spectrum(m2->element(ExactMatrix{{0, 2}, {1, 0}}));
  REQUIRE(irr.symbolic_factors().size() == 1);
  CHECK(irr.symbolic_factors()[0].certified_irreducible);
  CHECK(irr.radical() == ExactPolynomial({-2, 0, 1}));
}

TEST_CASE("weyl and browder spectra") {
  Homomorphism t = diagonal_part(2);
  auto u2 = t.source();
  auto sw = weyl_spectrum(t, u2->element(E(2, 0, 1)));
  CHECK(sw.explicit_points() == std::vector<GaussianRational>{0});
  auto mixed = u2->element(E(2, 0, 0) + E(2, 0, 1));
  CHECK(same_points(weyl_spectrum(t, mixed), fredholm_spectrum(t, mixed)));
  CHECK(same_points(browder_spectrum(t, mixed), spectrum(mixed)));

  Homomorphism id(full_matrix(2), full_matrix(2), ExactMatrix::identity(4));
  Element r = id.source()->element(ExactMatrix{{0, 2}, {1, 0}});
  CHECK(same_points(weyl_spectrum(id, r), spectrum(r)));

  // symbolic points of the kernel block are removed by the grid
  Homomorphism h = first_block();
  Element a = h.source()->element(pair(ExactMatrix::identity(2), ExactMatrix{{0, 2}, {1, 0}}));
  auto w = weyl_spectrum(h, a);
  CHECK(w.explicit_points() == std::vector<GaussianRational>{1});
  CHECK(w.symbolic_factors().empty());
  CHECK(same_points(browder_spectrum(h, a), w));
  Element both = h.source()->element(pair(ExactMatrix{{0, 2}, {1, 0}}, ExactMatrix{{0, 2}, {1, 0}}));
  CHECK(same_points(weyl_spectrum(h, both), spectrum(both)));
}

TEST_CASE("b_spectra are empty") {
  Homomorphism t = diagonal_part(3);
  auto b = b_spectra(t, t.source()->element(E(3, 0, 1) + E(3, 2, 2)));
  CHECK(b.bf.empty());
  CHECK(b.bw.empty());
  CHECK(b.gbb.empty());
  CHECK(b_spectra(t, t.source()->zero()).bf.empty());
}

TEST_CASE("classification invariants on random elements") {
  std::mt19937_64 rng(5);
  Homomorphism t = diagonal_part(3);
  auto u3 = t.source();
  for (int trial = 0; trial < 40; ++trial) {
    Element a = u3->element(random_upper(3, rng));
    auto r = classify(t, a, 4, trial);
    CHECK(r.fredholm == r.weyl.member);
    CHECK(r.weyl.member == r.browder.member);
    CHECK(r.bweyl.contains(bfred::geninv::drazin_inverse(a).index));
    // sigma(T(ab)) \ {0} = sigma(T(ba)) \ {0}
    Element b = u3->element(random_upper(3, rng));
    CHECK(same_points(fredholm_spectrum(t, a * b), fredholm_spectrum(t, b * a), true));
    // Weyl and Browder spectra collapse to the Fredholm spectrum
    CHECK(same_points(weyl_spectrum(t, a), fredholm_spectrum(t, a)));
    CHECK(same_points(browder_spectrum(t, a), fredholm_spectrum(t, a)));
  }
  for (const auto& k : t.kernel().elements()) {
    auto r = classify(t, k);
    CHECK(r.bfredholm);
    CHECK_FALSE(r.fredholm);
    CHECK(r.riesz);
  }
  // idempotents off T^{-1}(1)
  for (auto d : std::vector<std::vector<GaussianRational>>{{1, 0, 0}, {0, 1, 1}, {0, 0, 0}}) {
    ExactMatrix m = diag(d) + (d[0] == 1 ? E(3, 0, 1) : ExactMatrix(3, 3));
    Element p = u3->element(m);
    REQUIRE(p.is_idempotent());
    auto r = classify(t, p);
    CHECK(r.bfredholm);
    CHECK_FALSE(r.fredholm);
  }
}

TEST_CASE("characterization agrees on random closed algebras") {
  std::mt19937_64 rng(9);
  IntSource next = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  for (int trial = 0; trial < 10; ++trial) {
    Homomorphism h = random_closed({2, 1, 1}, 2, next);
    for (const auto& x : {h.source()->basis_element(trial % h.source()->dim()), h.source()->one()}) {
      auto g = gbf_characterization_check(h, x);
      CHECK(g.forward);
      CHECK(g.agree());
      CHECK(g.p.is_idempotent());
    }
  }
}
