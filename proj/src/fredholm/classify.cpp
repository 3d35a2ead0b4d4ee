#include "bfred/fredholm/classify.hpp"

#include "bfred/error.hpp"
#include "bfred/exact/random.hpp"
#include "bfred/geninv/drazin.hpp"

namespace bfred::fredholm {

using exact::ExactMatrix;
using exact::GaussianRational;
using exact::SplitMix64;

namespace {

constexpr std::size_t kGridCap = std::size_t(1) << 16;
constexpr std::size_t kSymbolicDirections = 4;
constexpr long kSampleRange = 1L << 20;
constexpr unsigned kSamples = 32;

bool invertible_matrix(const Element& x) { return !exact::determinant(x.matrix()).is_zero(); }

Element combination(const Element& zero, const std::vector<Element>& dirs, const std::vector<GaussianRational>& t) {
  Element c = zero;
  for (std::size_t i = 0; i < dirs.size(); ++i)
    if (!t[i].is_zero()) c += dirs[i] * t[i];
  return c;
}

std::optional<Element> canonical_kernel_part(const Homomorphism& hom, const Element& a) {
  auto s = hom.preimage(hom(a));
  if (!s) return std::nullopt;
  return a - *s;
}

DegreeSet degree_search(const Homomorphism& hom, const Element& a, const std::vector<Element>& dirs,
                        unsigned trials, std::uint64_t seed, bool commuting) {
  const auto& alg = a.algebra();
  std::vector<Element> candidates{alg->zero()};
  for (const auto& d : dirs) candidates.push_back(d);
  if (auto k = canonical_kernel_part(hom, a); k && (!commuting || k->commutes_with(a))) candidates.push_back(*k);
  SplitMix64 rng(seed);
  for (unsigned t = 0; t < trials && !dirs.empty(); ++t) {
    std::vector<GaussianRational> coeffs(dirs.size());
    for (auto& x : coeffs) x = GaussianRational(rng.uniform(-2, 2));
    candidates.push_back(combination(alg->zero(), dirs, coeffs));
  }
  DegreeSet out;
  std::set<unsigned> seen;
  for (const auto& c : candidates) {
    Element b = a - c;
    unsigned k = geninv::drazin_inverse(b).index;
    if (seen.insert(k).second) out.found.push_back({k, {b, c}});
  }
  return out;
}

}  // namespace

std::set<unsigned> DegreeSet::degrees() const {
  std::set<unsigned> s;
  for (const auto& f : found) s.insert(f.degree);
  return s;
}

bool is_fredholm(const Homomorphism& hom, const Element& a) { return algebra::invert_in_algebra(hom(a)).has_value(); }

std::optional<Element> find_invertible_shift(const Element& a, const std::vector<Element>& directions,
                                             std::uint64_t seed) {
  const Element zero = a.algebra()->zero();
  if (invertible_matrix(a)) return zero;
  if (directions.empty()) return std::nullopt;
  const std::size_t m = directions.size();

  if (m > kSymbolicDirections) {
    SplitMix64 rng(seed);
    for (unsigned s = 0; s < kSamples; ++s) {
      std::vector<GaussianRational> t(m);
      for (auto& x : t) x = GaussianRational(rng.uniform(-kSampleRange, kSampleRange));
      Element c = combination(zero, directions, t);
      if (invertible_matrix(a - c)) return c;
    }
  }

  // det(a - sum t_i d_i) has degree <= rank d_i in t_i, so it vanishes
  // identically iff it vanishes on the grid prod {0..rank d_i}.
  std::vector<std::size_t> bound(m);
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    bound[i] = exact::rank(directions[i].matrix()) + 1;
    if (total > kGridCap / bound[i]) throw Unsupported("determinant grid exceeds 2^16 points");
    total *= bound[i];
  }
  std::vector<std::size_t> digit(m, 0);
  for (std::size_t step = 1; step < total; ++step) {
    for (std::size_t i = 0; i < m; ++i) {
      if (++digit[i] < bound[i]) break;
      digit[i] = 0;
    }
    std::vector<GaussianRational> t(m);
    for (std::size_t i = 0; i < m; ++i) t[i] = GaussianRational(static_cast<long>(digit[i]));
    Element c = combination(zero, directions, t);
    if (invertible_matrix(a - c)) return c;
  }
  return std::nullopt;
}

std::vector<Element> kernel_commutant_basis(const Homomorphism& hom, const Element& a) {
  auto ker = hom.kernel().elements();
  if (ker.empty()) return {};
  const std::size_t n = a.algebra()->ambient_dim();
  ExactMatrix comm(n * n, ker.size());
  for (std::size_t j = 0; j < ker.size(); ++j) {
    ExactMatrix d = a.matrix() * ker[j].matrix() - ker[j].matrix() * a.matrix();
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) comm(r * n + s, j) = d(r, s);
  }
  std::vector<Element> out;
  for (const auto& v : exact::kernel_basis(comm)) {
    Element c = a.algebra()->zero();
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!v[j].is_zero()) c += ker[j] * v[j];
    out.push_back(std::move(c));
  }
  return out;
}

Membership is_weyl(const Homomorphism& hom, const Element& a, std::uint64_t seed) {
  if (!is_fredholm(hom, a)) return {};
  auto c = find_invertible_shift(a, hom.kernel().elements(), seed);
  if (!c) return {};
  return {true, Decomposition{a - *c, *c}};
}

Membership is_browder(const Homomorphism& hom, const Element& a, std::uint64_t seed) {
  if (!is_fredholm(hom, a)) return {};
  auto c = find_invertible_shift(a, kernel_commutant_basis(hom, a), seed);
  if (!c) return {};
  return {true, Decomposition{a - *c, *c}};
}

BFredholmResult is_bfredholm(const Homomorphism& hom, const Element& a) {
  return {true, geninv::drazin_inverse(hom(a)).index};
}

DegreeSet bweyl_degrees(const Homomorphism& hom, const Element& a, unsigned trials, std::uint64_t seed) {
  return degree_search(hom, a, hom.kernel().elements(), trials, seed, false);
}

DegreeSet bbrowder_degrees(const Homomorphism& hom, const Element& a, unsigned trials, std::uint64_t seed) {
  return degree_search(hom, a, kernel_commutant_basis(hom, a), trials, seed, true);
}

bool is_riesz(const Homomorphism& hom, const Element& a) { return geninv::is_quasinilpotent(hom(a)); }

bool is_t_nilpotent(const Homomorphism& hom, const Element& a) {
  Element t = hom(a);
  ExactMatrix p = t.matrix();
  for (std::size_t k = 1; k < hom.target()->ambient_dim() && !p.is_zero(); ++k) p = p * t.matrix();
  return p.is_zero();
}

void verify_decomposition(const Homomorphism& hom, const Element& a, const Decomposition& d, bool commuting,
                          std::optional<unsigned> index) {
  if (d.b + d.c != a) throw DefectError("witness does not sum to a");
  if (!hom.in_kernel(d.c)) throw DefectError("witness part c is not in the kernel");
  if (commuting && !d.b.commutes_with(d.c)) throw DefectError("witness parts do not commute");
  if (index) {
    if (geninv::drazin_inverse(d.b).index != *index) throw DefectError("witness index mismatch");
  } else if (!algebra::invert_in_algebra(d.b)) {
    throw DefectError("witness part b is not invertible");
  }
}

ClassificationReport classify(const Homomorphism& hom, const Element& a, unsigned trials, std::uint64_t seed) {
  ClassificationReport r;
  r.fredholm = is_fredholm(hom, a);
  r.weyl = is_weyl(hom, a, seed);
  r.browder = is_browder(hom, a, seed ^ 0x5bd1e995ULL);
  auto bf = is_bfredholm(hom, a);
  r.bfredholm = bf.member;
  r.bfredholm_degree = bf.degree;
  r.bweyl = bweyl_degrees(hom, a, trials, seed);
  r.bbrowder = bbrowder_degrees(hom, a, trials, seed ^ 0x2545f491ULL);
  geninv::koliha_drazin_inverse(hom(a));
  r.gbf = true;
  // b = a, c = 0 with a in A^KD
  geninv::koliha_drazin_inverse(a);
  r.gbw = r.gbb = true;
  r.riesz = is_riesz(hom, a);
  r.t_nilpotent = is_t_nilpotent(hom, a);

  if (r.weyl.witness) verify_decomposition(hom, a, *r.weyl.witness, false);
  if (r.browder.witness) verify_decomposition(hom, a, *r.browder.witness, true);
  for (const auto& f : r.bweyl.found) verify_decomposition(hom, a, f.witness, false, f.degree);
  for (const auto& f : r.bbrowder.found) verify_decomposition(hom, a, f.witness, true, f.degree);

  if (r.browder.member && !r.weyl.member) throw DefectError("Browder but not Weyl");
  if (r.weyl.member && !r.fredholm) throw DefectError("Weyl but not Fredholm");
  if (r.fredholm && !r.bfredholm) throw DefectError("Fredholm but not B-Fredholm");
  if (r.bfredholm && !r.gbf) throw DefectError("B-Fredholm but not generalized B-Fredholm");
  if (!r.bweyl.empty() && !r.bfredholm) throw DefectError("B-Weyl but not B-Fredholm");
  if (!r.bbrowder.empty() && r.bweyl.empty()) throw DefectError("B-Browder but not B-Weyl");
  if (r.riesz != r.t_nilpotent) throw DefectError("Riesz and T-nilpotent differ in finite dimension");
  if (r.fredholm && r.bfredholm_degree != 0) throw DefectError("Fredholm element with nonzero degree");
  if (hom.kernel().is_nilpotent() && (r.fredholm != r.weyl.member || r.weyl.member != r.browder.member))
    throw DefectError("Fredholm, Weyl and Browder differ over a nilpotent kernel");
  return r;
}

bool certify_gbf(const Homomorphism& hom, const Element& a, const Element& p, bool nilpotent_corner) {
  if (!p.is_idempotent()) return false;
  const Element one = a.algebra()->one();
  const Element corner = p * a * p;
  bool conditions = is_fredholm(hom, a + p) && hom.in_kernel(p * a * (one - p)) &&
                    hom.in_kernel((one - p) * a * p) &&
                    (nilpotent_corner ? is_t_nilpotent(hom, corner) : is_riesz(hom, corner));
  if (!conditions) return false;
  const Element ta = hom(a), q = hom(p);
  if (!ta.commutes_with(q)) throw DefectError("T(a) does not commute with T(p)");
  if (!algebra::invert_in_algebra(ta + q)) throw DefectError("T(a) + T(p) is not invertible");
  if (!geninv::is_quasinilpotent(ta * q)) throw DefectError("T(a) T(p) is not quasinilpotent");
  return true;
}

GbfCharacterization gbf_characterization_check(const Homomorphism& hom, const Element& a) {
  if (!hom.is_surjective() || !hom.has_lifting_oracle())
    throw NoLiftingOracle("idempotent lifting needs a surjective homomorphism with nilpotent kernel");
  const Element q = geninv::drazin_inverse(hom(a)).spectral_idempotent;
  const Element p = algebra::lift_idempotent(hom, q).p;
  const Element one = a.algebra()->one();
  const Element corner = p * a * p;
  GbfCharacterization g{p};
  g.plus_p_fredholm = is_fredholm(hom, a + p);
  g.left_in_kernel = hom.in_kernel(p * a * (one - p));
  g.right_in_kernel = hom.in_kernel((one - p) * a * p);
  g.corner_riesz = is_riesz(hom, corner);
  g.corner_nilpotent = is_t_nilpotent(hom, corner);
  const bool base = g.plus_p_fredholm && g.left_in_kernel && g.right_in_kernel;
  geninv::koliha_drazin_inverse(hom(a));
  g.forward = base && g.corner_riesz;
  g.bf_forward = is_bfredholm(hom, a).member && base && g.corner_nilpotent;
  g.converse = certify_gbf(hom, a, p, false);
  g.bf_converse = certify_gbf(hom, a, p, true);
  return g;
}

}  // namespace bfred::fredholm
