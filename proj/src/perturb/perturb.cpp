#include "bfred/perturb/perturb.hpp"

#include "bfred/error.hpp"
#include "bfred/exact/linalg.hpp"
#include "bfred/exact/random.hpp"
#include "bfred/fredholm/classify.hpp"
#include "bfred/fredholm/spectra.hpp"
#include "bfred/geninv/drazin.hpp"

namespace bfred::perturb {

using exact::ExactMatrix;
using exact::GaussianRational;
using exact::SplitMix64;

namespace {

bool invertible(const Element& x) { return algebra::invert_in_algebra(x).has_value(); }

Element compress(const Element& x, const Element& p) {
  const Element r = x.algebra()->one() - p;
  return r * x * r;
}

Element preimage_of(const Homomorphism& hom, const Element& b) {
  auto x = hom.preimage(b);
  if (!x) throw VerificationError("element has no preimage");
  return *x;
}

/// Preimage of y in (1-p)A(1-p) when compression keeps the image, else any.
Element corner_preimage(const Homomorphism& hom, const Element& y, const Element& p) {
  Element x = preimage_of(hom, y);
  Element w = compress(x, p);
  return hom(w) == y ? w : x;
}

void require_lifting(const Homomorphism& hom) {
  if (!hom.is_surjective() || !hom.has_lifting_oracle())
    throw NoLiftingOracle("spectral idempotent pairs need a surjective homomorphism with nilpotent kernel");
}

}  // namespace

const char* to_string(PerturbClass c) {
  switch (c) {
    case PerturbClass::Drazin: return "Drazin";
    case PerturbClass::KolihaDrazin: return "KolihaDrazin";
    case PerturbClass::DrazinMinusInvertible: return "DrazinMinusInvertible";
    case PerturbClass::KDMinusInvertible: return "KDMinusInvertible";
    case PerturbClass::BFredholm: return "BFredholm";
    case PerturbClass::GBFredholm: return "GBFredholm";
    case PerturbClass::BFMinusFredholm: return "BFMinusFredholm";
    case PerturbClass::GBFMinusFredholm: return "GBFMinusFredholm";
  }
  return "?";
}

bool needs_homomorphism(PerturbClass c) {
  return c == PerturbClass::BFredholm || c == PerturbClass::GBFredholm || c == PerturbClass::BFMinusFredholm ||
         c == PerturbClass::GBFMinusFredholm;
}

bool in_class(const Element& x, PerturbClass c, const Homomorphism* hom) {
  if (needs_homomorphism(c) && !hom) throw ShapeError(std::string(to_string(c)) + " needs a homomorphism");
  switch (c) {
    case PerturbClass::Drazin:
      geninv::drazin_inverse(x);
      return true;
    case PerturbClass::KolihaDrazin:
      geninv::koliha_drazin_inverse(x);
      return true;
    case PerturbClass::DrazinMinusInvertible:
    case PerturbClass::KDMinusInvertible:
      return !invertible(x);
    case PerturbClass::BFredholm:
      return fredholm::is_bfredholm(*hom, x).member;
    case PerturbClass::GBFredholm:
      geninv::koliha_drazin_inverse((*hom)(x));
      return true;
    case PerturbClass::BFMinusFredholm:
    case PerturbClass::GBFMinusFredholm:
      return !fredholm::is_fredholm(*hom, x);
  }
  return false;
}

std::vector<Element> commutant_basis(const Element& c) {
  const auto& alg = c.algebra();
  const std::size_t n = alg->ambient_dim();
  ExactMatrix m(n * n, alg->dim());
  for (std::size_t j = 0; j < alg->dim(); ++j) {
    const Element b = alg->basis_element(j);
    const ExactMatrix d = b.matrix() * c.matrix() - c.matrix() * b.matrix();
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) m(r * n + s, j) = d(r, s);
  }
  std::vector<Element> out;
  for (auto& v : exact::kernel_basis(m)) out.push_back(alg->from_coords(std::move(v)));
  return out;
}

std::vector<Element> commuting_partners(const Element& c, unsigned count, std::uint64_t seed) {
  const auto& alg = c.algebra();
  const std::vector<Element> basis = commutant_basis(c);
  std::vector<Element> out{alg->zero(), alg->one(), c, c * c};
  for (const auto& b : basis) out.push_back(b);
  SplitMix64 rng(seed);
  while (out.size() < count + 4 + basis.size()) {
    Element x = alg->zero();
    if (rng.coin(3)) {
      x = alg->one() * GaussianRational(rng.uniform(-2, 2)) + c * GaussianRational(rng.uniform(-2, 2)) +
          c * c * GaussianRational(rng.uniform(-1, 1));
    } else {
      for (const auto& b : basis)
        if (!rng.coin(3)) x += b * GaussianRational(rng.uniform(-2, 2));
    }
    out.push_back(x);
    const auto pts = fredholm::spectrum(x).explicit_points();
    if (!pts.empty()) out.push_back(x.shifted(-pts[rng.uniform(0, static_cast<long>(pts.size()) - 1)]));
  }
  return out;
}

PcommProbe pcomm_probe(const Element& candidate, PerturbClass cls, unsigned trials, std::uint64_t seed,
                       const Homomorphism* hom) {
  PcommProbe r{candidate, cls, trials, 0, std::nullopt};
  for (const auto& s : commuting_partners(candidate, trials, seed)) {
    if (!s.commutes_with(candidate)) throw DefectError("sampled partner does not commute");
    if (!in_class(s, cls, hom)) continue;
    ++r.partners_in_class;
    Element sum = s + candidate;
    if (!in_class(sum, cls, hom)) {
      r.counterexample = Counterexample{s, sum};
      // re-verify from scratch
      if (!in_class(r.counterexample->partner, cls, hom) || in_class(r.counterexample->sum, cls, hom) ||
          !r.counterexample->partner.commutes_with(candidate))
        throw DefectError("counterexample does not verify");
      break;
    }
  }
  return r;
}

PerturbationVerdict nilpotent_perturbation(const Homomorphism& hom, const Element& a, const Element& b) {
  PerturbationVerdict v;
  if (!fredholm::is_bfredholm(hom, a).member) v.precondition_failure = "a is not B-Fredholm";
  else if (!fredholm::is_t_nilpotent(hom, b)) v.precondition_failure = "b is not T-nilpotent";
  else if (!hom.in_kernel(a * b - b * a)) v.precondition_failure = "ab - ba is not in the kernel";
  if (v.precondition_failure) return v;
  const Element s = a + b;
  v.sum_bfredholm = fredholm::is_bfredholm(hom, s).member;
  // both B-Fredholm spectra are empty; b_spectra certifies this
  const auto x = fredholm::b_spectra(hom, a), y = fredholm::b_spectra(hom, s);
  v.spectra_equal = x.bf.factors().empty() && y.bf.factors().empty();
  return v;
}

PerturbationVerdict nilpotent_perturbation(const spectral::DiagonalElement& a, const spectral::DiagonalElement& b) {
  using namespace spectral;
  PerturbationVerdict v;
  const DiagonalReport rb = diag_classify(b);
  if (subset(rb.sigma_F, SpectralSet::points({GaussianRational()})) != Tri::True) {
    v.precondition_failure = "b is not T-nilpotent";
    return v;
  }
  const DiagonalReport ra = diag_classify(a);
  const DiagonalReport rs = diag_classify(diag_arith(a, b, DiagOp::Add));
  v.sum_bfredholm = rs.bfredholm_at_0 == ra.bfredholm_at_0;
  v.spectra_equal = equals(rs.sigma_BF, ra.sigma_BF) == Tri::True;
  return v;
}

bool drazin_spectrum_preserved(const Element& a, const Element& d) {
  const Element s = a + d;
  auto pts = fredholm::spectrum(a).explicit_points();
  for (const auto& l : fredholm::spectrum(s).explicit_points()) pts.push_back(l);
  for (const auto& l : pts) {
    geninv::drazin_inverse(a.shifted(-l));
    geninv::drazin_inverse(s.shifted(-l));
  }
  return true;
}

RieszEquivalence riesz_equivalence(const Homomorphism& hom, const Element& d, unsigned trials, std::uint64_t seed) {
  if (!fredholm::is_riesz(hom, d)) throw VerificationError("element is not Riesz");
  RieszEquivalence r;
  // T(d) is annihilated by its minimal polynomial
  r.algebraic = !exact::minimal_polynomial(hom(d).matrix()).is_zero();
  r.bf_spectrum_empty = fredholm::b_spectra(hom, d).bf.factors().empty();
  r.preserved_mod_kernel = r.preserved_commuting = r.fredholm_spectrum_preserved = true;
  SplitMix64 rng(seed);
  const auto ker = hom.kernel().elements();
  for (const auto& a : commuting_partners(d, trials, seed)) {
    // exact commuting partner, then a kernel-perturbed one commuting modulo the kernel
    Element noisy = a;
    for (const auto& k : ker)
      if (rng.coin(2)) noisy += k * GaussianRational(rng.uniform(-2, 2));
    for (const Element* x : {&a, static_cast<const Element*>(&noisy)}) {
      if (!hom.in_kernel(*x * d - d * *x)) throw DefectError("partner does not commute modulo the kernel");
      ++r.partners;
      const bool commuting = x->commutes_with(d);
      const auto before = fredholm::b_spectra(hom, *x), after = fredholm::b_spectra(hom, *x + d);
      const bool same = before.bf.factors().empty() && after.bf.factors().empty();
      if (!same) r.preserved_mod_kernel = false;
      if (commuting && !same) r.preserved_commuting = false;
      if (!fredholm::same_points(fredholm::fredholm_spectrum(hom, *x), fredholm::fredholm_spectrum(hom, *x + d), false))
        r.fredholm_spectrum_preserved = false;
    }
  }
  return r;
}

RieszEquivalence riesz_equivalence(const spectral::DiagonalElement& d,
                                   const std::vector<spectral::DiagonalElement>& partners) {
  using namespace spectral;
  const DiagonalReport rd = diag_classify(d);
  if (!rd.riesz) throw VerificationError("element is not Riesz");
  RieszEquivalence r;
  r.algebraic = rd.t_algebraic;
  r.bf_spectrum_empty = rd.sigma_BF.empty();
  r.preserved_mod_kernel = r.preserved_commuting = r.fredholm_spectrum_preserved = true;
  for (const auto& a : partners) {
    // diagonal elements commute
    ++r.partners;
    const DiagonalReport ra = diag_classify(a), rs = diag_classify(diag_arith(a, d, DiagOp::Add));
    const bool same = equals(ra.sigma_BF, rs.sigma_BF) == Tri::True;
    if (!same) r.preserved_mod_kernel = r.preserved_commuting = false;
    if (equals(ra.sigma_F, rs.sigma_F) != Tri::True) r.fredholm_spectrum_preserved = false;
  }
  return r;
}

bool in_corner(const Element& x, const Element& p) { return compress(x, p) == x; }

SpectralIdempotentPair build_pair(const Homomorphism& hom, const Element& a1, const Element& a2) {
  require_lifting(hom);
  const auto d1 = geninv::drazin_inverse(hom(a1)), d2 = geninv::drazin_inverse(hom(a2));
  const Element q = d1.spectral_idempotent;
  const Element p = algebra::lift_idempotent(hom, q).p;
  const Element one = a1.algebra()->one();
  const Element w1 = compress(preimage_of(hom, d1.inverse), p);
  if (hom(w1) != d1.inverse) throw DefectError("compressed preimage of T(a1)^D changed its image");
  const Element w2 = corner_preimage(hom, d2.inverse, p);
  SpectralIdempotentPair pair{a1, a2, p, q, d2.spectral_idempotent, w1, w2,
                              (one - p) * a1 * w1 - (one - p), w1 * a1 * (one - p) - (one - p)};
  for (const Element* c : {&pair.c1, &pair.c2})
    if (!hom.in_kernel(*c) || !in_corner(*c, p)) throw DefectError("corner identity for w1 fails");
  return pair;
}

CornerCheck corner_check(const Homomorphism& hom, const SpectralIdempotentPair& pr) {
  const Element one = pr.a1.algebra()->one();
  const Element t1d = hom(pr.w1);
  CornerCheck r{hom.target()->one() + t1d * hom(pr.a2 - pr.a1)};
  r.z_invertible = invertible(r.z);
  r.cond_i = fredholm::is_fredholm(hom, pr.p + pr.w1 * pr.a2);
  r.hypothesis_ii = hom(pr.a2).commutes_with(pr.q);
  r.cond_ii = fredholm::is_fredholm(hom, pr.p + pr.w1 * pr.a2 * (one - pr.p));
  return r;
}

IdempotentEquivalence idempotent_equivalence(const Homomorphism& hom, const SpectralIdempotentPair& pr) {
  const Element one = pr.a1.algebra()->one();
  const Element& p = pr.p;
  const Element& a2 = pr.a2;
  geninv::koliha_drazin_inverse(hom(a2));
  const bool a2_gbf = true;
  const bool a2_bf = fredholm::is_bfredholm(hom, a2).member;
  const bool off = hom.in_kernel(p * a2 * (one - p)) && hom.in_kernel((one - p) * a2 * p);
  const Element corner = p * a2 * p;
  const bool riesz = fredholm::is_riesz(hom, corner), nil = fredholm::is_t_nilpotent(hom, corner);
  const bool f_plus = fredholm::is_fredholm(hom, p + a2);
  const bool f_w = fredholm::is_fredholm(hom, p + pr.w1 * a2 * (one - p));
  const Element m = p + pr.w1 * a2;
  const bool f_m = fredholm::is_fredholm(hom, m);
  IdempotentEquivalence r{.c = pr.w1 - m * pr.w2};
  const bool c_in = hom.in_kernel(r.c);
  r.i = a2_gbf && pr.same_idempotent();
  r.ii = off && riesz && f_plus;
  r.iii = off && riesz && f_w;
  r.iv = a2_gbf && f_m && c_in;
  r.bf_i = a2_bf && pr.same_idempotent();
  r.bf_ii = off && nil && f_plus;
  r.bf_iii = off && nil && f_w;
  r.bf_iv = a2_bf && f_m && c_in;
  return r;
}

InverseIdentity inverse_identity(const Homomorphism& hom, const SpectralIdempotentPair& pr) {
  const Element one = pr.a1.algebra()->one();
  InverseIdentity r{pr.same_idempotent(), pr.w2 - pr.w2 * pr.a1 * (one - pr.p) * pr.w1, pr.w1 - pr.w1 * pr.a2 * pr.w2};
  if (!r.applicable) return r;
  r.holds = in_corner(pr.w2, pr.p) && hom.in_kernel(r.d) && in_corner(r.d, pr.p) && hom.in_kernel(r.c) &&
            in_corner(r.c, pr.p);
  return r;
}

ProductIdentity product_identity(const Homomorphism& hom, const Element& a1, const Element& a2) {
  ProductIdentity r;
  require_lifting(hom);
  const auto d1 = geninv::drazin_inverse(hom(a1)), d2 = geninv::drazin_inverse(hom(a2));
  if (d1.spectral_idempotent != d2.spectral_idempotent) {
    r.hypothesis_failure = "T(a1)^pi and T(a2)^pi differ";
    return r;
  }
  if (!hom.in_kernel(a1 * a2 - a2 * a1)) {
    r.hypothesis_failure = "a1 a2 - a2 a1 is not in the kernel";
    return r;
  }
  const Element q = d1.spectral_idempotent;
  const Element p = algebra::lift_idempotent(hom, q).p;
  const auto d12 = geninv::koliha_drazin_inverse(hom(a1 * a2)).drazin;
  r.product_gbf = true;
  r.product_idempotent = d12.spectral_idempotent == q;
  const Element w1 = compress(preimage_of(hom, d1.inverse), p);
  const Element w2 = compress(preimage_of(hom, d2.inverse), p);
  r.w12 = compress(preimage_of(hom, d12.inverse), p);
  if (hom(w1) != d1.inverse || hom(w2) != d2.inverse || hom(*r.w12) != d12.inverse)
    throw DefectError("compressed preimages changed their images");
  r.c = *r.w12 - w2 * w1;
  r.identity_holds = hom.in_kernel(*r.c);
  return r;
}

}  // namespace bfred::perturb
