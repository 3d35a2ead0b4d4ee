#include "bfred/harness/harness.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "bfred/algebra/families.hpp"
#include "bfred/error.hpp"
#include "bfred/fredholm/spectra.hpp"
#include "bfred/geninv/drazin.hpp"
#include "bfred/perturb/perturb.hpp"
#include "bfred/spectral/language.hpp"
#include "json.hpp"

namespace bfred::harness {

using exact::ExactMatrix;
using exact::ExactPolynomial;
using exact::GaussianRational;
using exact::Rational;
using exact::Vector;
using fredholm::Decomposition;
using spectral::DiagonalElement;
using spectral::DiagonalReport;
using spectral::SpectralSet;
using spectral::Tri;

namespace {

struct Skip {
  std::string reason;
};

struct Violation {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Violation{what};
}

[[noreturn]] void skip(std::string reason) { throw Skip{std::move(reason)}; }

class Trace {
 public:
  void add(const std::string& name, const Element& x) { out_ << name << " = " << algebra::describe(x) << "\n"; }
  void add(const std::string& name, const DiagonalElement& d) { out_ << name << " = " << d.to_string() << "\n"; }
  void add(const std::string& name, const std::string& text) { out_ << name << " = " << text << "\n"; }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

using FiniteCheck = std::function<void(const Homomorphism&, SplitMix64&, Trace&)>;
using DiagonalCheck = std::function<void(SplitMix64&, Trace&)>;

struct TagSpec {
  std::string tag;
  FiniteCheck finite;
  DiagonalCheck diagonal;
  const char* always_skip = nullptr;
};

// ---------------------------------------------------------------- helpers

GaussianRational small(SplitMix64& rng, long lo = -2, long hi = 2) { return GaussianRational(rng.uniform(lo, hi)); }

GaussianRational nonzero(SplitMix64& rng, long bound = 2) {
  long v = rng.uniform(1, bound);
  return GaussianRational(rng.coin(2) ? v : -v);
}

bool bf(const Homomorphism& hom, const Element& x) { return fredholm::is_bfredholm(hom, x).member; }
unsigned bf_degree(const Homomorphism& hom, const Element& x) { return fredholm::is_bfredholm(hom, x).degree; }

/// Koliha-Drazin data of T(x); its construction certifies membership.
bool gbf(const Homomorphism& hom, const Element& x) {
  const auto kd = geninv::koliha_drazin_inverse(hom(x));
  return geninv::is_quasinilpotent(kd.w);
}

unsigned ceil_div(unsigned a, unsigned b) { return (a + b - 1) / b; }

Element eval(const ExactPolynomial& f, const Element& a) {
  Element r = a.algebra()->zero();
  const auto& c = f.coefficients();
  for (std::size_t k = c.size(); k-- > 0;) r = (r * a).shifted(c[k]);
  return r;
}

ExactPolynomial random_poly(SplitMix64& rng, int min_degree, int max_degree) {
  const int d = static_cast<int>(rng.uniform(min_degree, max_degree));
  std::vector<GaussianRational> c(d + 1);
  for (auto& x : c) x = small(rng);
  if (d > 0) c[d] = nonzero(rng);
  return ExactPolynomial(std::move(c));
}

std::vector<GaussianRational> unique_sorted(std::vector<GaussianRational> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool explicit_only(const fredholm::AlgebraicPointSet& s) { return s.symbolic_factors().empty(); }

/// Explicit points of x lie in y, and symbolic factors of x occur in y.
bool points_within(const fredholm::AlgebraicPointSet& x, const fredholm::AlgebraicPointSet& y) {
  for (const auto& z : x.explicit_points())
    if (!y.contains(z)) return false;
  for (const auto& f : x.symbolic_factors()) {
    const auto ys = y.symbolic_factors();
    if (std::none_of(ys.begin(), ys.end(), [&](const auto& g) { return g.polynomial == f.polynomial; })) return false;
  }
  return true;
}

Element pick(SplitMix64& rng, const std::vector<Element>& xs) {
  return xs[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(xs.size()) - 1))];
}

Element combination(SplitMix64& rng, const AlgebraPtr& alg, const std::vector<Element>& basis) {
  Element x = alg->zero();
  for (const auto& b : basis)
    if (!rng.coin(3)) x += b * small(rng);
  return x;
}

/// a2 with T(a2)^pi = T(a1)^pi and a1 a2 - a2 a1 in the kernel.
Element same_idempotent_partner(SplitMix64& rng, const Homomorphism& hom, const Element& a1) {
  const Element k = generate_kernel_element(rng, hom);
  switch (rng.uniform(0, 2)) {
    case 0: return a1 * nonzero(rng) + k;
    case 1: return a1 * a1 + k;
    default: return a1 * GaussianRational(Rational(1, 2)) + a1 * a1 * a1 + k;
  }
}

void require_lifting(const Homomorphism& hom) {
  if (!hom.is_surjective() || !hom.has_lifting_oracle()) skip("no idempotent lifting for this homomorphism");
}

/// a^n = b^n + x_n from a = b + c; with b c = c b the binomial expansion
/// gives x_n directly.
void check_powers(const Homomorphism& hom, SplitMix64& rng, Trace& tr, bool commuting, bool koliha) {
  const Element a = generate_element(rng, hom.source());
  Element c = hom.source()->zero();
  if (commuting) {
    const auto basis = fredholm::kernel_commutant_basis(hom, a);
    c = combination(rng, hom.source(), basis);
  } else {
    c = generate_kernel_element(rng, hom);
  }
  const Element b = a - c;
  const unsigned n = static_cast<unsigned>(rng.uniform(1, 4));
  tr.add("a", a);
  tr.add("c", c);
  tr.add("n", std::to_string(n));
  const unsigned k = geninv::drazin_inverse(b).index;
  fredholm::verify_decomposition(hom, a, Decomposition{b, c}, commuting, k);
  const Element bn = b.pow(n);
  Element xn = a.pow(n) - bn;
  if (commuting) {
    Element sum = hom.source()->zero();
    Rational binom(1);
    for (unsigned j = 1; j <= n; ++j) {
      binom = binom * Rational(n - j + 1) / Rational(j);
      sum += b.pow(n - j) * c.pow(j) * GaussianRational(binom);
    }
    expect(sum == xn, "binomial expansion of the kernel part");
  }
  const unsigned kn = ceil_div(k, n);
  fredholm::verify_decomposition(hom, a.pow(n), Decomposition{bn, xn}, commuting, kn);
  if (koliha) expect(geninv::is_quasinilpotent(geninv::koliha_drazin_inverse(bn).w), "b^n Koliha-Drazin");
}

// ------------------------------------------------------- finite checks

void class_inclusions(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const Element a = generate_element(rng, hom.source());
  const Element c = generate_kernel_element(rng, hom);
  tr.add("a", a);
  tr.add("c", c);
  const auto r = fredholm::classify(hom, a, 4, rng.next());
  expect(!r.fredholm || r.bfredholm, "F inside BF");
  expect(!r.bfredholm || r.gbf, "BF inside GBF");
  expect(!r.browder.member || r.weyl.member, "B inside W");
  const auto d = geninv::drazin_inverse(a);
  fredholm::verify_decomposition(hom, a, Decomposition{a, hom.source()->zero()}, true, d.index);
  if (r.weyl.member) fredholm::verify_decomposition(hom, a, *r.weyl.witness, false, 0);
  if (r.browder.member) fredholm::verify_decomposition(hom, a, *r.browder.witness, true, 0);
  expect(bf(hom, a + c) == bf(hom, a), "BF + kernel = BF");
  expect(gbf(hom, a + c) == gbf(hom, a), "GBF + kernel = GBF");
  expect(fredholm::is_fredholm(hom, a + c) == r.fredholm, "F + kernel = F");
}

void spectrum_inclusions(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const Element a = generate_element(rng, hom.source());
  tr.add("a", a);
  const auto sf = fredholm::fredholm_spectrum(hom, a);
  const auto sw = fredholm::weyl_spectrum(hom, a, rng.next());
  const auto sb = fredholm::browder_spectrum(hom, a, rng.next());
  const auto s = fredholm::spectrum(a);
  expect(points_within(sf, sw), "sigma_F inside sigma_W");
  expect(points_within(sw, sb), "sigma_W inside sigma_B");
  expect(points_within(sb, s), "sigma_B inside sigma");
  const auto bs = fredholm::b_spectra(hom, a);
  for (const auto* x : {&bs.bf, &bs.bw, &bs.bb, &bs.gbf, &bs.gbw, &bs.gbb}) expect(x->empty(), "B-spectra empty");
}

void bf_regularity(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const Element a = generate_element(rng, hom.source());
  const unsigned n = static_cast<unsigned>(rng.uniform(1, 4));
  tr.add("a", a);
  tr.add("n", std::to_string(n));
  expect(bf(hom, a) && bf(hom, a.pow(n)), "a and a^n B-Fredholm");
  expect(bf_degree(hom, a.pow(n)) == ceil_div(bf_degree(hom, a), n), "index of T(a)^n");
  const auto [x, y] = generate_commuting_pair(rng, hom);
  tr.add("x", x);
  tr.add("y", y);
  expect(bf(hom, x * y) == (bf(hom, x) && bf(hom, y)), "commuting factors");
  expect(gbf(hom, x * y) == (gbf(hom, x) && gbf(hom, y)), "commuting factors, GBF");
}

void bf_spectral_mapping(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const Element a = generate_element(rng, hom.source());
  const ExactPolynomial f = random_poly(rng, 1, 3);
  tr.add("a", a);
  tr.add("f", f.to_string());
  const Element fa = eval(f, a);
  expect(fredholm::b_spectra(hom, fa).bf.empty() && fredholm::b_spectra(hom, a).bf.empty(), "f of the empty set");
  const auto sf = fredholm::fredholm_spectrum(hom, a);
  if (!explicit_only(sf)) return;
  std::vector<GaussianRational> image;
  for (const auto& z : sf.explicit_points()) image.push_back(f(z));
  const auto sfa = fredholm::fredholm_spectrum(hom, fa);
  expect(explicit_only(sfa) && unique_sorted(sfa.explicit_points()) == unique_sorted(image), "sigma_F(f(a)) = f(sigma_F(a))");
}

void bf_empty_iff_algebraic(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const Element a = generate_element(rng, hom.source());
  tr.add("a", a);
  const bool algebraic = !exact::minimal_polynomial(hom(a).matrix()).is_zero();
  expect(algebraic == fredholm::b_spectra(hom, a).bf.empty(), "empty sigma_BF iff T(a) algebraic");
}

void gbf_empty_iff_acc_empty(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const Element a = generate_element(rng, hom.source());
  tr.add("a", a);
  // sigma_F is finite here, so its derived set is empty
  const auto sf = fredholm::fredholm_spectrum(hom, a);
  expect(!sf.empty() || hom.target()->dim() == 0, "sigma_F nonempty");
  expect(fredholm::b_spectra(hom, a).gbf.empty(), "sigma_GBF empty");
}

void bf_product_symmetry(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const Element x = generate_element(rng, hom.source()), y = generate_element(rng, hom.source());
  tr.add("x", x);
  tr.add("y", y);
  const Element xy = x * y, yx = y * x;
  expect(fredholm::same_points(fredholm::fredholm_spectrum(hom, xy), fredholm::fredholm_spectrum(hom, yx), true),
         "sigma(T(xy)) and sigma(T(yx)) off 0");
  const unsigned i = bf_degree(hom, xy), j = bf_degree(hom, yx);
  expect(i <= j + 1 && j <= i + 1, "indices of T(xy) and T(yx) differ by at most 1");
  expect(fredholm::b_spectra(hom, xy).bf.empty() && fredholm::b_spectra(hom, yx).bf.empty(), "sigma_BF(xy) = sigma_BF(yx)");
}

void countability(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const Element a = generate_element(rng, hom.source());
  tr.add("a", a);
  const auto sf = fredholm::fredholm_spectrum(hom, a);
  unsigned total = 0;
  for (const auto& f : sf.factors()) total += static_cast<unsigned>(f.polynomial.degree()) * f.multiplicity;
  expect(total == hom.target()->ambient_dim(), "sigma_F finite with full multiplicity");
}

void gbf_characterization(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  require_lifting(hom);
  const Element a = generate_element(rng, hom.source());
  tr.add("a", a);
  const auto g = fredholm::gbf_characterization_check(hom, a);
  tr.add("p", g.p);
  expect(g.agree(), "both directions agree");
  expect(g.forward && g.bf_forward, "constructed idempotent satisfies the conditions");
  const Element p = generate_idempotent(rng, hom);
  tr.add("p'", p);
  if (fredholm::certify_gbf(hom, a, p, false)) expect(gbf(hom, a), "certificate from an arbitrary idempotent");
  if (fredholm::certify_gbf(hom, a, p, true)) expect(bf(hom, a), "nilpotent-corner certificate");
}

void kernel_in_bf(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const Element c = generate_kernel_element(rng, hom);
  tr.add("c", c);
  expect(hom(c).is_idempotent(), "T(c) idempotent");
  expect(bf(hom, c), "kernel element B-Fredholm");
  expect(!fredholm::is_fredholm(hom, c), "kernel element not Fredholm");
}

void idempotents_in_bf(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  require_lifting(hom);
  const Element p = generate_idempotent(rng, hom);
  tr.add("p", p);
  expect(hom(p).is_idempotent(), "T(p) idempotent");
  expect(bf(hom, p), "idempotent B-Fredholm");
  if (hom(p).is_one()) skip("T(p) = 1");
  expect(!fredholm::is_fredholm(hom, p), "idempotent off T^-1(1) not Fredholm");
}

void proper_inclusions(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const Element c = generate_kernel_element(rng, hom);
  tr.add("c", c);
  const Element zero = hom.source()->zero();
  expect(bf(hom, c) && !fredholm::is_fredholm(hom, c), "BF but not F");
  fredholm::verify_decomposition(hom, c, Decomposition{zero, c}, true, 1);
  expect(!fredholm::is_weyl(hom, c, rng.next()).member, "BW but not W");
  expect(!fredholm::is_browder(hom, c, rng.next()).member, "BB but not B");
}

void bf_commuting_product(const Homomorphism& hom, SplitMix64& rng, Trace& tr, bool generalized) {
  const Element a = generate_element(rng, hom.source());
  const Element b = eval(random_poly(rng, 0, 2), a) + generate_kernel_element(rng, hom);
  tr.add("a", a);
  tr.add("b", b);
  expect(hom.in_kernel(a * b - b * a), "ab - ba in the kernel");
  if (generalized) {
    expect(gbf(hom, a) && gbf(hom, b) && gbf(hom, a * b), "ab GBF");
  } else {
    expect(bf(hom, a * b), "ab BF");
    expect(bf_degree(hom, a * b) <= std::max(bf_degree(hom, a), bf_degree(hom, b)), "index of a commuting product");
  }
}

void bw_minus_w(const Homomorphism& hom, SplitMix64& rng, Trace& tr, bool generalized) {
  const Element a = generate_element(rng, hom.source());
  tr.add("a", a);
  const bool weyl = fredholm::is_weyl(hom, a, rng.next()).member;
  const bool browder = fredholm::is_browder(hom, a, rng.next()).member;
  const bool in_b = generalized ? gbf(hom, a) : bf(hom, a);
  const bool f = fredholm::is_fredholm(hom, a);
  if (!weyl) expect(in_b && !f, "BW minus W inside BF minus F");
  if (!browder) expect(in_b && !f, "BB minus B inside BF minus F");
}

void kd_bf1_in_bb1(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const Element a = generate_element(rng, hom.source());
  tr.add("a", a);
  if (bf_degree(hom, a) > 1) skip("ind T(a) > 1");
  const auto d = geninv::drazin_inverse(a);
  const Element c = a * d.spectral_idempotent;
  const Element b = a - c;
  tr.add("b", b);
  const unsigned k = geninv::drazin_inverse(b).index;
  expect(k <= 1, "ind b <= 1");
  fredholm::verify_decomposition(hom, a, Decomposition{b, c}, true, k);
}

/// sigma_D(a + c), resp. sigma_KD(a + c), is empty: the Drazin data exists
/// at every eigenvalue.
void spectrum_intersection(const Homomorphism& hom, SplitMix64& rng, Trace& tr, bool koliha) {
  const Element a = generate_element(rng, hom.source());
  const Element c = rng.coin(2) ? generate_kernel_element(rng, hom)
                                : combination(rng, hom.source(), fredholm::kernel_commutant_basis(hom, a));
  tr.add("a", a);
  tr.add("c", c);
  const Element s = a + c;
  for (const auto& l : fredholm::spectrum(s).explicit_points()) {
    if (koliha)
      expect(geninv::is_quasinilpotent(geninv::koliha_drazin_inverse(s.shifted(-l)).w), "Koliha-Drazin at eigenvalue");
    else
      geninv::drazin_inverse(s.shifted(-l));
  }
  const auto bs = fredholm::b_spectra(hom, a);
  if (koliha)
    expect(bs.gbw.empty() && bs.gbb.empty(), "sigma_GBW and sigma_GBB empty");
  else
    expect(bs.bw.empty() && bs.bb.empty(), "sigma_BW and sigma_BB empty");
}

void algebraic_qnil_is_nil(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const Element a = rng.coin(2) ? generate_t_nilpotent(rng, hom) : generate_element(rng, hom.source());
  tr.add("a", a);
  const ExactPolynomial m = exact::minimal_polynomial(a.matrix());
  const bool monomial = m.degree() >= 0 && m == ExactPolynomial::monomial(static_cast<unsigned>(m.degree()));
  const bool nil = a.pow(static_cast<unsigned>(hom.source()->ambient_dim())).is_zero();
  expect(geninv::is_quasinilpotent(a) == nil, "quasinilpotent iff nilpotent");
  expect(monomial == nil, "minimal polynomial x^k iff nilpotent");
}

Element nilpotent_element(SplitMix64& rng, const Homomorphism& hom) {
  const Element y = generate_element(rng, hom.source());
  Element n = y * geninv::drazin_inverse(y).spectral_idempotent;
  if (rng.coin(2)) n = generate_kernel_element(rng, hom);
  return n;
}

void pcomm_drazin(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const Element n = nilpotent_element(rng, hom);
  tr.add("n", n);
  expect(geninv::is_quasinilpotent(n), "candidate nilpotent");
  for (auto cls : {perturb::PerturbClass::Drazin, perturb::PerturbClass::DrazinMinusInvertible,
                   perturb::PerturbClass::KolihaDrazin, perturb::PerturbClass::KDMinusInvertible}) {
    const auto probe = perturb::pcomm_probe(n, cls, 8, rng.next());
    if (probe.counterexample) tr.add("partner", probe.counterexample->partner);
    expect(probe.consistent(), std::string("nilpotent in P_comm(") + perturb::to_string(cls) + ")");
  }
}

void algebraic_qnil_pcomm(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const Element n = nilpotent_element(rng, hom);
  tr.add("n", n);
  expect(!exact::minimal_polynomial(n.matrix()).is_zero() && geninv::is_quasinilpotent(n), "algebraic and quasinilpotent");
  const auto probe = perturb::pcomm_probe(n, perturb::PerturbClass::Drazin, 8, rng.next());
  expect(probe.consistent(), "in P_comm(A^D)");
  // the invertible group has no commuting nonzero-spectrum perturbations
  const Element a = generate_element(rng, hom.source());
  if (!geninv::is_quasinilpotent(a) && algebra::invert_in_algebra(a)) {
    tr.add("a", a);
    expect(!perturb::pcomm_probe(a, perturb::PerturbClass::DrazinMinusInvertible, 4, rng.next()).consistent(),
           "invertible candidate has a counterexample");
  }
}

/// Left and right inverses by solving x a = 1 and a x = 1 in the algebra.
bool one_sided(const Element& a, bool left) {
  const auto& alg = a.algebra();
  ExactMatrix m(alg->dim(), alg->dim());
  for (std::size_t j = 0; j < alg->dim(); ++j) {
    const Element b = alg->basis_element(j);
    const Element prod = left ? b * a : a * b;
    for (std::size_t r = 0; r < alg->dim(); ++r) m(r, j) = prod.coords()[r];
  }
  ExactMatrix rhs(alg->dim(), 1);
  for (std::size_t r = 0; r < alg->dim(); ++r) rhs(r, 0) = alg->one().coords()[r];
  return exact::solve_linear(m, rhs).has_value();
}

void one_sided_invertibility(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const Element a = generate_element(rng, hom.source());
  tr.add("a", a);
  const bool inv = algebra::invert_in_algebra(a).has_value();
  expect(one_sided(a, true) == inv, "left invertible iff invertible");
  expect(one_sided(a, false) == inv, "right invertible iff invertible");
  const Element t = hom(a);
  const bool tinv = algebra::invert_in_algebra(t).has_value();
  expect(one_sided(t, true) == tinv && one_sided(t, false) == tinv, "same in the target");
}

void qnil_drazin_spectrum(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const Element d = nilpotent_element(rng, hom);
  const auto partners = perturb::commuting_partners(d, 3, rng.next());
  const Element a = pick(rng, partners) + eval(random_poly(rng, 0, 2), d);
  tr.add("d", d);
  tr.add("a", a);
  expect(a.commutes_with(d), "a d = d a");
  expect(perturb::drazin_spectrum_preserved(a, d), "sigma_D(a + d) = sigma_D(a)");
}

void nil_pcomm_bf(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const Element b = generate_t_nilpotent(rng, hom);
  tr.add("b", b);
  expect(fredholm::is_t_nilpotent(hom, b) && fredholm::is_riesz(hom, b), "b in N_T = R_T");
  for (auto cls : {perturb::PerturbClass::BFredholm, perturb::PerturbClass::GBFredholm,
                   perturb::PerturbClass::BFMinusFredholm, perturb::PerturbClass::GBFMinusFredholm}) {
    const auto probe = perturb::pcomm_probe(b, cls, 6, rng.next(), &hom);
    if (probe.counterexample) tr.add("partner", probe.counterexample->partner);
    expect(probe.consistent(), std::string("in P_comm(") + perturb::to_string(cls) + ")");
  }
}

void nilpotent_perturbation(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const Element a = generate_element(rng, hom.source());
  const Element b = a * geninv::drazin_inverse(a).spectral_idempotent * nonzero(rng) + generate_kernel_element(rng, hom);
  tr.add("a", a);
  tr.add("b", b);
  const auto v = perturb::nilpotent_perturbation(hom, a, b);
  if (v.precondition_failure) tr.add("precondition", *v.precondition_failure);
  expect(v.holds(), "a + b B-Fredholm with the same spectrum");
}

void riesz_algebraic_pcomm(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const Element d = generate_t_nilpotent(rng, hom);
  tr.add("d", d);
  expect(!exact::minimal_polynomial(hom(d).matrix()).is_zero(), "T(d) algebraic");
  const auto probe = perturb::pcomm_probe(d, perturb::PerturbClass::BFredholm, 8, rng.next(), &hom);
  expect(probe.consistent(), "in P_comm(BF)");
}

void riesz_bf_spectrum(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const Element d = generate_t_nilpotent(rng, hom);
  tr.add("d", d);
  const auto r = perturb::riesz_equivalence(hom, d, 4, rng.next());
  expect(r.algebraic && r.equivalent(), "the four conditions agree");
  expect(r.fredholm_spectrum_preserved, "sigma_F preserved");
}

void corner_inverse(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  require_lifting(hom);
  const Element a = generate_element(rng, hom.source());
  tr.add("a", a);
  const auto pr = perturb::build_pair(hom, a, a);
  tr.add("p", pr.p);
  tr.add("w1", pr.w1);
  const Element one = hom.source()->one();
  const auto x = hom.preimage(hom(pr.w1));
  expect(x.has_value(), "preimage of T(a)^D");
  const Element r = one - pr.p;
  const Element w = r * (*x + generate_kernel_element(rng, hom)) * r;
  tr.add("w'", w);
  expect(hom(w) == hom(pr.w1), "w' maps to T(a)^D");
  expect(hom.in_kernel(w - pr.w1) && perturb::in_corner(w - pr.w1, pr.p), "w' - w in the kernel corner");
}

perturb::SpectralIdempotentPair random_pair(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  require_lifting(hom);
  const Element a1 = generate_element(rng, hom.source());
  const Element a2 = rng.coin(2) ? same_idempotent_partner(rng, hom, a1) : generate_element(rng, hom.source());
  tr.add("a1", a1);
  tr.add("a2", a2);
  auto pr = perturb::build_pair(hom, a1, a2);
  tr.add("p", pr.p);
  tr.add("w1", pr.w1);
  tr.add("w2", pr.w2);
  return pr;
}

void fredholm_z(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const auto pr = random_pair(hom, rng, tr);
  expect(perturb::corner_check(hom, pr).holds(), "z invertible iff the Fredholm conditions");
}

void equal_idempotents(const Homomorphism& hom, SplitMix64& rng, Trace& tr, bool nilpotent) {
  const auto pr = random_pair(hom, rng, tr);
  const auto t = perturb::idempotent_equivalence(hom, pr);
  tr.add("c", t.c);
  expect(nilpotent ? t.bf_equivalent() : t.equivalent(), "the four conditions agree");
}

void inverse_identity(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  const auto pr = random_pair(hom, rng, tr);
  const auto r = perturb::inverse_identity(hom, pr);
  if (!r.applicable) skip("different spectral idempotents");
  tr.add("d", r.d);
  expect(r.holds, "w2 = w2 a1 (1-p) w1 + d and w1 = w1 a2 w2 + c");
}

void product_idempotent(const Homomorphism& hom, SplitMix64& rng, Trace& tr) {
  require_lifting(hom);
  const Element a1 = generate_element(rng, hom.source());
  const Element a2 = same_idempotent_partner(rng, hom, a1);
  tr.add("a1", a1);
  tr.add("a2", a2);
  const auto t = perturb::product_identity(hom, a1, a2);
  if (t.hypothesis_failure) skip(*t.hypothesis_failure);
  if (t.c) tr.add("c", *t.c);
  expect(t.holds(), "w12 = w2 w1 + c");
}

// ----------------------------------------------------- diagonal checks

DiagonalReport report(const DiagonalElement& d) { return spectral::diag_classify(d); }

void expect_tri(Tri t, const std::string& what) {
  if (t == Tri::Unknown) skip("set comparison undecided");
  expect(t == Tri::True, what);
}

DiagonalElement diag_eval(const ExactPolynomial& f, const DiagonalElement& d) {
  const auto& c = f.coefficients();
  DiagonalElement r = DiagonalElement::constant(c.back());
  for (std::size_t k = c.size() - 1; k-- > 0;)
    r = spectral::diag_arith(spectral::diag_arith(r, d, spectral::DiagOp::Mul), DiagonalElement::constant(c[k]),
                             spectral::DiagOp::Add);
  return r;
}

void diag_class_inclusions(SplitMix64& rng, Trace& tr) {
  const DiagonalElement d = generate_diagonal(rng), c = generate_c0_like(rng, d);
  tr.add("d", d);
  tr.add("c", c);
  const auto r = report(d);
  expect(!r.fredholm_at_0 || r.bfredholm_at_0, "F inside BF");
  expect_tri(spectral::subset(r.sigma_GBF, r.sigma_BF), "sigma_GBF inside sigma_BF");
  expect_tri(spectral::subset(r.sigma_BF, r.sigma_F), "sigma_BF inside sigma_F");
  const auto rc = report(spectral::diag_arith(d, c, spectral::DiagOp::Add));
  expect_tri(spectral::equals(rc.sigma_BF, r.sigma_BF), "sigma_BF(d + c) = sigma_BF(d)");
  expect_tri(spectral::equals(rc.sigma_F, r.sigma_F), "sigma_F(d + c) = sigma_F(d)");
}

void diag_spectrum_inclusions(SplitMix64& rng, Trace& tr) {
  const DiagonalElement d = generate_diagonal(rng);
  tr.add("d", d);
  const auto r = report(d);
  expect_tri(spectral::subset(r.sigma_F, r.sigma), "sigma_F inside sigma");
  expect_tri(spectral::subset(r.sigma_GBF, spectral::acc(r.sigma)), "sigma_GBF inside sigma_KD");
}

void diag_regularity(SplitMix64& rng, Trace& tr) {
  const DiagonalElement d = generate_diagonal(rng);
  const unsigned n = static_cast<unsigned>(rng.uniform(1, 3));
  tr.add("d", d);
  tr.add("n", std::to_string(n));
  const auto r = report(d), rn = report(diag_eval(ExactPolynomial::monomial(n), d));
  expect(r.bfredholm_at_0 == rn.bfredholm_at_0, "d BF iff d^n BF");
}

void diag_spectral_mapping(SplitMix64& rng, Trace& tr) {
  const DiagonalElement d = generate_diagonal(rng);
  const ExactPolynomial f = random_poly(rng, 1, 2);
  tr.add("d", d);
  tr.add("f", f.to_string());
  const auto r = report(d), rf = report(diag_eval(f, d));
  expect_tri(spectral::equals(rf.sigma_BF, spectral::poly_map(f, r.sigma_BF)), "sigma_BF(f(d)) = f(sigma_BF(d))");
  expect_tri(spectral::equals(rf.sigma_GBF, spectral::poly_map(f, r.sigma_GBF)), "sigma_GBF(f(d)) = f(sigma_GBF(d))");
}

void diag_empty_iff_algebraic(SplitMix64& rng, Trace& tr) {
  const DiagonalElement d = generate_diagonal(rng);
  tr.add("d", d);
  const auto r = report(d);
  expect(r.t_algebraic == spectral::is_empty(r.sigma_BF), "empty sigma_BF iff T(d) algebraic");
}

void diag_gbf_empty(SplitMix64& rng, Trace& tr) {
  const DiagonalElement d = generate_diagonal(rng);
  tr.add("d", d);
  const auto r = report(d);
  expect(spectral::is_empty(r.sigma_GBF) == spectral::is_empty(spectral::acc(r.sigma_F)), "empty sigma_GBF iff acc sigma_F empty");
}

void diag_product_symmetry(SplitMix64& rng, Trace& tr) {
  const DiagonalElement x = generate_diagonal(rng), y = generate_diagonal_like(rng, x);
  tr.add("x", x);
  tr.add("y", y);
  const auto rxy = report(spectral::diag_arith(x, y, spectral::DiagOp::Mul));
  const auto ryx = report(spectral::diag_arith(y, x, spectral::DiagOp::Mul));
  expect_tri(spectral::equals(rxy.sigma_BF, ryx.sigma_BF), "sigma_BF(xy) = sigma_BF(yx)");
}

void diag_countability(SplitMix64& rng, Trace& tr) {
  const DiagonalElement d = generate_diagonal(rng);
  tr.add("d", d);
  const auto r = report(d);
  const bool f = spectral::is_countable(r.sigma_F);
  expect(spectral::is_countable(r.sigma_BF) == f && spectral::is_countable(r.sigma_GBF) == f, "countability agrees");
}

void diag_kernel_in_bf(SplitMix64& rng, Trace& tr) {
  const DiagonalElement c = generate_c0_like(rng, generate_diagonal(rng));
  tr.add("c", c);
  const auto r = report(c);
  expect(r.bfredholm_at_0 && !r.fredholm_at_0, "c_0 element BF but not F");
}

void diag_nilpotent_perturbation(SplitMix64& rng, Trace& tr) {
  const DiagonalElement a = generate_diagonal(rng), b = generate_c0_like(rng, a);
  tr.add("a", a);
  tr.add("b", b);
  const auto v = perturb::nilpotent_perturbation(a, b);
  if (v.precondition_failure) tr.add("precondition", *v.precondition_failure);
  expect(v.holds(), "same sigma_BF");
}

void diag_riesz(SplitMix64& rng, Trace& tr) {
  const DiagonalElement a = generate_diagonal(rng), d = generate_c0_like(rng, a);
  tr.add("d", d);
  tr.add("a", a);
  const auto r = perturb::riesz_equivalence(d, {a, generate_diagonal_like(rng, a)});
  expect(r.equivalent() && r.algebraic, "the four conditions agree");
  expect(r.fredholm_spectrum_preserved, "sigma_F preserved");
}

// ------------------------------------------------------------ tag table

constexpr const char* kQnilReason = "B^qnil minus B^nil is empty in finite dimension and in the diagonal model";
constexpr const char* kRieszReason =
    "R_T = N_T in every constructible backend; no instance with R_T strictly larger than N_T";

const std::vector<TagSpec>& specs() {
  using namespace std::placeholders;
  static const std::vector<TagSpec> table = {
      {"class-inclusions", class_inclusions, diag_class_inclusions},
      {"spectrum-inclusions", spectrum_inclusions, diag_spectrum_inclusions},
      {"bf-regularity", bf_regularity, diag_regularity},
      {"bf-spectral-mapping", bf_spectral_mapping, diag_spectral_mapping},
      {"bf-empty-iff-algebraic", bf_empty_iff_algebraic, diag_empty_iff_algebraic},
      {"gbf-empty-iff-acc-empty", gbf_empty_iff_acc_empty, diag_gbf_empty},
      {"bf-product-symmetry", bf_product_symmetry, diag_product_symmetry},
      {"countability", countability, diag_countability},
      {"gbf-idempotent-characterization", gbf_characterization, nullptr},
      {"kernel-in-bf", kernel_in_bf, diag_kernel_in_bf},
      {"idempotents-in-bf", idempotents_in_bf, nullptr},
      {"proper-inclusions", proper_inclusions, nullptr},
      {"bf-commuting-product", std::bind(bf_commuting_product, _1, _2, _3, false), nullptr},
      {"bw-powers", std::bind(check_powers, _1, _2, _3, false, false), nullptr},
      {"bb-powers", std::bind(check_powers, _1, _2, _3, true, false), nullptr},
      {"bw-minus-w", std::bind(bw_minus_w, _1, _2, _3, false), nullptr},
      {"kd-bf1-in-bb1", kd_bf1_in_bb1, nullptr},
      {"bw-spectrum-intersection", std::bind(spectrum_intersection, _1, _2, _3, false), nullptr},
      {"qnil-not-nil-in-gbf", nullptr, nullptr, kQnilReason},
      {"gbf-commuting-product", std::bind(bf_commuting_product, _1, _2, _3, true), nullptr},
      {"gbw-powers", std::bind(check_powers, _1, _2, _3, false, true), nullptr},
      {"gbb-powers", std::bind(check_powers, _1, _2, _3, true, true), nullptr},
      {"gbw-minus-w", std::bind(bw_minus_w, _1, _2, _3, true), nullptr},
      {"gbw-spectrum-intersection", std::bind(spectrum_intersection, _1, _2, _3, true), nullptr},
      {"algebraic-qnil-is-nil", algebraic_qnil_is_nil, nullptr},
      {"pcomm-drazin", pcomm_drazin, nullptr},
      {"algebraic-qnil-pcomm", algebraic_qnil_pcomm, nullptr},
      {"one-sided-invertibility", one_sided_invertibility, nullptr},
      {"qnil-drazin-spectrum", qnil_drazin_spectrum, nullptr},
      {"nil-pcomm-bf", nil_pcomm_bf, nullptr},
      {"riesz-beyond-nilpotent", nullptr, nullptr, kRieszReason},
      {"nilpotent-perturbation", nilpotent_perturbation, diag_nilpotent_perturbation},
      {"riesz-algebraic-pcomm", riesz_algebraic_pcomm, nullptr},
      {"riesz-bf-spectrum", riesz_bf_spectrum, diag_riesz},
      {"corner-inverse", corner_inverse, nullptr},
      {"fredholm-z", fredholm_z, nullptr},
      {"equal-idempotents-gbf", std::bind(equal_idempotents, _1, _2, _3, false), nullptr},
      {"inverse-identity", inverse_identity, nullptr},
      {"equal-idempotents-bf", std::bind(equal_idempotents, _1, _2, _3, true), nullptr},
      {"product-idempotent", product_idempotent, nullptr},
  };
  return table;
}

struct Outcome {
  enum Kind { Pass, Skipped, Failed } kind = Pass;
  std::string text;
  std::string dump;
};

Outcome run_one(const TagSpec& spec, const std::optional<Homomorphism>& hom, SplitMix64 rng) {
  if (spec.always_skip) return {Outcome::Skipped, spec.always_skip, {}};
  Trace tr;
  try {
    if (hom) {
      if (!spec.finite) return {Outcome::Skipped, "diagonal model only", {}};
      spec.finite(*hom, rng, tr);
    } else {
      if (!spec.diagonal) return {Outcome::Skipped, "needs a finite algebra", {}};
      spec.diagonal(rng, tr);
    }
  } catch (const Skip& s) {
    return {Outcome::Skipped, s.reason, {}};
  } catch (const Violation& v) {
    return {Outcome::Failed, v.what, tr.str()};
  } catch (const NoLiftingOracle&) {
    return {Outcome::Skipped, "no idempotent lifting for this homomorphism", {}};
  } catch (const Unsupported& e) {
    return {Outcome::Skipped, std::string("unsupported: ") + e.what(), {}};
  } catch (const Error& e) {
    return {Outcome::Failed, e.what(), tr.str()};
  }
  return {};
}

std::optional<Homomorphism> trial_homomorphism(const TrialPlan& plan, const SplitMix64& trial) {
  if (plan.algebra_family.kind == FamilyKind::DiagonalModel) return std::nullopt;
  SplitMix64 rng = trial.derive(0);
  return generate_homomorphism(plan, rng);
}

bool selected(const TrialPlan& plan, const std::string& tag) {
  return plan.theorem_filter.empty() ||
         std::find(plan.theorem_filter.begin(), plan.theorem_filter.end(), tag) != plan.theorem_filter.end();
}

}  // namespace

AlgebraFamily parse_family(std::string_view name) {
  auto number = [&](std::string_view digits) {
    if (digits.empty() || digits.size() > 2 || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw ShapeError("unknown algebra family '" + std::string(name) + "'");
    return static_cast<std::size_t>(std::stoul(std::string(digits)));
  };
  if (name == "block" || name == "block_upper") return {FamilyKind::BlockUpper, 0};
  if (name == "random" || name == "random_closed") return {FamilyKind::RandomClosed, 0};
  if (name == "diagonal" || name == "diagonal_model") return {FamilyKind::DiagonalModel, 0};
  std::size_t n = 0;
  if (name.starts_with("upper_triangular_"))
    n = number(name.substr(17));
  else if (name.starts_with("u"))
    n = number(name.substr(1));
  else
    throw ShapeError("unknown algebra family '" + std::string(name) + "'");
  if (n < 1 || n > 8) throw ShapeError("upper triangular size must be in 1..8");
  return {FamilyKind::UpperTriangular, n};
}

std::string to_string(const AlgebraFamily& f) {
  switch (f.kind) {
    case FamilyKind::UpperTriangular: return "u" + std::to_string(f.n);
    case FamilyKind::BlockUpper: return "block";
    case FamilyKind::RandomClosed: return "random";
    case FamilyKind::DiagonalModel: return "diagonal";
  }
  return "?";
}

const char* TheoremResult::status() const {
  if (!failures.empty()) return "failed";
  return instances_run > 0 ? "passed" : "skipped";
}

const std::vector<std::string>& theorem_tags() {
  static const std::vector<std::string> tags = [] {
    std::vector<std::string> out;
    for (const auto& s : specs()) out.push_back(s.tag);
    return out;
  }();
  return tags;
}

Homomorphism generate_homomorphism(const TrialPlan& plan, SplitMix64& rng) {
  const std::size_t cap = std::max<std::size_t>(plan.max_ambient_dim, 2);
  auto blocks = [&] {
    std::vector<std::size_t> b;
    std::size_t total = 0;
    const std::size_t target = static_cast<std::size_t>(rng.uniform(2, static_cast<long>(std::min<std::size_t>(cap, 4))));
    while (total < target) {
      std::size_t s = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(std::min<std::size_t>(2, target - total))));
      b.push_back(s);
      total += s;
    }
    if (b.size() == 1) b = {1, b[0] > 1 ? b[0] - 1 : 1};
    return b;
  };
  switch (plan.algebra_family.kind) {
    case FamilyKind::UpperTriangular:
      if (plan.algebra_family.n > cap) throw ShapeError("family exceeds max_ambient_dim");
      return algebra::diagonal_part(plan.algebra_family.n);
    case FamilyKind::BlockUpper:
      return algebra::block_diagonal_part(blocks());
    case FamilyKind::RandomClosed: {
      const auto b = blocks();
      return algebra::random_closed(b, 2, [&](long lo, long hi) { return rng.uniform(lo, hi); });
    }
    case FamilyKind::DiagonalModel:
      break;
  }
  throw ShapeError("the diagonal model has no finite homomorphism");
}

Element generate_element(SplitMix64& rng, const AlgebraPtr& alg) {
  Vector c(alg->dim());
  for (auto& x : c) x = rng.coin(3) ? GaussianRational(0) : small(rng);
  Element a = alg->from_coords(std::move(c));
  if (rng.coin(2)) {
    const auto pts = fredholm::spectrum(a).explicit_points();
    if (!pts.empty()) a = a.shifted(-pts[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(pts.size()) - 1))]);
  }
  return a;
}

Element generate_kernel_element(SplitMix64& rng, const Homomorphism& hom) {
  return combination(rng, hom.source(), hom.kernel().elements());
}

Element generate_idempotent(SplitMix64& rng, const Homomorphism& hom) {
  const Element y = hom(generate_element(rng, hom.source()));
  Element q = geninv::drazin_inverse(y).spectral_idempotent;
  if (rng.coin(2)) q = hom.target()->one() - q;
  const auto x = hom.preimage(q);
  if (!x) throw DefectError("idempotent has no preimage");
  const Element p = algebra::lift_idempotent(hom, q, *x + generate_kernel_element(rng, hom)).p;
  if (!p.is_idempotent() || hom(p) != q) throw DefectError("lifted idempotent does not verify");
  return p;
}

std::pair<Element, Element> generate_commuting_pair(SplitMix64& rng, const Homomorphism& hom) {
  const Element a = generate_element(rng, hom.source());
  Element b = eval(random_poly(rng, 0, 2), a) +
              combination(rng, hom.source(), fredholm::kernel_commutant_basis(hom, a));
  if (!a.commutes_with(b)) throw DefectError("generated pair does not commute");
  return {a, b};
}

Element generate_t_nilpotent(SplitMix64& rng, const Homomorphism& hom) {
  const Element y = generate_element(rng, hom.source());
  return y * geninv::drazin_inverse(y).spectral_idempotent + generate_kernel_element(rng, hom);
}

namespace {

spectral::Tail random_tail(SplitMix64& rng, const spectral::Node& node, const GaussianRational& limit) {
  spectral::Tail t;
  t.node = node;
  t.rule = ExactPolynomial({limit, nonzero(rng, 3)});
  return t;
}

spectral::Node random_node(SplitMix64& rng) {
  static const Rational ratios[] = {Rational(1, 2), Rational(-1, 3), Rational(2, 3)};
  if (rng.coin(2)) return spectral::Node::harmonic();
  return spectral::Node::geometric(ratios[rng.uniform(0, 2)]);
}

spectral::TailFamily random_family(SplitMix64& rng, const spectral::Node& m, const spectral::Node& n,
                                   const GaussianRational& limit) {
  spectral::TailFamily f;
  f.node_m = m;
  f.node_n = n;
  f.rule = spectral::Bivariate::s() * spectral::Bivariate::constant(nonzero(rng)) +
           spectral::Bivariate::t() * spectral::Bivariate::constant(nonzero(rng)) +
           spectral::Bivariate::constant(limit);
  return f;
}

}  // namespace

DiagonalElement generate_diagonal(SplitMix64& rng) {
  DiagonalElement d;
  std::vector<long> limits = {-3, -2, -1, 0, 1, 2, 3};
  auto take_limit = [&] {
    const auto k = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(limits.size()) - 1));
    const long v = limits[k];
    limits.erase(limits.begin() + static_cast<long>(k));
    return GaussianRational(v);
  };
  const long finite = rng.uniform(0, 2);
  for (long k = 0; k < finite; ++k)
    d.atoms.emplace_back(spectral::FiniteAtom{GaussianRational(Rational(rng.uniform(-6, 6), 2)),
                                              static_cast<unsigned>(rng.uniform(1, 2))});
  if (rng.coin(2)) d.atoms.emplace_back(spectral::ConstantAtom{take_limit()});
  const long tails = rng.uniform(1, 2);
  for (long k = 0; k < tails; ++k) d.atoms.emplace_back(random_tail(rng, random_node(rng), take_limit()));
  if (rng.coin(4)) d.atoms.emplace_back(random_family(rng, random_node(rng), random_node(rng), take_limit() * 4));
  return d;
}

DiagonalElement generate_diagonal_like(SplitMix64& rng, const DiagonalElement& d) {
  DiagonalElement out;
  for (const auto& a : d.atoms) {
    if (auto* f = std::get_if<spectral::FiniteAtom>(&a))
      out.atoms.emplace_back(spectral::FiniteAtom{small(rng, -3, 3), f->multiplicity});
    else if (std::holds_alternative<spectral::ConstantAtom>(a))
      out.atoms.emplace_back(spectral::ConstantAtom{small(rng, -3, 3)});
    else if (auto* t = std::get_if<spectral::Tail>(&a))
      out.atoms.emplace_back(random_tail(rng, t->node, small(rng, -3, 3)));
    else {
      const auto& fam = std::get<spectral::TailFamily>(a);
      out.atoms.emplace_back(random_family(rng, fam.node_m, fam.node_n, small(rng, -3, 3)));
    }
  }
  return out;
}

DiagonalElement generate_c0_like(SplitMix64& rng, const DiagonalElement& d) {
  DiagonalElement out;
  for (const auto& a : d.atoms) {
    if (auto* f = std::get_if<spectral::FiniteAtom>(&a))
      out.atoms.emplace_back(spectral::FiniteAtom{small(rng, -3, 3), f->multiplicity});
    else if (auto* t = std::get_if<spectral::Tail>(&a))
      out.atoms.emplace_back(random_tail(rng, t->node, GaussianRational(0)));
    else
      out.atoms.emplace_back(spectral::ConstantAtom{GaussianRational(0)});
  }
  return out;
}

std::vector<TheoremResult> run_suite(const TrialPlan& plan) {
  const auto& table = specs();
  std::vector<TheoremResult> results;
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < table.size(); ++k)
    if (selected(plan, table[k].tag)) {
      active.push_back(k);
      results.emplace_back().tag = table[k].tag;
    }
  if (plan.trials == 0)
    for (auto& r : results) r.skip_reason = "no trials requested";
  const SplitMix64 root(plan.seed);
  for (unsigned t = 0; t < plan.trials; ++t) {
    const SplitMix64 trial = root.derive(t);
    const auto hom = trial_homomorphism(plan, trial);
    for (std::size_t i = 0; i < active.size(); ++i) {
      const Outcome o = run_one(table[active[i]], hom, trial.derive(active[i] + 1));
      TheoremResult& r = results[i];
      switch (o.kind) {
        case Outcome::Pass: ++r.instances_run; break;
        case Outcome::Skipped:
          ++r.skipped;
          if (r.skip_reason.empty()) r.skip_reason = o.text;
          break;
        case Outcome::Failed:
          ++r.instances_run;
          r.failures.push_back(Failure{t, o.text, o.dump});
          break;
      }
    }
  }
  return results;
}

std::optional<Failure> replay(const TrialPlan& plan, const std::string& tag, unsigned trial) {
  const auto& table = specs();
  auto it = std::find_if(table.begin(), table.end(), [&](const TagSpec& s) { return s.tag == tag; });
  if (it == table.end()) throw ShapeError("unknown tag '" + tag + "'");
  const SplitMix64 t = SplitMix64(plan.seed).derive(trial);
  const Outcome o = run_one(*it, trial_homomorphism(plan, t), t.derive(static_cast<std::size_t>(it - table.begin()) + 1));
  if (o.kind != Outcome::Failed) return std::nullopt;
  return Failure{trial, o.text, o.dump};
}

bool has_failures(const std::vector<TheoremResult>& results) {
  return std::any_of(results.begin(), results.end(), [](const TheoremResult& r) { return !r.failures.empty(); });
}

std::string format_text(const TrialPlan& plan, const std::vector<TheoremResult>& results) {
  std::ostringstream os;
  os << "suite seed=" << plan.seed << " trials=" << plan.trials << " family=" << to_string(plan.algebra_family)
     << "\n";
  unsigned failed = 0;
  for (const auto& r : results) {
    os << r.status() << "  " << r.tag << "  run=" << r.instances_run << " skipped=" << r.skipped
       << " failures=" << r.failures.size();
    if (r.instances_run == 0 && !r.skip_reason.empty()) os << "  reason: " << r.skip_reason;
    os << "\n";
    failed += static_cast<unsigned>(r.failures.size());
  }
  for (const auto& r : results)
    for (const auto& f : r.failures) {
      os << "FAILURE " << r.tag << " trial=" << f.trial << ": " << f.message << "\n";
      std::istringstream lines(f.dump);
      for (std::string line; std::getline(lines, line);) os << "  " << line << "\n";
    }
  os << "total failures: " << failed << "\n";
  return os.str();
}

std::string format_json(const TrialPlan& plan, const std::vector<TheoremResult>& results) {
  nlohmann::ordered_json j;
  j["seed"] = plan.seed;
  j["trials"] = plan.trials;
  j["family"] = to_string(plan.algebra_family);
  j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json e;
    e["tag"] = r.tag;
    e["status"] = r.status();
    e["instances_run"] = r.instances_run;
    e["skipped"] = r.skipped;
    e["skip_reason"] = r.skip_reason;
    e["failures"] = nlohmann::ordered_json::array();
    for (const auto& f : r.failures) e["failures"].push_back({{"trial", f.trial}, {"message", f.message}, {"dump", f.dump}});
    j["results"].push_back(std::move(e));
  }
  j["failed"] = has_failures(results);
  return j.dump(2);
}

}  // namespace bfred::harness
