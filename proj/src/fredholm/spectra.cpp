#include "bfred/fredholm/spectra.hpp"

#include <sstream>

#include "bfred/error.hpp"
#include "bfred/exact/roots.hpp"
#include "bfred/geninv/drazin.hpp"

namespace bfred::fredholm {

using exact::ExactMatrix;

namespace {

constexpr std::size_t kGridCap = std::size_t(1) << 16;

ExactPolynomial strip_zero(const ExactPolynomial& f) {
  if (f.is_zero()) return f;
  return exact::split_at_zero(f).second.monic();
}

/// Splits the square-free h into the part whose roots l keep
/// det(a - l - sum t_i d_i) identically zero in t, and drops the rest.
ExactPolynomial persistent_part(const Element& a, const std::vector<Element>& dirs, ExactPolynomial h) {
  const std::size_t m = dirs.size();
  std::vector<std::size_t> bound(m);
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    bound[i] = exact::rank(dirs[i].matrix()) + 1;
    if (total > kGridCap / bound[i]) throw Unsupported("determinant grid exceeds 2^16 points");
    total *= bound[i];
  }
  std::vector<std::size_t> digit(m, 0);
  for (std::size_t step = 0; step < total && h.degree() > 0; ++step) {
    if (step > 0)
      for (std::size_t i = 0; i < m; ++i) {
        if (++digit[i] < bound[i]) break;
        digit[i] = 0;
      }
    ExactMatrix shifted = a.matrix();
    for (std::size_t i = 0; i < m; ++i)
      if (digit[i] != 0) shifted = shifted - dirs[i].matrix() * GaussianRational(static_cast<long>(digit[i]));
    h = exact::gcd(h, exact::characteristic_polynomial(shifted));
  }
  return h;
}

AlgebraicPointSet essential_spectrum(const Homomorphism& hom, const Element& a, std::uint64_t seed, bool browder) {
  AlgebraicPointSet out;
  const ExactPolynomial chi_t = exact::characteristic_polynomial(hom(a).matrix());
  std::optional<std::vector<Element>> dirs;
  const AlgebraicPointSet full = spectrum(a);
  for (const auto& f : full.factors()) {
    if (auto l = f.point()) {
      Element s = a.shifted(-*l);
      bool member = browder ? is_browder(hom, s, seed).member : is_weyl(hom, s, seed).member;
      if (!member) out.add(f);
      continue;
    }
    // sigma_F(a) = sigma(T(a)) lies in both spectra
    ExactPolynomial in_f = exact::gcd(f.polynomial, chi_t);
    ExactPolynomial rest = f.polynomial / in_f;
    if (in_f.degree() > 0) out.add({in_f, f.multiplicity, f.certified_irreducible && rest.degree() == 0});
    if (rest.degree() <= 0) continue;
    if (!dirs) dirs = browder ? kernel_commutant_basis(hom, a) : hom.kernel().elements();
    ExactPolynomial keep = persistent_part(a, *dirs, rest);
    if (keep.degree() > 0) out.add({keep, f.multiplicity, f.certified_irreducible && keep == f.polynomial});
  }
  return out;
}

}  // namespace

std::optional<GaussianRational> SpectralFactor::point() const {
  if (polynomial.degree() != 1) return std::nullopt;
  return -polynomial.coefficient(0) / polynomial.leading();
}

AlgebraicPointSet AlgebraicPointSet::from_polynomial(const ExactPolynomial& f) {
  if (f.is_zero()) throw ShapeError("spectrum of the zero polynomial");
  AlgebraicPointSet s;
  ExactPolynomial rest = f.monic();
  for (const auto& r : exact::gaussian_roots(rest)) {
    unsigned m = exact::root_multiplicity(rest, r);
    ExactPolynomial lin = ExactPolynomial::linear(r);
    for (unsigned k = 0; k < m; ++k) rest = rest / lin;
    s.add({lin, m, true});
  }
  if (rest.degree() > 0)
    for (auto& [g, m] : exact::squarefree_decomposition(rest)) s.add({g, m, g.degree() <= 3});
  return s;
}

std::vector<GaussianRational> AlgebraicPointSet::explicit_points() const {
  std::vector<GaussianRational> out;
  for (const auto& f : factors_)
    if (auto p = f.point()) out.push_back(*p);
  return out;
}

std::vector<SpectralFactor> AlgebraicPointSet::symbolic_factors() const {
  std::vector<SpectralFactor> out;
  for (const auto& f : factors_)
    if (f.polynomial.degree() > 1) out.push_back(f);
  return out;
}

bool AlgebraicPointSet::contains(const GaussianRational& z) const {
  for (const auto& f : factors_)
    if (f.polynomial(z).is_zero()) return true;
  return false;
}

ExactPolynomial AlgebraicPointSet::radical() const {
  ExactPolynomial r(1);
  for (const auto& f : factors_) r *= f.polynomial;
  return r;
}

std::string AlgebraicPointSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (k) os << ", ";
    os << factors_[k].polynomial.to_string();
    if (factors_[k].multiplicity > 1) os << " (x" << factors_[k].multiplicity << ')';
  }
  os << '}';
  return os.str();
}

void AlgebraicPointSet::add(SpectralFactor f) {
  f.polynomial = f.polynomial.monic();
  factors_.push_back(std::move(f));
}

bool same_points(const AlgebraicPointSet& x, const AlgebraicPointSet& y, bool ignore_zero) {
  ExactPolynomial rx = x.radical(), ry = y.radical();
  if (ignore_zero) {
    rx = strip_zero(rx);
    ry = strip_zero(ry);
  }
  return rx.monic() == ry.monic();
}

AlgebraicPointSet spectrum(const Element& a) {
  return AlgebraicPointSet::from_polynomial(exact::characteristic_polynomial(a.matrix()));
}

AlgebraicPointSet fredholm_spectrum(const Homomorphism& hom, const Element& a) { return spectrum(hom(a)); }

AlgebraicPointSet weyl_spectrum(const Homomorphism& hom, const Element& a, std::uint64_t seed) {
  return essential_spectrum(hom, a, seed, false);
}

AlgebraicPointSet browder_spectrum(const Homomorphism& hom, const Element& a, std::uint64_t seed) {
  return essential_spectrum(hom, a, seed, true);
}

BSpectra b_spectra(const Homomorphism& hom, const Element& a) {
  const Element t = hom(a);
  for (const auto& l : fredholm_spectrum(hom, a).explicit_points()) geninv::drazin_inverse(t.shifted(-l));
  geninv::drazin_inverse(t);
  return {};
}

}  // namespace bfred::fredholm
