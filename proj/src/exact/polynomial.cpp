#include "bfred/exact/polynomial.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

#include "bfred/error.hpp"

namespace bfred::exact {

ExactPolynomial::ExactPolynomial(std::vector<GaussianRational> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

ExactPolynomial::ExactPolynomial(GaussianRational constant) {
  if (!constant.is_zero()) coeffs_.push_back(std::move(constant));
}

ExactPolynomial ExactPolynomial::monomial(unsigned degree, GaussianRational coefficient) {
  std::vector<GaussianRational> c(degree + 1);
  c[degree] = std::move(coefficient);
  return ExactPolynomial(std::move(c));
}

ExactPolynomial ExactPolynomial::linear(const GaussianRational& root) {
  return ExactPolynomial({-root, GaussianRational(1)});
}

void ExactPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

GaussianRational ExactPolynomial::coefficient(unsigned k) const {
  return k < coeffs_.size() ? coeffs_[k] : GaussianRational();
}

const GaussianRational& ExactPolynomial::leading() const {
  if (coeffs_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return coeffs_.back();
}

ExactPolynomial ExactPolynomial::monic() const {
  if (is_zero()) return *this;
  GaussianRational inv = leading().inverse();
  ExactPolynomial out = *this;
  for (auto& c : out.coeffs_) c *= inv;
  return out;
}

GaussianRational ExactPolynomial::operator()(const GaussianRational& x) const {
  GaussianRational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

ExactMatrix ExactPolynomial::operator()(const ExactMatrix& a) const {
  if (!a.is_square()) throw ShapeError("polynomial evaluated at non-square matrix");
  ExactMatrix acc = ExactMatrix::zero(a.rows(), a.cols());
  const ExactMatrix id = ExactMatrix::identity(a.rows());
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * a;
    if (!it->is_zero()) acc += id * *it;
  }
  return acc;
}

ExactPolynomial ExactPolynomial::compose(const ExactPolynomial& g) const {
  ExactPolynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= g;
    acc += ExactPolynomial(*it);
  }
  return acc;
}

ExactPolynomial ExactPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<GaussianRational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * GaussianRational(static_cast<long>(k));
  return ExactPolynomial(std::move(d));
}

ExactPolynomial ExactPolynomial::conj() const {
  std::vector<GaussianRational> c;
  c.reserve(coeffs_.size());
  for (const auto& x : coeffs_) c.push_back(x.conj());
  return ExactPolynomial(std::move(c));
}

ExactPolynomial& ExactPolynomial::operator+=(const ExactPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

ExactPolynomial& ExactPolynomial::operator-=(const ExactPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

ExactPolynomial& ExactPolynomial::operator*=(const ExactPolynomial& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<GaussianRational> out(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

ExactPolynomial ExactPolynomial::operator-() const {
  ExactPolynomial out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

std::string ExactPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const auto& c = coeffs_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    bool simple_negative = c.is_real() && sgn(c.re()) < 0;
    std::string body;
    GaussianRational shown = simple_negative ? -c : c;
    bool needs_parens = !shown.is_real() && sgn(shown.re()) != 0;
    std::string coeff = needs_parens ? "(" + shown.to_string() + ")" : shown.to_string();
    if (k == 0)
      body = coeff;
    else {
      std::string mono = k == 1 ? var : var + "^" + std::to_string(k);
      body = shown.is_one() ? mono : coeff + "*" + mono;
    }
    if (first)
      os << (simple_negative ? "-" : "") << body;
    else
      os << (simple_negative ? " - " : " + ") << body;
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ExactPolynomial& p) { return os << p.to_string(); }

std::pair<ExactPolynomial, ExactPolynomial> divmod(const ExactPolynomial& f, const ExactPolynomial& g) {
  if (g.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<GaussianRational> r = f.coefficients();
  int dg = g.degree();
  if (f.degree() < dg) return {ExactPolynomial(), f};
  std::vector<GaussianRational> q(static_cast<std::size_t>(f.degree() - dg + 1));
  GaussianRational inv = g.leading().inverse();
  const auto& gc = g.coefficients();
  for (int k = f.degree() - dg; k >= 0; --k) {
    GaussianRational c = r[static_cast<std::size_t>(k + dg)] * inv;
    if (c.is_zero()) continue;
    q[static_cast<std::size_t>(k)] = c;
    for (int j = 0; j <= dg; ++j) r[static_cast<std::size_t>(k + j)] -= c * gc[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(dg));
  return {ExactPolynomial(std::move(q)), ExactPolynomial(std::move(r))};
}

ExactPolynomial operator/(const ExactPolynomial& f, const ExactPolynomial& g) { return divmod(f, g).first; }
ExactPolynomial operator%(const ExactPolynomial& f, const ExactPolynomial& g) { return divmod(f, g).second; }

ExactPolynomial gcd(const ExactPolynomial& f, const ExactPolynomial& g) {
  ExactPolynomial a = f, b = g;
  while (!b.is_zero()) {
    ExactPolynomial r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

BezoutResult bezout(const ExactPolynomial& f, const ExactPolynomial& g) {
  if (f.is_zero() && g.is_zero()) throw std::domain_error("bezout of two zero polynomials");
  // Invariants: r0 = s0*f + t0*g, r1 = s1*f + t1*g.
  ExactPolynomial r0 = f, r1 = g;
  ExactPolynomial s0(1), s1, t0, t1(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    ExactPolynomial s2 = s0 - q * s1;
    ExactPolynomial t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  GaussianRational inv = r0.leading().inverse();
  ExactPolynomial scale(inv);
  return {s0 * scale, t0 * scale, r0 * scale};
}

std::pair<unsigned, ExactPolynomial> split_at_zero(const ExactPolynomial& m) {
  if (m.is_zero()) throw std::domain_error("split_at_zero of the zero polynomial");
  const auto& c = m.coefficients();
  unsigned k = 0;
  while (c[k].is_zero()) ++k;
  ExactPolynomial q(std::vector<GaussianRational>(c.begin() + k, c.end()));
#ifdef BFRED_MUTATE_SPLIT_AT_ZERO
  // Mutation-testing build: report the order of the zero root off by one.
  ++k;
#endif
  return {k, q};
}

std::vector<std::pair<ExactPolynomial, unsigned>> squarefree_decomposition(const ExactPolynomial& f) {
  if (f.is_zero()) throw std::domain_error("square-free decomposition of zero");
  std::vector<std::pair<ExactPolynomial, unsigned>> out;
  ExactPolynomial p = f.monic();
  if (p.degree() == 0) return out;
  ExactPolynomial dp = p.derivative();
  ExactPolynomial a = gcd(p, dp);
  ExactPolynomial b = p / a;
  ExactPolynomial c = dp / a;
  ExactPolynomial d = c - b.derivative();
  unsigned i = 1;
  while (b.degree() > 0) {
    ExactPolynomial g = gcd(b, d);
    b = b / g;
    c = d / g;
    if (g.degree() > 0) out.emplace_back(g.monic(), i);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

}  // namespace bfred::exact
