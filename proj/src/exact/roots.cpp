#include "bfred/exact/roots.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace bfred::exact {

namespace {

const unsigned kTrialLimit = 10000;

bool is_probable_prime(const Integer& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

// Brent's cycle-finding variant of Pollard rho; returns a nontrivial factor
// of the composite n.
Integer rho_factor(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 64;
    auto step = [&](Integer& v) {
      v = v * v + c;
      v %= n;
    };
    while (g == 1) {
      x = y;
      for (unsigned long k = 0; k < r; ++k) step(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long j = 0; j < std::min(m, r - k); ++j) {
          step(y);
          Integer d = abs(x - y);
          q = (q * d) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        step(ys);
        Integer d = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_composite(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  Integer d = rho_factor(n);
  split_composite(d, out);
  split_composite(Integer(n / d), out);
}

GaussianInteger normalize_associate(GaussianInteger z) {
  if (z.is_zero()) return z;
  // Rotate by i until re > 0 and im >= 0.
  while (!(sgn(z.re) > 0 && sgn(z.im) >= 0)) z = {-z.im, z.re};
  return z;
}

// t with t^2 = -1 mod p, for a prime p = 1 mod 4.
Integer sqrt_minus_one(const Integer& p) {
  Integer e = (p - 1) / 4, t;
  for (Integer c = 2;; ++c) {
    mpz_powm(t.get_mpz_t(), c.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    Integer sq = (t * t) % p;
    if (sq == p - 1) return t;
  }
}

std::vector<Integer> integer_divisors(const Integer& n) {
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : factor_integer(n)) {
    std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  return divs;
}

// Clears denominators: integer coefficient vectors over Z[i].
std::vector<GaussianInteger> integral_coefficients(const ExactPolynomial& f) {
  Integer d = common_denominator(f.coefficients());
  std::vector<GaussianInteger> out;
  for (const auto& c : f.coefficients()) {
    Rational re = c.re() * d, im = c.im() * d;
    out.push_back({re.get_num(), im.get_num()});
  }
  return out;
}

// f with its zero root (if any) removed and made square-free.
ExactPolynomial squarefree_nonzero_part(const ExactPolynomial& f, bool& had_zero) {
  unsigned k = 0;
  const auto& c = f.coefficients();
  while (c[k].is_zero()) ++k;
  had_zero = k > 0;
  ExactPolynomial g(std::vector<GaussianRational>(c.begin() + k, c.end()));
  if (g.degree() <= 0) return g;
  return g / gcd(g, g.derivative());
}

// Evaluates q^n * f(p / q) over Z[i] and tests for zero.
bool vanishes_at(const std::vector<GaussianInteger>& coeffs, const GaussianInteger& p, const GaussianInteger& q) {
  GaussianInteger acc{0, 0}, qpow{1, 0};
  // Horner in homogenized form: acc = acc * p + c_k * q^(n-k)
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    acc = acc * p + coeffs[k] * qpow;
    qpow = qpow * q;
  }
  return acc.is_zero();
}

}  // namespace

std::map<Integer, unsigned> factor_integer(const Integer& n) {
  if (n == 0) throw std::domain_error("factor_integer(0)");
  std::map<Integer, unsigned> out;
  Integer m = abs(n);
  for (unsigned long p = 2; p < kTrialLimit && m > 1; ++p) {
    if (p * p > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      ++out[Integer(p)];
      m /= p;
    }
  }
  if (m > 1) split_composite(m, out);
  return out;
}

std::vector<GaussianInteger> gaussian_divisors(const GaussianInteger& z) {
  if (z.is_zero()) throw std::domain_error("gaussian_divisors(0)");
  std::vector<GaussianInteger> divs{{1, 0}};
  auto extend = [&](const GaussianInteger& prime, unsigned e) {
    std::size_t base = divs.size();
    GaussianInteger pk{1, 0};
    for (unsigned k = 1; k <= e; ++k) {
      pk = pk * prime;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  };
  auto multiplicity = [&](const GaussianInteger& prime) {
    unsigned e = 0;
    GaussianInteger rest = z, q;
    while (exact_divide(rest, prime, q)) {
      ++e;
      rest = q;
    }
    return e;
  };
  for (const auto& [p, e] : factor_integer(z.norm())) {
    if (p == 2) {
      extend({1, 1}, e);
    } else if (mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) {
      extend({p, 0}, e / 2);
    } else {
      GaussianInteger pi = gaussian_gcd({p, 0}, {sqrt_minus_one(p), 1});
      GaussianInteger pibar = pi.conj();
      extend(pi, multiplicity(pi));
      extend(pibar, multiplicity(pibar));
    }
  }
  for (auto& d : divs) d = normalize_associate(d);
  return divs;
}

std::vector<GaussianRational> gaussian_roots(const ExactPolynomial& f) {
  if (f.is_zero()) throw std::domain_error("roots of the zero polynomial");
  bool had_zero = false;
  ExactPolynomial g = squarefree_nonzero_part(f, had_zero);
  std::set<GaussianRational> found;
  if (had_zero) found.insert(GaussianRational());
  if (g.degree() >= 1) {
    auto coeffs = integral_coefficients(g);
    const GaussianInteger& c0 = coeffs.front();
    const GaussianInteger& cn = coeffs.back();
    // Cauchy bound |r| <= 1 + max|c_k| / |c_n|, made rational and conservative.
    Rational max_ratio = 0;
    Rational lead_lower = GaussianRational(cn.to_rational()).abs_lower();
    for (const auto& c : coeffs) max_ratio = std::max(max_ratio, Rational(c.to_rational().abs_bound() / lead_lower));
    Rational bound_sq = (1 + max_ratio) * (1 + max_ratio);
    const std::vector<GaussianInteger> units{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    auto numerators = gaussian_divisors(c0);
    auto denominators = gaussian_divisors(cn);
    int remaining = g.degree();
    for (const auto& q : denominators) {
      Rational qn(q.norm());
      for (const auto& p : numerators) {
        if (Rational(p.norm()) > bound_sq * qn) continue;
        for (const auto& u : units) {
          GaussianInteger up = u * p;
          if (!vanishes_at(coeffs, up, q)) continue;
          GaussianRational r = up.to_rational() / q.to_rational();
          if (found.insert(r).second) --remaining;
        }
        if (remaining == 0) break;
      }
      if (remaining == 0) break;
    }
  }
  return {found.begin(), found.end()};
}

std::vector<Rational> rational_roots(const ExactPolynomial& f) {
  if (f.is_zero()) throw std::domain_error("roots of the zero polynomial");
  std::vector<GaussianRational> re, im;
  for (const auto& c : f.coefficients()) {
    re.emplace_back(c.re());
    im.emplace_back(c.im());
  }
  ExactPolynomial a(re), b(im);
  ExactPolynomial h = b.is_zero() ? a : a.is_zero() ? b : gcd(a, b);
  if (h.degree() <= 0) return {};
  bool had_zero = false;
  ExactPolynomial g = squarefree_nonzero_part(h, had_zero);
  std::set<Rational> found;
  if (had_zero) found.insert(Rational(0));
  if (g.degree() >= 1) {
    auto coeffs = integral_coefficients(g);
    int remaining = g.degree();
    for (const auto& q : integer_divisors(coeffs.back().re)) {
      for (const auto& p : integer_divisors(coeffs.front().re)) {
        for (int sign : {1, -1}) {
          GaussianInteger num{p * sign, 0}, den{q, 0};
          if (!vanishes_at(coeffs, num, den)) continue;
          Rational r(p * sign, q);
          r.canonicalize();
          if (found.insert(r).second) --remaining;
        }
        if (remaining == 0) break;
      }
      if (remaining == 0) break;
    }
  }
  return {found.begin(), found.end()};
}

unsigned root_multiplicity(const ExactPolynomial& f, const GaussianRational& r) {
  if (f.is_zero()) throw std::domain_error("multiplicity in the zero polynomial");
  unsigned m = 0;
  ExactPolynomial g = f;
  const ExactPolynomial lin = ExactPolynomial::linear(r);
  while (g.degree() >= 1) {
    auto [q, rem] = divmod(g, lin);
    if (!rem.is_zero()) break;
    ++m;
    g = std::move(q);
  }
  return m;
}

}  // namespace bfred::exact
