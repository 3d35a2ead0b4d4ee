#include "bfred/exact/gaussian_integer.hpp"

namespace bfred::exact {

bool exact_divide(const GaussianInteger& a, const GaussianInteger& b, GaussianInteger& quotient) {
  Integer n = b.norm();
  GaussianInteger num = a * b.conj();
  if (!mpz_divisible_p(num.re.get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(num.im.get_mpz_t(), n.get_mpz_t()))
    return false;
  mpz_divexact(quotient.re.get_mpz_t(), num.re.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(quotient.im.get_mpz_t(), num.im.get_mpz_t(), n.get_mpz_t());
  return true;
}

namespace {

// Nearest integer to p/q for q > 0.
Integer round_div(const Integer& p, const Integer& q) {
  Integer twice = 2 * p + q;
  Integer d = 2 * q;
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), twice.get_mpz_t(), d.get_mpz_t());
  return r;
}

}  // namespace

GaussianInteger rounded_quotient(const GaussianInteger& a, const GaussianInteger& b) {
  Integer n = b.norm();
  GaussianInteger num = a * b.conj();
  return {round_div(num.re, n), round_div(num.im, n)};
}

GaussianInteger gaussian_gcd(GaussianInteger a, GaussianInteger b) {
  while (!b.is_zero()) {
    GaussianInteger r = a - rounded_quotient(a, b) * b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Integer common_denominator(const std::vector<GaussianRational>& values) {
  Integer l = 1;
  for (const auto& v : values) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.re().get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.im().get_den_mpz_t());
  }
  return l;
}

}  // namespace bfred::exact
