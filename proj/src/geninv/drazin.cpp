#include "bfred/geninv/drazin.hpp"

#include "bfred/error.hpp"

namespace bfred::geninv {

using exact::ExactPolynomial;

namespace {

Element evaluate(const ExactPolynomial& p, const Element& a) { return a.algebra()->element(p(a.matrix())); }

}  // namespace

bool satisfies_drazin_axioms(const Element& a, const Element& b, unsigned k) {
  if (b * a * b != b) return false;
  if (!a.commutes_with(b)) return false;
  Element ak = a.pow(k);
  return ak * b * a == ak;
}

DrazinData drazin_inverse(const Element& a) {
  const auto& alg = a.algebra();
  ExactPolynomial m = exact::minimal_polynomial(a.matrix());
  auto [k, q] = exact::split_at_zero(m);
  Element pi = alg->zero();
  if (k > 0) {
    auto bz = exact::bezout(ExactPolynomial::monomial(k), q);
    if (bz.gcd != ExactPolynomial(1)) throw DefectError("x^k and the cofactor are not coprime");
    pi = evaluate(bz.v * q, a);
  }
  auto shifted_inv = algebra::invert_in_algebra(a + pi);
  if (!shifted_inv) throw DefectError("a + a^pi is not invertible");
  Element b = *shifted_inv * (alg->one() - pi);

  if (!satisfies_drazin_axioms(a, b, k)) throw DefectError("Drazin axioms fail for the computed inverse");
  if (k > 0 && satisfies_drazin_axioms(a, b, k - 1)) throw DefectError("computed Drazin index is not minimal");
  if (!pi.is_idempotent() || !a.commutes_with(pi) || pi != alg->one() - a * b ||
      (k == 0 ? !pi.is_zero() : !(a * pi).pow(k).is_zero()))
    throw DefectError("spectral idempotent check failed");
  return {std::move(b), k, std::move(pi)};
}

std::optional<DrazinData> group_inverse(const Element& a) {
  DrazinData d = drazin_inverse(a);
  if (d.index > 1) return std::nullopt;
  return d;
}

KolihaDrazinData koliha_drazin_inverse(const Element& a) {
  DrazinData d = drazin_inverse(a);
  Element w = a * d.inverse * a - a;
  if (!is_quasinilpotent(w)) throw DefectError("Koliha-Drazin witness is not quasinilpotent");
  return {std::move(d), std::move(w)};
}

bool is_quasinilpotent(const Element& a) {
  return a.matrix().pow(static_cast<unsigned>(a.algebra()->ambient_dim())).is_zero();
}

}  // namespace bfred::geninv
