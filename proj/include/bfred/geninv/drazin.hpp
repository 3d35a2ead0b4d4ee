#pragma once

#include <optional>

#include "bfred/algebra/algebra.hpp"

namespace bfred::geninv {

using algebra::Element;

/// Certified Drazin data: b a b = b, a b = b a, a^k b a = a^k with k least.
struct DrazinData {
  Element inverse;
  unsigned index;
  Element spectral_idempotent;  // 1 - a a^D
};

/// Rational algorithm: minimal polynomial m = x^k q, u x^k + v q = 1,
/// a^pi = v(a) q(a), a^D = (a + a^pi)^{-1} (1 - a^pi). Every axiom is
/// re-verified; a failed check throws DefectError.
DrazinData drazin_inverse(const Element& a);

/// Drazin data when the index is at most 1.
std::optional<DrazinData> group_inverse(const Element& a);

struct KolihaDrazinData {
  DrazinData drazin;
  Element w;  // a b a - a, nilpotent
};

/// In finite dimension this coincides with the Drazin inverse; w is the
/// quasinilpotent witness of a b a = a + w.
KolihaDrazinData koliha_drazin_inverse(const Element& a);

/// Quasinilpotent = nilpotent here: a^n = 0 for n the ambient dimension.
bool is_quasinilpotent(const Element& a);

/// True iff b satisfies the three Drazin axioms for a with exponent k.
bool satisfies_drazin_axioms(const Element& a, const Element& b, unsigned k);

}  // namespace bfred::geninv
