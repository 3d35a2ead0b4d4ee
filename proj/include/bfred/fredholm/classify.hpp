#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "bfred/algebra/algebra.hpp"

namespace bfred::fredholm {

using algebra::Element;
using algebra::Homomorphism;

/// a = b + c with c in the kernel.
struct Decomposition {
  Element b;
  Element c;
};

struct Membership {
  bool member = false;
  std::optional<Decomposition> witness;
};

struct DegreeWitness {
  unsigned degree;
  Decomposition witness;
};

/// Degrees found by search. Presence is exact, absence proves nothing.
struct DegreeSet {
  std::vector<DegreeWitness> found;
  bool witnesses_only = true;

  std::set<unsigned> degrees() const;
  bool contains(unsigned k) const { return degrees().count(k) > 0; }
  bool empty() const noexcept { return found.empty(); }
};

bool is_fredholm(const Homomorphism& hom, const Element& a);

/// a in A^{-1} + ker T. Decided through the determinant of a - sum t_i c_i
/// over a kernel basis c_i; negatives are exact.
Membership is_weyl(const Homomorphism& hom, const Element& a, std::uint64_t seed = 0);

/// As is_weyl with c restricted to ker T intersected with the commutant of
/// a: for b = a - c, bc = cb iff ac = ca.
Membership is_browder(const Homomorphism& hom, const Element& a, std::uint64_t seed = 0);

struct BFredholmResult {
  bool member;
  unsigned degree;  // ind T(a)
};

BFredholmResult is_bfredholm(const Homomorphism& hom, const Element& a);

DegreeSet bweyl_degrees(const Homomorphism& hom, const Element& a, unsigned trials, std::uint64_t seed = 0);
DegreeSet bbrowder_degrees(const Homomorphism& hom, const Element& a, unsigned trials, std::uint64_t seed = 0);

/// T(a) quasinilpotent, resp. nilpotent. Both are nilpotency of T(a) here.
bool is_riesz(const Homomorphism& hom, const Element& a);
bool is_t_nilpotent(const Homomorphism& hom, const Element& a);

struct ClassificationReport {
  bool fredholm = false;
  Membership weyl;
  Membership browder;
  bool bfredholm = false;
  unsigned bfredholm_degree = 0;
  DegreeSet bweyl;
  DegreeSet bbrowder;
  bool gbf = false;
  bool gbw = false;
  bool gbb = false;
  bool riesz = false;
  bool t_nilpotent = false;
};

/// Full report. Every witness is re-verified and the containments
/// browder => weyl => fredholm => bfredholm => gbf are checked; with a
/// nilpotent kernel fredholm, weyl and browder must coincide. A failure
/// throws DefectError.
ClassificationReport classify(const Homomorphism& hom, const Element& a, unsigned trials = 8,
                              std::uint64_t seed = 0);

/// Throws DefectError unless a = b + c, c in the kernel, b invertible (or
/// Drazin of the given index) and bc = cb when `commuting`.
void verify_decomposition(const Homomorphism& hom, const Element& a, const Decomposition& d, bool commuting,
                          std::optional<unsigned> index = std::nullopt);

/// Basis of ker T intersected with {c : ac = ca}.
std::vector<Element> kernel_commutant_basis(const Homomorphism& hom, const Element& a);

/// Some c in span(directions) with a - c invertible, or nullopt when
/// det(a - sum t_i d_i) vanishes identically. Small direction sets are
/// decided on the full interpolation grid; larger ones are sampled first
/// and negatives confirmed on the grid (Unsupported past 2^16 points).
std::optional<Element> find_invertible_shift(const Element& a, const std::vector<Element>& directions,
                                             std::uint64_t seed = 0);

/// Idempotent data for the characterization of generalized B-Fredholm
/// elements through p with a + p Fredholm.
struct GbfCharacterization {
  Element p;
  bool plus_p_fredholm = false;   // a + p Fredholm
  bool left_in_kernel = false;    // p a (1 - p)
  bool right_in_kernel = false;   // (1 - p) a p
  bool corner_riesz = false;      // p a p in R_T
  bool corner_nilpotent = false;  // p a p in N_T
  bool forward = false;           // a is GBF and the constructed p satisfies the conditions
  bool converse = false;          // conditions on p certify a GBF
  bool bf_forward = false;
  bool bf_converse = false;

  bool agree() const { return forward == converse && bf_forward == bf_converse; }
};

/// Lifts q = T(a)^pi to p and checks both directions. Needs a surjective
/// hom with a lifting oracle (NoLiftingOracle otherwise).
GbfCharacterization gbf_characterization_check(const Homomorphism& hom, const Element& a);

/// Converse direction for an arbitrary idempotent p: if the conditions hold
/// then T(a) commutes with q = T(p), T(a) + q is invertible and T(a) q is
/// quasinilpotent (nilpotent when `nilpotent_corner`). Returns whether the
/// conditions hold and the certificate verified.
bool certify_gbf(const Homomorphism& hom, const Element& a, const Element& p, bool nilpotent_corner);

}  // namespace bfred::fredholm
