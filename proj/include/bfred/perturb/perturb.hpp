#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bfred/algebra/algebra.hpp"
#include "bfred/spectral/diagonal.hpp"

namespace bfred::perturb {

using algebra::Element;
using algebra::Homomorphism;

/// Sets S whose commuting perturbation class P_comm(S) is probed. The
/// Koliha-Drazin classes coincide with the Drazin ones in finite dimension.
/// The last four are relative to a homomorphism.
enum class PerturbClass {
  Drazin,
  KolihaDrazin,
  DrazinMinusInvertible,
  KDMinusInvertible,
  BFredholm,
  GBFredholm,
  BFMinusFredholm,
  GBFMinusFredholm,
};

const char* to_string(PerturbClass c);
bool needs_homomorphism(PerturbClass c);
/// Exact membership of x in the class.
bool in_class(const Element& x, PerturbClass c, const Homomorphism* hom = nullptr);

/// Basis of {x : x c = c x} in the algebra of c.
std::vector<Element> commutant_basis(const Element& c);

/// Elements commuting with c: polynomials in c, commutant combinations and
/// their shifts by rational eigenvalues (which makes them singular).
std::vector<Element> commuting_partners(const Element& c, unsigned count, std::uint64_t seed);

struct Counterexample {
  Element partner;  // s in the class, s c = c s
  Element sum;      // s + c, not in the class
};

/// "consistent after `trials` partners" or an exact counterexample; never a
/// membership proof.
struct PcommProbe {
  Element candidate;
  PerturbClass cls;
  unsigned trials = 0;
  unsigned partners_in_class = 0;
  std::optional<Counterexample> counterexample;
  bool consistent() const { return !counterexample; }
};

/// Throws ShapeError if the class needs a homomorphism and none is given.
PcommProbe pcomm_probe(const Element& candidate, PerturbClass cls, unsigned trials, std::uint64_t seed,
                       const Homomorphism* hom = nullptr);

struct PerturbationVerdict {
  std::optional<std::string> precondition_failure;
  bool sum_bfredholm = false;
  bool spectra_equal = false;
  bool holds() const { return !precondition_failure && sum_bfredholm && spectra_equal; }
};

/// a B-Fredholm, b T-nilpotent, ab - ba in the kernel: a + b is B-Fredholm
/// with the same B-Fredholm spectrum.
PerturbationVerdict nilpotent_perturbation(const Homomorphism& hom, const Element& a, const Element& b);
/// Diagonal model: b is T-nilpotent iff its essential values lie in {0}.
PerturbationVerdict nilpotent_perturbation(const spectral::DiagonalElement& a, const spectral::DiagonalElement& b);

struct RieszEquivalence {
  bool algebraic = false;             // (i) T(d) algebraic
  bool preserved_mod_kernel = false;  // (ii) over partners commuting modulo the kernel
  bool preserved_commuting = false;   // (iii) over exactly commuting partners
  bool bf_spectrum_empty = false;     // (iv)
  bool fredholm_spectrum_preserved = false;
  unsigned partners = 0;
  bool equivalent() const {
    return algebraic == preserved_mod_kernel && preserved_mod_kernel == preserved_commuting &&
           preserved_commuting == bf_spectrum_empty;
  }
};

/// Throws VerificationError unless d is Riesz.
RieszEquivalence riesz_equivalence(const Homomorphism& hom, const Element& d, unsigned trials, std::uint64_t seed);
RieszEquivalence riesz_equivalence(const spectral::DiagonalElement& d,
                                   const std::vector<spectral::DiagonalElement>& partners);

/// Algebraic quasinilpotent d: sigma_D(a + d) = sigma_D(a) for commuting a.
/// In finite dimension both sides are empty; the Drazin data of a + d - l
/// is certified at every eigenvalue l of a.
bool drazin_spectrum_preserved(const Element& a, const Element& d);

struct SpectralIdempotentPair {
  Element a1, a2;
  Element p;   // lifted T(a1)^pi
  Element q;   // T(a1)^pi
  Element q2;  // T(a2)^pi
  Element w1;  // in (1-p)A(1-p), T(w1) = T(a1)^D
  Element w2;  // T(w2) = T(a2)^D, compressed when that keeps the image
  Element c1, c2;
  bool same_idempotent() const { return q == q2; }
};

/// Throws NoLiftingOracle without surjectivity and lifting; DefectError if
/// (1-p) a1 w1 - (1-p) or w1 a1 (1-p) - (1-p) leaves ker T n (1-p)A(1-p).
SpectralIdempotentPair build_pair(const Homomorphism& hom, const Element& a1, const Element& a2);

bool in_corner(const Element& x, const Element& p);

struct CornerCheck {
  Element z;
  bool z_invertible = false;
  bool cond_i = false;        // p + w1 a2 Fredholm
  bool hypothesis_ii = false;  // T(a2) commutes with q
  bool cond_ii = false;       // p + w1 a2 (1-p) Fredholm
  bool holds() const { return z_invertible == cond_i && (!hypothesis_ii || z_invertible == cond_ii); }
};

CornerCheck corner_check(const Homomorphism& hom, const SpectralIdempotentPair& pair);

struct IdempotentEquivalence {
  bool i = false, ii = false, iii = false, iv = false;
  bool bf_i = false, bf_ii = false, bf_iii = false, bf_iv = false;
  Element c;  // w1 - (p + w1 a2) w2
  bool equivalent() const { return i == ii && ii == iii && iii == iv; }
  bool bf_equivalent() const { return bf_i == bf_ii && bf_ii == bf_iii && bf_iii == bf_iv; }
};

IdempotentEquivalence idempotent_equivalence(const Homomorphism& hom, const SpectralIdempotentPair& pair);

struct InverseIdentity {
  bool applicable = false;  // same spectral idempotents
  Element d;                // w2 - w2 a1 (1-p) w1
  Element c;                // w1 - w1 a2 w2
  bool holds = false;
};

InverseIdentity inverse_identity(const Homomorphism& hom, const SpectralIdempotentPair& pair);

struct ProductIdentity {
  std::optional<std::string> hypothesis_failure;
  bool product_gbf = false;
  bool product_idempotent = false;  // T(a1 a2)^pi = q
  std::optional<Element> w12;
  std::optional<Element> c;  // w12 - w2 w1
  bool identity_holds = false;
  bool holds() const { return !hypothesis_failure && product_gbf && product_idempotent && identity_holds; }
};

ProductIdentity product_identity(const Homomorphism& hom, const Element& a1, const Element& a2);

}  // namespace bfred::perturb
