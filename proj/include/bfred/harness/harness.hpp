#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bfred/algebra/algebra.hpp"
#include "bfred/exact/random.hpp"
#include "bfred/spectral/diagonal.hpp"

namespace bfred::harness {

using algebra::AlgebraPtr;
using algebra::Element;
using algebra::Homomorphism;
using exact::SplitMix64;

enum class FamilyKind { UpperTriangular, BlockUpper, RandomClosed, DiagonalModel };

struct AlgebraFamily {
  FamilyKind kind = FamilyKind::UpperTriangular;
  std::size_t n = 2;  // size for UpperTriangular
};

/// u2, u3, ..., upper_triangular_N, block, block_upper, random,
/// random_closed, diagonal, diagonal_model. ShapeError otherwise.
AlgebraFamily parse_family(std::string_view name);
std::string to_string(const AlgebraFamily& f);

struct TrialPlan {
  std::uint64_t seed = 0;
  unsigned trials = 0;
  std::size_t max_ambient_dim = 6;
  AlgebraFamily algebra_family;
  std::vector<std::string> theorem_filter;  // empty: every tag
};

struct Failure {
  unsigned trial = 0;
  std::string message;
  std::string dump;  // the instance, one "name = value" per line
};

struct TheoremResult {
  std::string tag;
  unsigned instances_run = 0;
  std::vector<Failure> failures;
  unsigned skipped = 0;
  std::string skip_reason;  // first reason met

  /// "failed", "passed" or "skipped".
  const char* status() const;
};

/// Tags in suite order.
const std::vector<std::string>& theorem_tags();

/// Every trial owns the stream SplitMix64(seed).derive(trial); the check
/// for tag k uses derive(k + 1) of it, the homomorphism derive(0).
std::vector<TheoremResult> run_suite(const TrialPlan& plan);

/// Reruns one tag on one trial; the failure if it fails again.
std::optional<Failure> replay(const TrialPlan& plan, const std::string& tag, unsigned trial);

bool has_failures(const std::vector<TheoremResult>& results);
std::string format_text(const TrialPlan& plan, const std::vector<TheoremResult>& results);
std::string format_json(const TrialPlan& plan, const std::vector<TheoremResult>& results);

/// The trial homomorphism of a finite family. ShapeError for the diagonal
/// model.
Homomorphism generate_homomorphism(const TrialPlan& plan, SplitMix64& rng);

/// Coordinates in {-2..2}, half the time shifted by an eigenvalue.
Element generate_element(SplitMix64& rng, const AlgebraPtr& algebra);
Element generate_kernel_element(SplitMix64& rng, const Homomorphism& hom);
/// Lift of T(y)^pi or its complement for a random y; p^2 = p is verified.
Element generate_idempotent(SplitMix64& rng, const Homomorphism& hom);
/// (a, f(a) + c) with c in the kernel and commuting with a.
std::pair<Element, Element> generate_commuting_pair(SplitMix64& rng, const Homomorphism& hom);
/// y y^pi plus a kernel element.
Element generate_t_nilpotent(SplitMix64& rng, const Homomorphism& hom);

spectral::DiagonalElement generate_diagonal(SplitMix64& rng);
/// Same atom structure as d with fresh coefficients.
spectral::DiagonalElement generate_diagonal_like(SplitMix64& rng, const spectral::DiagonalElement& d);
/// Same structure as d with every essential value 0.
spectral::DiagonalElement generate_c0_like(SplitMix64& rng, const spectral::DiagonalElement& d);

}  // namespace bfred::harness
