#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bfred/exact/polynomial.hpp"

namespace bfred::spectral {

using exact::ExactPolynomial;
using exact::GaussianRational;
using exact::Rational;

using Index = unsigned long;

/// Index node of a sequence: s_n = 1/n, or s_n = r^n with r rational and
/// 0 < |r| < 1. Every node value is a nonzero real rational tending to 0.
class Node {
 public:
  static Node harmonic() { return Node(true, Rational(0)); }
  /// Throws ShapeError unless 0 < |r| < 1.
  static Node geometric(const Rational& r);

  bool is_harmonic() const noexcept { return harmonic_; }
  const Rational& ratio() const noexcept { return ratio_; }

  Rational value(Index n) const;
  /// The n >= start with value(n) == s, if any.
  std::optional<Index> index_of(const GaussianRational& s, Index start) const;
  /// Largest n with |value(n)| >= eps, 0 if there is none.
  Index last_index_at_least(const Rational& eps) const;

  friend bool operator==(const Node& a, const Node& b) { return a.harmonic_ == b.harmonic_ && a.ratio_ == b.ratio_; }

 private:
  Node(bool harmonic, Rational ratio) : harmonic_(harmonic), ratio_(std::move(ratio)) {}
  bool harmonic_;
  Rational ratio_;
};

/// Polynomial in s (first index node) and t (second index node) over Q(i).
class Bivariate {
 public:
  using Terms = std::map<std::pair<unsigned, unsigned>, GaussianRational>;

  Bivariate() = default;
  explicit Bivariate(Terms terms);
  static Bivariate constant(const GaussianRational& c);
  static Bivariate s() { return Bivariate(Terms{{{1, 0}, GaussianRational(1)}}); }
  static Bivariate t() { return Bivariate(Terms{{{0, 1}, GaussianRational(1)}}); }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int degree_s() const;
  int degree_t() const;
  GaussianRational coefficient(unsigned j, unsigned k) const;

  GaussianRational operator()(const GaussianRational& s, const GaussianRational& t) const;
  /// P(s, .) as a polynomial in t.
  ExactPolynomial at_s(const GaussianRational& s) const;
  /// P(., t) as a polynomial in s.
  ExactPolynomial at_t(const GaussianRational& t) const;
  /// Coefficient of t^k, as a polynomial in s.
  ExactPolynomial t_coefficient(unsigned k) const;
  /// Coefficient of s^j, as a polynomial in t.
  ExactPolynomial s_coefficient(unsigned j) const;
  /// f(P).
  Bivariate substitute_into(const ExactPolynomial& f) const;

  Bivariate& operator+=(const Bivariate& o);
  Bivariate& operator*=(const Bivariate& o);
  friend Bivariate operator+(Bivariate a, const Bivariate& b) { return a += b; }
  friend Bivariate operator*(Bivariate a, const Bivariate& b) { return a *= b; }
  friend bool operator==(const Bivariate& a, const Bivariate& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

struct FinitePoints {
  std::vector<GaussianRational> points;  // sorted, distinct
  friend bool operator==(const FinitePoints&, const FinitePoints&) = default;
};

/// Terms rule(s_n) for n >= start, n not excluded, together with the limit
/// rule(0). The rule is nonconstant.
struct Tail {
  Node node = Node::harmonic();
  ExactPolynomial rule;
  Index start = 1;
  std::set<Index> excluded;

  GaussianRational limit() const { return rule.coefficient(0); }
  GaussianRational term(Index n) const;
  bool has_index(Index n) const { return n >= start && !excluded.count(n); }
  /// Indices of the terms equal to z.
  std::vector<Index> indices_with_value(const GaussianRational& z) const;
  /// Membership in the closure (terms and limit).
  bool contains(const GaussianRational& z) const;

  friend bool operator==(const Tail& a, const Tail& b) {
    return a.node == b.node && a.rule == b.rule && a.start == b.start && a.excluded == b.excluded;
  }
};

/// Values rule(s_m, t_n), m >= start_m, n >= start_n, closed up: the inner
/// limits rule(s_m, 0), the cross limits rule(0, t_n) and rule(0, 0).
struct TailFamily {
  Node node_m = Node::harmonic();
  Node node_n = Node::harmonic();
  Bivariate rule;
  Index start_m = 1;
  Index start_n = 1;

  GaussianRational limit() const { return rule.coefficient(0, 0); }
  GaussianRational value(Index m, Index n) const;
  /// rule(s_m, 0) over m, or nullopt when it does not depend on s.
  std::optional<Tail> inner_limits() const;
  /// rule(0, t_n) over n, or nullopt when it does not depend on t.
  std::optional<Tail> cross_limits() const;
  bool contains(const GaussianRational& z) const;

  friend bool operator==(const TailFamily& a, const TailFamily& b) {
    return a.node_m == b.node_m && a.node_n == b.node_n && a.rule == b.rule && a.start_m == b.start_m &&
           a.start_n == b.start_n;
  }
};

/// Closed disk; the radius is kept squared so affine images stay exact.
struct Disk {
  GaussianRational center;
  Rational radius_sq;
  friend bool operator==(const Disk&, const Disk&) = default;
};

struct Circle {
  GaussianRational center;
  Rational radius_sq;
  friend bool operator==(const Circle&, const Circle&) = default;
};

struct Segment {
  GaussianRational a;
  GaussianRational b;
  friend bool operator==(const Segment&, const Segment&) = default;
};

using Primitive = std::variant<FinitePoints, Tail, TailFamily, Disk, Circle, Segment>;

bool primitive_contains(const Primitive& p, const GaussianRational& z);

/// Closed subset of C given as a finite union of primitives.
class SpectralSet {
 public:
  SpectralSet() = default;
  /// Validates every primitive (ShapeError) and normalizes: one sorted
  /// point list, no duplicate primitives, no points covered elsewhere.
  explicit SpectralSet(std::vector<Primitive> primitives);
  static SpectralSet points(std::vector<GaussianRational> pts);

  const std::vector<Primitive>& primitives() const noexcept { return primitives_; }
  bool empty() const noexcept { return primitives_.empty(); }
  /// Exact membership; throws Unsupported when a search bound is too large.
  bool contains(const GaussianRational& z) const;
  SpectralSet united(const SpectralSet& o) const;
  /// Mini-language form, parseable by parse_spectral_set.
  std::string to_string() const;

  friend bool operator==(const SpectralSet& a, const SpectralSet& b) { return a.primitives_ == b.primitives_; }

 private:
  std::vector<Primitive> primitives_;
};

enum class Tri { False, True, Unknown };
const char* to_string(Tri t);

/// Set inclusion; Unknown when it cannot be settled exactly.
Tri subset(const SpectralSet& a, const SpectralSet& b);
Tri equals(const SpectralSet& a, const SpectralSet& b);

/// Derived set, primitive-wise: points vanish, a tail leaves its limit, a
/// family leaves its inner and cross limits, regions are perfect.
SpectralSet acc(const SpectralSet& s);

/// Accumulation data of a family. With `with_multiplicity` every inner and
/// cross limit is kept, as for values repeated infinitely often; otherwise
/// the limits of constant inner sequences are dropped.
SpectralSet family_accumulation(const TailFamily& f, bool with_multiplicity);

struct IsolatedPoints {
  std::vector<GaussianRational> points;
  std::vector<Tail> tails;            // terms only, the limit is not isolated
  std::vector<TailFamily> families;   // values not in acc, reported as rules
  bool empty() const { return points.empty() && tails.empty() && families.empty(); }
};

IsolatedPoints iso(const SpectralSet& s);

/// Image f(s). Regions need f affine (Unsupported otherwise); f must be
/// nonconstant (ShapeError).
SpectralSet poly_map(const ExactPolynomial& f, const SpectralSet& s);

bool is_countable(const SpectralSet& s);
bool is_empty(const SpectralSet& s);

/// Spectrum with its poles. nullopt poles: every isolated point is a pole.
struct SpectralElement {
  SpectralSet sigma;
  std::optional<std::vector<GaussianRational>> poles;

  /// Throws VerificationError unless each pole is an isolated point of sigma.
  static SpectralElement make(SpectralSet sigma, std::optional<std::vector<GaussianRational>> poles);
};

/// (iso sigma \ poles) u acc sigma.
SpectralSet sigma_D(const SpectralElement& e);
/// acc sigma.
SpectralSet sigma_KD(const SpectralElement& e);
/// The element f(e) for affine f: sigma and poles mapped.
SpectralElement affine_image(const ExactPolynomial& f, const SpectralElement& e);

}  // namespace bfred::spectral
