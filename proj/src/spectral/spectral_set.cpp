#include "bfred/spectral/spectral_set.hpp"

#include <algorithm>
#include <functional>

#include "bfred/error.hpp"
#include "bfred/exact/roots.hpp"

namespace bfred::spectral {

using exact::Integer;

namespace {

constexpr Index kSearchCap = 200000;

Rational abs_q(const Rational& q) { return Rational(abs(q)); }

GaussianRational gq(const Rational& q) { return GaussianRational(q); }

Index to_index(const Integer& z) {
  if (!z.fits_ulong_p()) throw Unsupported("sequence index does not fit a machine word");
  return z.get_ui();
}

void check_cap(Index n) {
  if (n > kSearchCap) throw Unsupported("index search bound exceeds " + std::to_string(kSearchCap));
}

/// p(s) = U(s) + i V(s) for real s.
std::pair<ExactPolynomial, ExactPolynomial> real_parts(const ExactPolynomial& p) {
  std::vector<GaussianRational> u, v;
  for (const auto& c : p.coefficients()) {
    u.emplace_back(c.re());
    v.emplace_back(c.im());
  }
  return {ExactPolynomial(u), ExactPolynomial(v)};
}

/// Sum of |c_j| over j >= 1: |p(s) - p(0)| <= C |s| whenever |s| <= 1.
Rational tail_constant(const ExactPolynomial& p) {
  Rational c = 0;
  for (int j = 1; j <= p.degree(); ++j) c += p.coefficient(j).abs_bound();
  return c;
}

/// Index past which every term lies within delta of the limit.
Index settle_index(const Tail& t, const Rational& delta) {
  Index n = t.node.last_index_at_least(Rational(delta / tail_constant(t.rule)));
  check_cap(n);
  return n;
}

/// Sign of a real polynomial R along the node values: for n > threshold it
/// equals `sign`, unless `alternating`.
struct SignPattern {
  int sign = 0;
  bool alternating = false;
  Index threshold = 0;
};

SignPattern eventual_sign(const ExactPolynomial& r, const Node& node) {
  if (r.is_zero()) return {};
  auto [k, r1] = exact::split_at_zero(r);
  const Rational a0 = r1.coefficient(0).re();
  Rational m = 0;
  for (int j = 1; j <= r1.degree(); ++j) m = std::max(m, abs_q(r1.coefficient(j).re()));
  SignPattern p;
  p.sign = sgn(a0);
  if (m != 0) {
    // nonzero roots of r1 satisfy |x| >= |a0| / (|a0| + max |a_j|)
    p.threshold = node.last_index_at_least(Rational(abs_q(a0) / (abs_q(a0) + m)));
    check_cap(p.threshold);
  }
  if (!node.is_harmonic() && node.ratio() < 0 && k % 2 == 1) p.alternating = true;
  return p;
}

/// Index subsets of a tail's domain: exactly `list`, or all but `list`.
struct IndexSet {
  bool cofinite = false;
  std::set<Index> list;
};

IndexSet unite(const IndexSet& a, const IndexSet& b) {
  IndexSet r;
  if (!a.cofinite && !b.cofinite) {
    r.list = a.list;
    r.list.insert(b.list.begin(), b.list.end());
  } else if (a.cofinite && b.cofinite) {
    r.cofinite = true;
    std::set_intersection(a.list.begin(), a.list.end(), b.list.begin(), b.list.end(),
                          std::inserter(r.list, r.list.end()));
  } else {
    const IndexSet& c = a.cofinite ? a : b;
    const IndexSet& f = a.cofinite ? b : a;
    r.cofinite = true;
    std::set_difference(c.list.begin(), c.list.end(), f.list.begin(), f.list.end(),
                        std::inserter(r.list, r.list.end()));
  }
  return r;
}

IndexSet scan_indices(const Tail& t, Index threshold, bool eventually_in,
                      const std::function<bool(const GaussianRational&)>& in) {
  check_cap(threshold);
  IndexSet r;
  r.cofinite = eventually_in;
  for (Index n = t.start; n <= threshold; ++n) {
    if (!t.has_index(n)) continue;
    if (in(t.term(n)) != eventually_in) r.list.insert(n);
  }
  return r;
}

bool same_sequence(const Tail& a, const Tail& b) { return a.node == b.node && a.rule == b.rule; }

IndexSet shared_indices(const Tail& t, const Tail& other) {
  IndexSet r;
  r.cofinite = true;
  for (Index n = t.start; n < other.start; ++n)
    if (t.has_index(n)) r.list.insert(n);
  for (Index n : other.excluded)
    if (t.has_index(n)) r.list.insert(n);
  return r;
}

bool in_segment(const Segment& s, const GaussianRational& z) {
  GaussianRational w = (z - s.a) / (s.b - s.a);
  return w.is_real() && w.re() >= 0 && w.re() <= 1;
}

/// Indices n of t whose term lies in p; nullopt when not decided exactly.
std::optional<IndexSet> indices_in(const Tail& t, const Primitive& p) {
  if (auto* f = std::get_if<FinitePoints>(&p)) {
    IndexSet r;
    for (const auto& z : f->points)
      for (Index n : t.indices_with_value(z)) r.list.insert(n);
    return r;
  }
  if (auto* o = std::get_if<Tail>(&p)) {
    if (t.limit() == o->limit()) {
      if (same_sequence(t, *o)) return shared_indices(t, *o);
      return std::nullopt;
    }
    const Rational delta = Rational((t.limit() - o->limit()).abs_lower() / 3);
    const Index n1 = settle_index(t, delta), n2 = settle_index(*o, delta);
    IndexSet r;
    for (Index n = t.start; n <= n1; ++n)
      if (t.has_index(n) && o->contains(t.term(n))) r.list.insert(n);
    for (Index m = o->start; m <= n2; ++m)
      if (o->has_index(m))
        for (Index n : t.indices_with_value(o->term(m)))
          if (n > n1) r.list.insert(n);
    return r;
  }
  if (auto* fam = std::get_if<TailFamily>(&p)) {
    for (const auto& side : {fam->inner_limits(), fam->cross_limits()})
      if (side && same_sequence(t, *side)) return shared_indices(t, *side);
    return std::nullopt;
  }
  auto [u, v] = real_parts(t.rule);
  if (auto* d = std::get_if<Disk>(&p)) {
    ExactPolynomial uu = u - ExactPolynomial(gq(d->center.re())), vv = v - ExactPolynomial(gq(d->center.im()));
    ExactPolynomial r = uu * uu + vv * vv - ExactPolynomial(gq(d->radius_sq));
    SignPattern s = eventual_sign(r, t.node);
    if (s.alternating) return std::nullopt;
    return scan_indices(t, s.threshold, s.sign <= 0,
                        [&](const GaussianRational& z) { return (z - d->center).norm() <= d->radius_sq; });
  }
  if (auto* c = std::get_if<Circle>(&p)) {
    ExactPolynomial uu = u - ExactPolynomial(gq(c->center.re())), vv = v - ExactPolynomial(gq(c->center.im()));
    ExactPolynomial r = uu * uu + vv * vv - ExactPolynomial(gq(c->radius_sq));
    if (r.is_zero()) return shared_indices(t, t);
    SignPattern s = eventual_sign(r, t.node);
    return scan_indices(t, s.threshold, false,
                        [&](const GaussianRational& z) { return (z - c->center).norm() == c->radius_sq; });
  }
  const auto& seg = std::get<Segment>(p);
  auto [su, sv] = real_parts((t.rule - ExactPolynomial(seg.a)) * ExactPolynomial((seg.b - seg.a).inverse()));
  auto in = [&](const GaussianRational& z) { return in_segment(seg, z); };
  if (!sv.is_zero()) return scan_indices(t, eventual_sign(sv, t.node).threshold, false, in);
  SignPattern lo = eventual_sign(su, t.node), hi = eventual_sign(su - ExactPolynomial(1), t.node);
  if (lo.alternating || hi.alternating) return std::nullopt;
  return scan_indices(t, std::max(lo.threshold, hi.threshold), lo.sign >= 0 && hi.sign <= 0, in);
}

#ifndef BFRED_MUTATE_FAMILY_ACC
/// Rows m whose inner sequence rule(s_m, t_n) is constant in n.
std::set<Index> constant_rows(const TailFamily& f) {
  ExactPolynomial g;
  for (int k = 1; k <= f.rule.degree_t(); ++k) g = exact::gcd(g, f.rule.t_coefficient(k));
  std::set<Index> rows;
  if (g.degree() < 1) return rows;
  for (const auto& root : exact::gaussian_roots(g))
    if (!root.is_zero())
      if (auto m = f.node_m.index_of(root, f.start_m)) rows.insert(*m);
  return rows;
}

std::set<Index> constant_columns(const TailFamily& f) {
  ExactPolynomial g;
  for (int j = 1; j <= f.rule.degree_s(); ++j) g = exact::gcd(g, f.rule.s_coefficient(j));
  std::set<Index> cols;
  if (g.degree() < 1) return cols;
  for (const auto& root : exact::gaussian_roots(g))
    if (!root.is_zero())
      if (auto n = f.node_n.index_of(root, f.start_n)) cols.insert(*n);
  return cols;
}
#endif

/// sqrt(n) + sqrt(r1) <= sqrt(r2), exactly.
bool disk_in_disk(const GaussianRational& c1, const Rational& r1, const GaussianRational& c2, const Rational& r2) {
  const Rational n = (c1 - c2).norm();
  const Rational slack = r2 - n - r1;
  return slack >= 0 && 4 * n * r1 <= slack * slack;
}

template <class T>
bool has_alternative(const SpectralSet& s) {
  return std::any_of(s.primitives().begin(), s.primitives().end(),
                     [](const Primitive& p) { return std::holds_alternative<T>(p); });
}

Tri tail_subset(const Tail& t, const SpectralSet& b) {
  if (!b.contains(t.limit())) return Tri::False;
  IndexSet covered;
  bool undecided = false;
  for (const auto& q : b.primitives()) {
    std::optional<IndexSet> r;
    try {
      r = indices_in(t, q);
    } catch (const Unsupported&) {
    }
    if (r)
      covered = unite(covered, *r);
    else
      undecided = true;
  }
  if (covered.cofinite) {
    std::vector<Index> rest;
    for (Index n : covered.list)
      if (t.has_index(n)) rest.push_back(n);
    if (rest.empty()) return Tri::True;
    if (!undecided) return Tri::False;
    for (Index n : rest)
      if (!b.contains(t.term(n))) return Tri::False;
    return Tri::True;
  }
  if (!undecided) return Tri::False;
  Index seen = 0;
  for (Index n = t.start; seen < 50; ++n) {
    if (!t.has_index(n) || covered.list.count(n)) continue;
    ++seen;
    if (!b.contains(t.term(n))) return Tri::False;
  }
  return Tri::Unknown;
}

Tri primitive_subset(const Primitive& p, const SpectralSet& b) {
  if (auto* f = std::get_if<FinitePoints>(&p)) {
    for (const auto& z : f->points)
      if (!b.contains(z)) return Tri::False;
    return Tri::True;
  }
  if (auto* t = std::get_if<Tail>(&p)) return tail_subset(*t, b);
  if (auto* fam = std::get_if<TailFamily>(&p)) {
    if (!b.contains(fam->limit())) return Tri::False;
    Tri sides = Tri::True;
    for (const auto& side : {fam->inner_limits(), fam->cross_limits()}) {
      if (!side) continue;
      Tri r = tail_subset(*side, b);
      if (r == Tri::False) return Tri::False;
      if (r == Tri::Unknown) sides = Tri::Unknown;
    }
    for (const auto& q : b.primitives())
      if (auto* g = std::get_if<TailFamily>(&q))
        if (g->node_m == fam->node_m && g->node_n == fam->node_n && g->rule == fam->rule &&
            g->start_m <= fam->start_m && g->start_n <= fam->start_n)
          return sides;
    for (Index m = fam->start_m; m < fam->start_m + 6; ++m)
      for (Index n = fam->start_n; n < fam->start_n + 6; ++n)
        if (!b.contains(fam->value(m, n))) return Tri::False;
    return Tri::Unknown;
  }
  if (auto* d = std::get_if<Disk>(&p)) {
    for (const auto& q : b.primitives())
      if (auto* e = std::get_if<Disk>(&q))
        if (disk_in_disk(d->center, d->radius_sq, e->center, e->radius_sq)) return Tri::True;
    // a disk not inside the only disk leaves an uncountable remainder
    const auto disks = std::count_if(b.primitives().begin(), b.primitives().end(),
                                     [](const Primitive& q) { return std::holds_alternative<Disk>(q); });
    if (disks <= 1 || !b.contains(d->center)) return Tri::False;
    return Tri::Unknown;
  }
  if (auto* c = std::get_if<Circle>(&p)) {
    for (const auto& q : b.primitives()) {
      if (auto* e = std::get_if<Disk>(&q))
        if (disk_in_disk(c->center, c->radius_sq, e->center, e->radius_sq)) return Tri::True;
      if (auto* e = std::get_if<Circle>(&q))
        if (*e == *c) return Tri::True;
    }
    return has_alternative<Disk>(b) ? Tri::Unknown : Tri::False;
  }
  const auto& s = std::get<Segment>(p);
  for (const auto& q : b.primitives()) {
    if (auto* e = std::get_if<Disk>(&q))
      if ((s.a - e->center).norm() <= e->radius_sq && (s.b - e->center).norm() <= e->radius_sq) return Tri::True;
    if (auto* e = std::get_if<Segment>(&q))
      if (in_segment(*e, s.a) && in_segment(*e, s.b)) return Tri::True;
  }
  if (!b.contains(s.a) || !b.contains(s.b)) return Tri::False;
  return has_alternative<Disk>(b) || has_alternative<Segment>(b) ? Tri::Unknown : Tri::False;
}

void validate(const Primitive& p) {
  if (auto* t = std::get_if<Tail>(&p)) {
    if (t->rule.degree() < 1) throw ShapeError("tail rule must be nonconstant");
    if (t->start < 1) throw ShapeError("tail start index must be at least 1");
  } else if (auto* f = std::get_if<TailFamily>(&p)) {
    if (f->rule.degree_s() < 1 || f->rule.degree_t() < 1) throw ShapeError("family rule must involve both indices");
    if (f->start_m < 1 || f->start_n < 1) throw ShapeError("family start indices must be at least 1");
  } else if (auto* d = std::get_if<Disk>(&p)) {
    if (d->radius_sq <= 0) throw ShapeError("disk radius must be positive");
  } else if (auto* c = std::get_if<Circle>(&p)) {
    if (c->radius_sq <= 0) throw ShapeError("circle radius must be positive");
  } else if (auto* s = std::get_if<Segment>(&p)) {
    if (s->a == s->b) throw ShapeError("segment endpoints must differ");
  }
}

}  // namespace

Node Node::geometric(const Rational& r) {
  if (r == 0 || abs_q(r) >= 1) throw ShapeError("geometric ratio must satisfy 0 < |r| < 1");
  return Node(false, r);
}

Rational Node::value(Index n) const {
  if (harmonic_) return Rational(1, n);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), ratio_.get_num_mpz_t(), n);
  mpz_pow_ui(den.get_mpz_t(), ratio_.get_den_mpz_t(), n);
  Rational v(num, den);
  v.canonicalize();
  return v;
}

std::optional<Index> Node::index_of(const GaussianRational& s, Index start) const {
  if (!s.is_real() || s.is_zero()) return std::nullopt;
  const Rational& x = s.re();
  if (harmonic_) {
    if (x <= 0 || x.get_num() != 1) return std::nullopt;
    Index n = to_index(x.get_den());
    return n >= start ? std::optional<Index>(n) : std::nullopt;
  }
  // |r|^n = p^n / q^n in lowest terms, so the denominator fixes n
  const Integer q = ratio_.get_den();
  Integer den = q;
  Index n = 1;
  while (den < x.get_den()) {
    den *= q;
    ++n;
  }
  if (den == x.get_den() && value(n) == x) return n >= start ? std::optional<Index>(n) : std::nullopt;
  return std::nullopt;
}

Index Node::last_index_at_least(const Rational& eps) const {
  if (eps <= 0) throw Unsupported("nonpositive search radius");
  if (harmonic_) {
    Rational inv = 1 / eps;
    Integer fl = inv.get_num() / inv.get_den();
    if (fl > Integer(static_cast<unsigned long>(kSearchCap) * 8)) throw Unsupported("index search bound too large");
    return to_index(fl);
  }
  const Rational r = abs_q(ratio_);
  Rational x = r;
  Index n = 0;
  while (x >= eps) {
    ++n;
    x *= r;
    check_cap(n);
  }
  return n;
}

Bivariate::Bivariate(Terms terms) {
  for (auto& [k, c] : terms)
    if (!c.is_zero()) terms_.emplace(k, std::move(c));
}

Bivariate Bivariate::constant(const GaussianRational& c) { return Bivariate(Terms{{{0, 0}, c}}); }

int Bivariate::degree_s() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, static_cast<int>(k.first));
  return d;
}

int Bivariate::degree_t() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, static_cast<int>(k.second));
  return d;
}

GaussianRational Bivariate::coefficient(unsigned j, unsigned k) const {
  auto it = terms_.find({j, k});
  return it == terms_.end() ? GaussianRational(0) : it->second;
}

GaussianRational Bivariate::operator()(const GaussianRational& s, const GaussianRational& t) const {
  GaussianRational v;
  for (const auto& [k, c] : terms_) v += c * exact::pow(s, k.first) * exact::pow(t, k.second);
  return v;
}

ExactPolynomial Bivariate::at_s(const GaussianRational& s) const {
  ExactPolynomial p;
  for (const auto& [k, c] : terms_) p += ExactPolynomial::monomial(k.second, c * exact::pow(s, k.first));
  return p;
}

ExactPolynomial Bivariate::at_t(const GaussianRational& t) const {
  ExactPolynomial p;
  for (const auto& [k, c] : terms_) p += ExactPolynomial::monomial(k.first, c * exact::pow(t, k.second));
  return p;
}

ExactPolynomial Bivariate::t_coefficient(unsigned k) const {
  ExactPolynomial p;
  for (const auto& [e, c] : terms_)
    if (e.second == k) p += ExactPolynomial::monomial(e.first, c);
  return p;
}

ExactPolynomial Bivariate::s_coefficient(unsigned j) const {
  ExactPolynomial p;
  for (const auto& [e, c] : terms_)
    if (e.first == j) p += ExactPolynomial::monomial(e.second, c);
  return p;
}

Bivariate Bivariate::substitute_into(const ExactPolynomial& f) const {
  Bivariate r;
  for (int k = f.degree(); k >= 0; --k) r = r * *this + constant(f.coefficient(k));
  return r;
}

Bivariate& Bivariate::operator+=(const Bivariate& o) {
  for (const auto& [k, c] : o.terms_) {
    GaussianRational v = coefficient(k.first, k.second) + c;
    if (v.is_zero())
      terms_.erase(k);
    else
      terms_[k] = v;
  }
  return *this;
}

Bivariate& Bivariate::operator*=(const Bivariate& o) {
  Terms out;
  for (const auto& [a, x] : terms_)
    for (const auto& [b, y] : o.terms_) out[{a.first + b.first, a.second + b.second}] += x * y;
  *this = Bivariate(std::move(out));
  return *this;
}

GaussianRational Tail::term(Index n) const { return rule(gq(node.value(n))); }

std::vector<Index> Tail::indices_with_value(const GaussianRational& z) const {
  std::vector<Index> out;
  for (const auto& root : exact::gaussian_roots(rule - ExactPolynomial(z))) {
    if (root.is_zero()) continue;
    if (auto n = node.index_of(root, start); n && !excluded.count(*n)) out.push_back(*n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Tail::contains(const GaussianRational& z) const { return z == limit() || !indices_with_value(z).empty(); }

GaussianRational TailFamily::value(Index m, Index n) const { return rule(gq(node_m.value(m)), gq(node_n.value(n))); }

std::optional<Tail> TailFamily::inner_limits() const {
  ExactPolynomial a = rule.at_t(0);
  if (a.degree() < 1) return std::nullopt;
  return Tail{node_m, a, start_m, {}};
}

std::optional<Tail> TailFamily::cross_limits() const {
  ExactPolynomial b = rule.at_s(0);
  if (b.degree() < 1) return std::nullopt;
  return Tail{node_n, b, start_n, {}};
}

bool TailFamily::contains(const GaussianRational& z) const {
  if (z == limit()) return true;
  for (const auto& side : {inner_limits(), cross_limits()})
    if (side && side->contains(z)) return true;
  // Off the limit only finitely many rows and columns can reach z:
  // |rule(s, t) - rule(0, 0)| < C eps once |s|, |t| < eps.
  Rational c = 0;
  for (const auto& [k, v] : rule.terms())
    if (k.first + k.second > 0) c += v.abs_bound();
  const Rational eps = Rational((z - limit()).abs_lower() / c);
  const Index m0 = node_m.last_index_at_least(eps), n0 = node_n.last_index_at_least(eps);
  check_cap(m0);
  check_cap(n0);
  auto hits = [&](const ExactPolynomial& q, const Node& node, Index start) {
    if (q.is_zero()) return true;
    if (q.degree() < 1) return false;
    for (const auto& root : exact::gaussian_roots(q))
      if (node.index_of(root, start)) return true;
    return false;
  };
  for (Index m = start_m; m <= m0; ++m)
    if (hits(rule.at_s(gq(node_m.value(m))) - ExactPolynomial(z), node_n, start_n)) return true;
  for (Index n = start_n; n <= n0; ++n)
    if (hits(rule.at_t(gq(node_n.value(n))) - ExactPolynomial(z), node_m, start_m)) return true;
  return false;
}

bool primitive_contains(const Primitive& p, const GaussianRational& z) {
  if (auto* f = std::get_if<FinitePoints>(&p)) return std::binary_search(f->points.begin(), f->points.end(), z);
  if (auto* t = std::get_if<Tail>(&p)) return t->contains(z);
  if (auto* fam = std::get_if<TailFamily>(&p)) return fam->contains(z);
  if (auto* d = std::get_if<Disk>(&p)) return (z - d->center).norm() <= d->radius_sq;
  if (auto* c = std::get_if<Circle>(&p)) return (z - c->center).norm() == c->radius_sq;
  return in_segment(std::get<Segment>(p), z);
}

SpectralSet::SpectralSet(std::vector<Primitive> primitives) {
  std::set<GaussianRational> pts;
  std::vector<Primitive> rest;
  for (auto& p : primitives) {
    validate(p);
    if (auto* f = std::get_if<FinitePoints>(&p)) {
      pts.insert(f->points.begin(), f->points.end());
    } else if (std::find(rest.begin(), rest.end(), p) == rest.end()) {
      rest.push_back(std::move(p));
    }
  }
  FinitePoints kept;
  for (const auto& z : pts) {
    bool covered = false;
    for (const auto& q : rest) {
      try {
        covered = primitive_contains(q, z);
      } catch (const Unsupported&) {
        covered = false;
      }
      if (covered) break;
    }
    if (!covered) kept.points.push_back(z);
  }
  if (!kept.points.empty()) primitives_.emplace_back(std::move(kept));
  for (auto& q : rest) primitives_.push_back(std::move(q));
}

SpectralSet SpectralSet::points(std::vector<GaussianRational> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) return SpectralSet();
  return SpectralSet({FinitePoints{std::move(pts)}});
}

bool SpectralSet::contains(const GaussianRational& z) const {
  for (const auto& p : primitives_)
    if (primitive_contains(p, z)) return true;
  return false;
}

SpectralSet SpectralSet::united(const SpectralSet& o) const {
  std::vector<Primitive> all = primitives_;
  all.insert(all.end(), o.primitives_.begin(), o.primitives_.end());
  return SpectralSet(std::move(all));
}

const char* to_string(Tri t) {
  switch (t) {
    case Tri::False:
      return "false";
    case Tri::True:
      return "true";
    default:
      return "unknown";
  }
}

Tri subset(const SpectralSet& a, const SpectralSet& b) {
  Tri result = Tri::True;
  for (const auto& p : a.primitives()) {
    Tri r;
    try {
      r = primitive_subset(p, b);
    } catch (const Unsupported&) {
      r = Tri::Unknown;
    }
    if (r == Tri::False) return Tri::False;
    if (r == Tri::Unknown) result = Tri::Unknown;
  }
  return result;
}

Tri equals(const SpectralSet& a, const SpectralSet& b) {
  Tri x = subset(a, b);
  if (x == Tri::False) return Tri::False;
  Tri y = subset(b, a);
  if (y == Tri::False) return Tri::False;
  return x == Tri::True && y == Tri::True ? Tri::True : Tri::Unknown;
}

SpectralSet family_accumulation(const TailFamily& f, bool with_multiplicity) {
#ifdef BFRED_MUTATE_FAMILY_ACC
  (void)with_multiplicity;
  return SpectralSet::points({f.limit()});
#else
  std::vector<Primitive> out{FinitePoints{{f.limit()}}};
  if (auto a = f.inner_limits()) {
    if (!with_multiplicity) a->excluded = constant_rows(f);
    out.emplace_back(std::move(*a));
  }
  if (auto b = f.cross_limits()) {
    if (!with_multiplicity) b->excluded = constant_columns(f);
    out.emplace_back(std::move(*b));
  }
  return SpectralSet(std::move(out));
#endif
}

SpectralSet acc(const SpectralSet& s) {
  std::vector<Primitive> out;
  for (const auto& p : s.primitives()) {
    if (std::holds_alternative<FinitePoints>(p)) continue;
    if (auto* t = std::get_if<Tail>(&p)) {
      out.emplace_back(FinitePoints{{t->limit()}});
    } else if (auto* f = std::get_if<TailFamily>(&p)) {
      const SpectralSet fa = family_accumulation(*f, false);
      for (const auto& q : fa.primitives()) out.push_back(q);
    } else {
      out.push_back(p);
    }
  }
  return SpectralSet(std::move(out));
}

IsolatedPoints iso(const SpectralSet& s) {
  const SpectralSet a = acc(s);
  IsolatedPoints out;
  std::set<GaussianRational> pts;
  for (const auto& p : s.primitives()) {
    if (auto* f = std::get_if<FinitePoints>(&p)) {
      for (const auto& z : f->points)
        if (!a.contains(z)) pts.insert(z);
    } else if (auto* t = std::get_if<Tail>(&p)) {
      IndexSet covered;
      for (const auto& q : a.primitives()) {
        auto r = indices_in(*t, q);
        if (!r) throw Unsupported("isolated terms of a tail cannot be separated from the derived set");
        covered = unite(covered, *r);
      }
      if (covered.cofinite) {
        for (Index n : covered.list)
          if (t->has_index(n)) pts.insert(t->term(n));
      } else {
        Tail terms = *t;
        terms.excluded.insert(covered.list.begin(), covered.list.end());
        out.tails.push_back(std::move(terms));
      }
    } else if (auto* fam = std::get_if<TailFamily>(&p)) {
      out.families.push_back(*fam);
    }
  }
  out.points.assign(pts.begin(), pts.end());
  return out;
}

SpectralSet poly_map(const ExactPolynomial& f, const SpectralSet& s) {
  if (f.degree() < 1) throw ShapeError("poly_map needs a nonconstant polynomial");
  std::vector<Primitive> out;
  for (const auto& p : s.primitives()) {
    if (auto* pts = std::get_if<FinitePoints>(&p)) {
      FinitePoints img;
      for (const auto& z : pts->points) img.points.push_back(f(z));
      out.emplace_back(std::move(img));
    } else if (auto* t = std::get_if<Tail>(&p)) {
      out.emplace_back(Tail{t->node, f.compose(t->rule), t->start, t->excluded});
    } else if (auto* fam = std::get_if<TailFamily>(&p)) {
      out.emplace_back(TailFamily{fam->node_m, fam->node_n, fam->rule.substitute_into(f), fam->start_m, fam->start_n});
    } else {
      if (f.degree() != 1) throw Unsupported("only affine maps are supported on disks, circles and segments");
      const GaussianRational alpha = f.coefficient(1);
      if (auto* d = std::get_if<Disk>(&p))
        out.emplace_back(Disk{f(d->center), alpha.norm() * d->radius_sq});
      else if (auto* c = std::get_if<Circle>(&p))
        out.emplace_back(Circle{f(c->center), alpha.norm() * c->radius_sq});
      else {
        const auto& seg = std::get<Segment>(p);
        out.emplace_back(Segment{f(seg.a), f(seg.b)});
      }
    }
  }
  // images of points may coincide; FinitePoints must stay sorted and distinct
  for (auto& p : out)
    if (auto* pts = std::get_if<FinitePoints>(&p)) {
      std::sort(pts->points.begin(), pts->points.end());
      pts->points.erase(std::unique(pts->points.begin(), pts->points.end()), pts->points.end());
    }
  return SpectralSet(std::move(out));
}

bool is_countable(const SpectralSet& s) {
  return std::none_of(s.primitives().begin(), s.primitives().end(), [](const Primitive& p) {
    return std::holds_alternative<Disk>(p) || std::holds_alternative<Circle>(p) || std::holds_alternative<Segment>(p);
  });
}

bool is_empty(const SpectralSet& s) { return s.empty(); }

SpectralElement SpectralElement::make(SpectralSet sigma, std::optional<std::vector<GaussianRational>> poles) {
  if (poles) {
    const SpectralSet a = acc(sigma);
    for (const auto& z : *poles)
      if (!sigma.contains(z) || a.contains(z))
        throw VerificationError("pole " + z.to_string() + " is not an isolated spectral point");
    std::sort(poles->begin(), poles->end());
    poles->erase(std::unique(poles->begin(), poles->end()), poles->end());
  }
  return {std::move(sigma), std::move(poles)};
}

SpectralSet sigma_D(const SpectralElement& e) {
  SpectralSet a = acc(e.sigma);
  if (!e.poles) return a;
  const auto& poles = *e.poles;
  auto is_pole = [&](const GaussianRational& z) { return std::binary_search(poles.begin(), poles.end(), z); };
  std::vector<Primitive> out = a.primitives();
  for (const auto& p : e.sigma.primitives()) {
    if (auto* f = std::get_if<FinitePoints>(&p)) {
      FinitePoints kept;
      for (const auto& z : f->points)
        if (!is_pole(z)) kept.points.push_back(z);
      out.emplace_back(std::move(kept));
    } else if (auto* t = std::get_if<Tail>(&p)) {
      Tail rest = *t;
      for (const auto& z : poles)
        for (Index n : t->indices_with_value(z)) rest.excluded.insert(n);
      out.emplace_back(std::move(rest));
    } else if (auto* fam = std::get_if<TailFamily>(&p)) {
      for (const auto& z : poles)
        if (fam->contains(z)) throw Unsupported("poles inside a tail family are not representable");
      out.push_back(p);
    } else {
      out.push_back(p);
    }
  }
  return SpectralSet(std::move(out));
}

SpectralSet sigma_KD(const SpectralElement& e) { return acc(e.sigma); }

SpectralElement affine_image(const ExactPolynomial& f, const SpectralElement& e) {
  if (f.degree() != 1) throw Unsupported("affine_image needs a polynomial of degree 1");
  std::optional<std::vector<GaussianRational>> poles;
  if (e.poles) {
    poles.emplace();
    for (const auto& z : *e.poles) poles->push_back(f(z));
  }
  return SpectralElement::make(poly_map(f, e.sigma), std::move(poles));
}

}  // namespace bfred::spectral
