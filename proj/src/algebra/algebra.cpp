#include "bfred/algebra/algebra.hpp"

#include <deque>

#include "bfred/error.hpp"

namespace bfred::algebra {

namespace {

Vector flatten(const ExactMatrix& m) { return {m.entries().begin(), m.entries().end()}; }

}  // namespace

// ---------------------------------------------------------------------------
// FiniteAlgebra

FiniteAlgebra::FiniteAlgebra(std::size_t ambient_dim, std::vector<ExactMatrix> basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)), span_(ambient_dim * ambient_dim) {
  if (ambient_dim == 0) throw ShapeError("algebra of 0 x 0 matrices");
  if (basis_.empty()) throw VerificationError("algebra basis is empty");
  for (const auto& b : basis_) {
    if (b.rows() != ambient_dim || b.cols() != ambient_dim)
      throw ShapeError("basis matrix is not " + std::to_string(ambient_dim) + " x " + std::to_string(ambient_dim));
    if (!span_.insert(flatten(b))) throw VerificationError("basis matrices are linearly dependent");
  }
  if (!span_.contains(flatten(ExactMatrix::identity(ambient_dim))))
    throw VerificationError("identity is not in the span of the basis");
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = 0; j < basis_.size(); ++j)
      if (!span_.contains(flatten(basis_[i] * basis_[j])))
        throw VerificationError("span not closed under multiplication (basis " + std::to_string(i) + " * basis " +
                                std::to_string(j) + ")");
}

AlgebraPtr FiniteAlgebra::create(std::size_t ambient_dim, std::vector<ExactMatrix> basis) {
  return AlgebraPtr(new FiniteAlgebra(ambient_dim, std::move(basis)));
}

const std::vector<std::vector<Vector>>& FiniteAlgebra::structure_constants() const {
  std::call_once(constants_once_, [this] {
    constants_.assign(dim(), std::vector<Vector>(dim()));
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) constants_[i][j] = *span_.coordinates(flatten(basis_[i] * basis_[j]));
  });
  return constants_;
}

std::optional<Vector> FiniteAlgebra::coordinates(const ExactMatrix& m) const {
  if (m.rows() != ambient_dim_ || m.cols() != ambient_dim_) return std::nullopt;
  return span_.coordinates(flatten(m));
}

Element FiniteAlgebra::element(const ExactMatrix& m) const {
  auto c = coordinates(m);
  if (!c) throw VerificationError("matrix " + m.to_string() + " is not in the algebra");
  return Element(shared_from_this(), std::move(*c), m);
}

Element FiniteAlgebra::from_coords(Vector coords) const {
  if (coords.size() != dim()) throw ShapeError("coordinate vector length does not match algebra dimension");
  ExactMatrix m = ExactMatrix::zero(ambient_dim_, ambient_dim_);
  for (std::size_t k = 0; k < coords.size(); ++k)
    if (!coords[k].is_zero()) m += basis_[k] * coords[k];
  return Element(shared_from_this(), std::move(coords), std::move(m));
}

Element FiniteAlgebra::basis_element(std::size_t k) const {
  Vector c(dim());
  c.at(k) = 1;
  return from_coords(std::move(c));
}

Element FiniteAlgebra::one() const { return element(ExactMatrix::identity(ambient_dim_)); }
Element FiniteAlgebra::zero() const { return from_coords(Vector(dim())); }

bool FiniteAlgebra::is_commutative() const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j)
      if (basis_[i] * basis_[j] != basis_[j] * basis_[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Element

Element::Element(AlgebraPtr algebra, Vector coords, ExactMatrix matrix)
    : algebra_(std::move(algebra)), coords_(std::move(coords)), matrix_(std::move(matrix)) {
  if (coords_.size() != algebra_->dim()) throw ShapeError("coordinate vector length does not match algebra dimension");
}

void Element::check_same_algebra(const Element& o) const {
  if (algebra_ != o.algebra_) throw ShapeError("elements belong to different algebras");
}

bool Element::is_idempotent() const { return *this * *this == *this; }

bool Element::commutes_with(const Element& o) const { return matrix_ * o.matrix_ == o.matrix_ * matrix_; }

Element Element::pow(unsigned n) const {
  Element result = algebra_->one();
  Element base = *this;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Element& Element::operator+=(const Element& o) {
  check_same_algebra(o);
  for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] += o.coords_[k];
  matrix_ += o.matrix_;
  return *this;
}

Element& Element::operator-=(const Element& o) {
  check_same_algebra(o);
  for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] -= o.coords_[k];
  matrix_ -= o.matrix_;
  return *this;
}

Element& Element::operator*=(const GaussianRational& s) {
  for (auto& c : coords_) c *= s;
  matrix_ *= s;
  return *this;
}

Element operator*(const Element& a, const Element& b) {
  a.check_same_algebra(b);
  return a.algebra_->element(a.matrix_ * b.matrix_);
}

Element Element::operator-() const {
  Element out = *this;
  out *= GaussianRational(-1);
  return out;
}

Element Element::shifted(const GaussianRational& s) const { return *this + algebra_->one() * s; }

// ---------------------------------------------------------------------------
// Ideal

Ideal::Ideal(AlgebraPtr algebra, std::vector<Vector> basis)
    : algebra_(std::move(algebra)), span_(algebra_->dim()) {
  for (auto& v : basis) {
    if (v.size() != algebra_->dim()) throw ShapeError("ideal vector length does not match algebra dimension");
    if (span_.insert(v)) basis_.push_back(std::move(v));
  }
  for (const auto& x : elements())
    for (std::size_t k = 0; k < algebra_->dim(); ++k) {
      Element e = algebra_->basis_element(k);
      if (!span_.contains((e * x).coords()) || !span_.contains((x * e).coords()))
        throw VerificationError("subspace is not a two-sided ideal");
    }
}

std::vector<Element> Ideal::elements() const {
  std::vector<Element> out;
  for (const auto& v : basis_) out.push_back(algebra_->from_coords(v));
  return out;
}

bool Ideal::contains(const Element& a) const {
  if (a.algebra() != algebra_) throw ShapeError("element of a different algebra");
  return span_.contains(a.coords());
}

std::optional<unsigned> Ideal::nilpotency_index() const {
  if (basis_.empty()) return 1;
  std::vector<Element> gens = elements();
  std::vector<Element> power = gens;
  for (unsigned m = 2; m <= dim() + 1; ++m) {
    exact::IncrementalSpan next_span(algebra_->dim());
    std::vector<Element> next;
    for (const auto& x : power)
      for (const auto& y : gens) {
        Element xy = x * y;
        if (next_span.insert(xy.coords())) next.push_back(std::move(xy));
      }
    if (next.empty()) return m;
    if (next.size() == power.size()) return std::nullopt;  // I^m = I^(m-1) != 0
    power = std::move(next);
  }
  return std::nullopt;
}

bool Ideal::is_nilpotent() const { return nilpotency_index().has_value(); }

// ---------------------------------------------------------------------------
// Homomorphism

Homomorphism::Homomorphism(AlgebraPtr source, AlgebraPtr target, ExactMatrix map_matrix)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map_matrix)) {
  if (map_.rows() != target_->dim() || map_.cols() != source_->dim())
    throw ShapeError("map matrix must be target dim x source dim");
  if (!(*this)(source_->one()).is_one()) throw VerificationError("homomorphism is not unital");
  std::vector<Element> images;
  for (std::size_t k = 0; k < source_->dim(); ++k) images.push_back((*this)(source_->basis_element(k)));
  const auto& c = source_->structure_constants();
  for (std::size_t i = 0; i < source_->dim(); ++i)
    for (std::size_t j = 0; j < source_->dim(); ++j) {
      Element lhs = (*this)(source_->from_coords(c[i][j]));
      if (lhs != images[i] * images[j])
        throw VerificationError("map is not multiplicative on basis pair (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
    }
  kernel_ = std::make_shared<const Ideal>(source_, exact::kernel_basis(map_));
  surjective_ = exact::rank(map_) == target_->dim();
  kernel_nilpotent_ = kernel_->is_nilpotent();
}

Element Homomorphism::operator()(const Element& a) const {
  if (a.algebra() != source_) throw ShapeError("element is not in the source algebra");
  Vector out(target_->dim());
  for (std::size_t r = 0; r < out.size(); ++r)
    for (std::size_t k = 0; k < a.coords().size(); ++k)
      if (!a.coords()[k].is_zero() && !map_(r, k).is_zero()) out[r] += map_(r, k) * a.coords()[k];
  return target_->from_coords(std::move(out));
}

std::optional<Element> Homomorphism::preimage(const Element& b) const {
  if (b.algebra() != target_) throw ShapeError("element is not in the target algebra");
  auto sol = exact::solve_linear(map_, ExactMatrix::column(b.coords()));
  if (!sol) return std::nullopt;
  return source_->from_coords(sol->particular.column_values(0));
}

// ---------------------------------------------------------------------------

AlgebraPtr build_algebra(std::size_t n, const std::vector<ExactMatrix>& generators, std::size_t cap) {
  if (cap == 0) cap = n * n;
  for (const auto& g : generators)
    if (g.rows() != n || g.cols() != n) throw ShapeError("generator is not " + std::to_string(n) + " x " + std::to_string(n));
  exact::IncrementalSpan span(n * n);
  std::vector<ExactMatrix> basis{ExactMatrix::identity(n)};
  span.insert(flatten(basis[0]));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (const auto& g : generators) {
      ExactMatrix w = basis[i] * g;
      if (span.insert(flatten(w))) {
        if (basis.size() >= cap)
          throw ClosureCapExceeded("algebra closure exceeds dimension cap " + std::to_string(cap));
        basis.push_back(std::move(w));
      }
    }
  return FiniteAlgebra::create(n, std::move(basis));
}

std::optional<Element> invert_in_algebra(const Element& a) {
  auto inv = exact::inverse(a.matrix());
  if (!inv) return std::nullopt;
  auto coords = a.algebra()->coordinates(*inv);
  if (!coords) throw DefectError("matrix inverse left the algebra");
  Element out(a.algebra(), std::move(*coords), std::move(*inv));
  if (!(out * a).is_one() || !(a * out).is_one()) throw DefectError("inverse check failed");
  return out;
}

// ---------------------------------------------------------------------------
// Quotient

namespace {

struct KernelReducer {
  exact::EchelonForm form;
  std::vector<std::size_t> complement;

  Vector reduce(Vector v) const {
    for (std::size_t k = 0; k < form.pivot_cols.size(); ++k) {
      GaussianRational f = v[form.pivot_cols[k]];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (!form.rref(k, j).is_zero()) v[j] -= f * form.rref(k, j);
    }
    Vector out;
    for (auto c : complement) out.push_back(v[c]);
    return out;
  }
};

}  // namespace

Element Quotient::section(const Element& x) const {
  if (x.algebra() != algebra) throw ShapeError("element is not in the quotient algebra");
  Vector c(projection.source()->dim());
  for (std::size_t j = 0; j < complement.size(); ++j) c[complement[j]] = x.coords()[j];
  return projection.source()->from_coords(std::move(c));
}

Quotient quotient(const Homomorphism& hom) {
  const AlgebraPtr& a = hom.source();
  const std::size_t d = a->dim();
  KernelReducer red{[&] {
                      if (hom.kernel().dim() == 0) return exact::EchelonForm{ExactMatrix(1, d), {}};
                      ExactMatrix rows(hom.kernel().dim(), d);
                      for (std::size_t k = 0; k < hom.kernel().dim(); ++k)
                        for (std::size_t j = 0; j < d; ++j) rows(k, j) = hom.kernel().basis()[k][j];
                      return exact::row_reduce(rows);
                    }(),
                    {}};
  std::vector<bool> pivot(d, false);
  for (auto p : red.form.pivot_cols) pivot[p] = true;
  for (std::size_t j = 0; j < d; ++j)
    if (!pivot[j]) red.complement.push_back(j);
  const std::size_t q = red.complement.size();
  const auto& c = a->structure_constants();
  std::vector<ExactMatrix> basis;
  for (std::size_t j = 0; j < q; ++j) {
    ExactMatrix left(q, q);
    for (std::size_t l = 0; l < q; ++l) {
      Vector col = red.reduce(c[red.complement[j]][red.complement[l]]);
      for (std::size_t r = 0; r < q; ++r) left(r, l) = col[r];
    }
    basis.push_back(std::move(left));
  }
  AlgebraPtr qa = FiniteAlgebra::create(q, std::move(basis));
  ExactMatrix proj(q, d);
  for (std::size_t k = 0; k < d; ++k) {
    Vector e(d);
    e[k] = 1;
    Vector col = red.reduce(std::move(e));
    for (std::size_t r = 0; r < q; ++r) proj(r, k) = col[r];
  }
  return Quotient{qa, Homomorphism(a, qa, std::move(proj)), red.complement};
}

// ---------------------------------------------------------------------------

LiftResult lift_idempotent(const Homomorphism& hom, const Element& q, std::optional<Element> start) {
  if (q.algebra() != hom.target()) throw ShapeError("idempotent is not in the target algebra");
  if (!q.is_idempotent()) throw VerificationError("element to lift is not idempotent");
  Element p = start ? *start : [&] {
    auto pre = hom.preimage(q);
    if (!pre) throw VerificationError("idempotent is not in the range of the homomorphism");
    return *pre;
  }();
  if (hom(p) != q) throw VerificationError("starting point is not a preimage of the idempotent");
  const unsigned limit = static_cast<unsigned>(hom.source()->ambient_dim());
  unsigned steps = 0;
  while (true) {
    Element p2 = p * p;
    if (p2 == p) break;
    if (steps == limit)
      throw KernelNotNilpotent("idempotent lifting did not terminate within " + std::to_string(limit) + " steps");
    Element p3 = p2 * p;
    p = p2 * GaussianRational(3) - p3 * GaussianRational(2);
    ++steps;
  }
  if (hom(p) != q) throw DefectError("lifted idempotent does not map to q");
  return {std::move(p), steps};
}

std::string describe(const Element& a) { return a.matrix().to_string(); }

}  // namespace bfred::algebra
