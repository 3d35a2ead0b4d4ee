#include "bfred/exact/linalg.hpp"

#include <utility>

#include "bfred/error.hpp"
#include "bfred/exact/gaussian_integer.hpp"

namespace bfred::exact {

namespace {

using IntRow = std::vector<GaussianInteger>;

struct FractionFreeResult {
  std::vector<IntRow> rows;               // echelon form over Z[i]
  std::vector<std::size_t> pivot_cols;
  std::vector<Integer> row_scale;         // after permutation
  bool odd_permutation = false;
};

// Bareiss elimination with first-nonzero pivoting in column-major scan.
// Entry (i, j) after step r is an (r+1)-minor of the scaled matrix, so every
// division by the previous pivot is exact.
FractionFreeResult fraction_free_echelon(const ExactMatrix& m) {
  FractionFreeResult out;
  const std::size_t rows = m.rows(), cols = m.cols();
  out.rows.resize(rows, IntRow(cols));
  out.row_scale.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<GaussianRational> row(m.entries().begin() + static_cast<std::ptrdiff_t>(r * cols),
                                      m.entries().begin() + static_cast<std::ptrdiff_t>((r + 1) * cols));
    Integer scale = common_denominator(row);
    out.row_scale[r] = scale;
    for (std::size_t c = 0; c < cols; ++c) {
      Rational re = row[c].re() * scale, im = row[c].im() * scale;
      out.rows[r][c] = {re.get_num(), im.get_num()};
    }
  }
  GaussianInteger prev{1, 0};
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && out.rows[p][c].is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(out.rows[p], out.rows[r]);
      std::swap(out.row_scale[p], out.row_scale[r]);
      out.odd_permutation = !out.odd_permutation;
    }
    const GaussianInteger pivot = out.rows[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const GaussianInteger lead = out.rows[i][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        GaussianInteger num = pivot * out.rows[i][j] - lead * out.rows[r][j];
        if (!exact_divide(num, prev, out.rows[i][j]))
          throw DefectError("fraction-free elimination produced an inexact division");
      }
      out.rows[i][c] = {};
    }
    // Rows below r now carry a factor `pivot` relative to the previous step;
    // rows above are untouched, matching the classical Bareiss recurrence.
    prev = pivot;
    out.pivot_cols.push_back(c);
    ++r;
  }
  return out;
}

}  // namespace

EchelonForm row_reduce(const ExactMatrix& m) {
  FractionFreeResult ff = fraction_free_echelon(m);
  const std::size_t rows = m.rows(), cols = m.cols();
  ExactMatrix rref(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) rref(r, c) = ff.rows[r][c].to_rational();
  // Rational normalization: scale pivots to 1, clear above.
  for (std::size_t k = 0; k < ff.pivot_cols.size(); ++k) {
    const std::size_t pc = ff.pivot_cols[k];
    GaussianRational inv = rref(k, pc).inverse();
    for (std::size_t c = pc; c < cols; ++c) rref(k, c) *= inv;
    for (std::size_t i = 0; i < k; ++i) {
      GaussianRational f = rref(i, pc);
      if (f.is_zero()) continue;
      for (std::size_t c = pc; c < cols; ++c) rref(i, c) -= f * rref(k, c);
    }
  }
  return {std::move(rref), std::move(ff.pivot_cols)};
}

std::size_t rank(const ExactMatrix& m) { return fraction_free_echelon(m).pivot_cols.size(); }

GaussianRational determinant(const ExactMatrix& m) {
  if (!m.is_square()) throw ShapeError("determinant of non-square matrix");
  FractionFreeResult ff = fraction_free_echelon(m);
  const std::size_t n = m.rows();
  if (ff.pivot_cols.size() < n) return {};
  GaussianRational det = ff.rows[n - 1][n - 1].to_rational();
  Integer scale = 1;
  for (const auto& s : ff.row_scale) scale *= s;
  det /= GaussianRational(Rational(scale));
  return ff.odd_permutation ? -det : det;
}

std::optional<ExactMatrix> inverse(const ExactMatrix& m) {
  if (!m.is_square()) throw ShapeError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  ExactMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  EchelonForm e = row_reduce(aug);
  if (e.rank() < n || e.pivot_cols[n - 1] != n - 1) return std::nullopt;
  ExactMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.rref(r, n + c);
  return inv;
}

std::vector<Vector> kernel_basis(const ExactMatrix& m) {
  EchelonForm e = row_reduce(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto pc : e.pivot_cols) is_pivot[pc] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols);
    v[f] = 1;
    for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) v[e.pivot_cols[k]] = -e.rref(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<LinearSolution> solve_linear(const ExactMatrix& m, const ExactMatrix& rhs) {
  if (m.rows() != rhs.rows()) throw ShapeError("solve_linear: row counts differ");
  const std::size_t n = m.cols(), k = rhs.cols();
  ExactMatrix aug(m.rows(), n + k);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    for (std::size_t c = 0; c < k; ++c) aug(r, n + c) = rhs(r, c);
  }
  EchelonForm e = row_reduce(aug);
  std::size_t coefficient_rank = 0;
  for (auto pc : e.pivot_cols) {
    if (pc >= n) return std::nullopt;
    ++coefficient_rank;
  }
  ExactMatrix particular(n, k);
  for (std::size_t i = 0; i < coefficient_rank; ++i)
    for (std::size_t c = 0; c < k; ++c) particular(e.pivot_cols[i], c) = e.rref(i, n + c);
  std::vector<bool> is_pivot(n, false);
  for (auto pc : e.pivot_cols) is_pivot[pc] = true;
  std::vector<Vector> kernel;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v(n);
    v[f] = 1;
    for (std::size_t i = 0; i < coefficient_rank; ++i) v[e.pivot_cols[i]] = -e.rref(i, f);
    kernel.push_back(std::move(v));
  }
  return LinearSolution{std::move(particular), std::move(kernel)};
}

void IncrementalSpan::reduce(Vector& v, Vector& combo) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    GaussianRational c = v[pivots_[k]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < length_; ++j)
      if (!rows_[k][j].is_zero()) v[j] -= c * rows_[k][j];
    for (std::size_t j = 0; j < combos_[k].size(); ++j)
      if (!combos_[k][j].is_zero()) combo[j] += c * combos_[k][j];
  }
}

std::optional<Vector> IncrementalSpan::coordinates(const Vector& v) const {
  if (v.size() != length_) throw ShapeError("IncrementalSpan: vector length mismatch");
  Vector residual = v;
  Vector coords(inserted_);
  reduce(residual, coords);
  for (const auto& x : residual)
    if (!x.is_zero()) return std::nullopt;
  return coords;
}

bool IncrementalSpan::insert(const Vector& v) {
  if (v.size() != length_) throw ShapeError("IncrementalSpan: vector length mismatch");
  Vector residual = v;
  Vector used(inserted_);
  reduce(residual, used);
  std::size_t p = 0;
  while (p < length_ && residual[p].is_zero()) ++p;
  if (p == length_) return false;
  // residual = v - sum(used_k * inserted_k)
  Vector combo(inserted_ + 1);
  for (std::size_t j = 0; j < inserted_; ++j) combo[j] = -used[j];
  combo[inserted_] = 1;
  GaussianRational inv = residual[p].inverse();
  for (auto& x : residual) x *= inv;
  for (auto& x : combo) x *= inv;
  for (auto& c : combos_) c.resize(inserted_ + 1);
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    GaussianRational f = rows_[k][p];
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j < length_; ++j) rows_[k][j] -= f * residual[j];
    for (std::size_t j = 0; j <= inserted_; ++j) combos_[k][j] -= f * combo[j];
  }
  rows_.push_back(std::move(residual));
  pivots_.push_back(p);
  combos_.push_back(std::move(combo));
  ++inserted_;
  return true;
}

ExactPolynomial minimal_polynomial(const ExactMatrix& a) {
  if (!a.is_square()) throw ShapeError("minimal polynomial of non-square matrix");
  const std::size_t n = a.rows();
  IncrementalSpan span(n * n);
  ExactMatrix power = ExactMatrix::identity(n);
  for (unsigned k = 0;; ++k) {
    Vector v(power.entries().begin(), power.entries().end());
    if (auto coords = span.coordinates(v)) {
      std::vector<GaussianRational> c(k + 1);
      for (unsigned j = 0; j < k; ++j) c[j] = -(*coords)[j];
      c[k] = 1;
      return ExactPolynomial(std::move(c));
    }
    span.insert(v);
    power = power * a;
  }
}

ExactPolynomial characteristic_polynomial(const ExactMatrix& a) {
  if (!a.is_square()) throw ShapeError("characteristic polynomial of non-square matrix");
  // Faddeev-LeVerrier: M_k = a M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(a M_k)/k.
  const std::size_t n = a.rows();
  std::vector<GaussianRational> c(n + 1);
  c[n] = 1;
  ExactMatrix mk = ExactMatrix::zero(n, n);
  const ExactMatrix id = ExactMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = a * mk + id * c[n - k + 1];
    GaussianRational t = (a * mk).trace();
    c[n - k] = -t / GaussianRational(static_cast<long>(k));
  }
  return ExactPolynomial(std::move(c));
}

}  // namespace bfred::exact
