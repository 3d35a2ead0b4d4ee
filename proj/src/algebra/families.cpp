#include "bfred/algebra/families.hpp"

#include <numeric>

#include "bfred/error.hpp"

namespace bfred::algebra {

namespace {

std::vector<std::size_t> block_index(const std::vector<std::size_t>& blocks) {
  std::vector<std::size_t> idx;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b] == 0) throw ShapeError("empty diagonal block");
    idx.insert(idx.end(), blocks[b], b);
  }
  if (idx.empty()) throw ShapeError("no diagonal blocks");
  return idx;
}

AlgebraPtr units_where(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& keep) {
  std::vector<ExactMatrix> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (keep(i, j)) basis.push_back(ExactMatrix::unit(n, i, j));
  return FiniteAlgebra::create(n, std::move(basis));
}

}  // namespace

AlgebraPtr block_upper(const std::vector<std::size_t>& blocks) {
  auto idx = block_index(blocks);
  return units_where(idx.size(), [&](std::size_t i, std::size_t j) { return idx[i] <= idx[j]; });
}

AlgebraPtr block_diagonal(const std::vector<std::size_t>& blocks) {
  auto idx = block_index(blocks);
  return units_where(idx.size(), [&](std::size_t i, std::size_t j) { return idx[i] == idx[j]; });
}

AlgebraPtr upper_triangular(std::size_t n) { return block_upper(std::vector<std::size_t>(n, 1)); }
AlgebraPtr diagonal_algebra(std::size_t n) { return block_diagonal(std::vector<std::size_t>(n, 1)); }
AlgebraPtr full_matrix(std::size_t n) { return units_where(n, [](std::size_t, std::size_t) { return true; }); }

Homomorphism block_diagonal_part(const std::vector<std::size_t>& blocks) {
  return Homomorphism::from_function(block_upper(blocks), block_diagonal(blocks),
                                     [&](const ExactMatrix& m) { return m.block_diagonal_part(blocks); });
}

Homomorphism diagonal_part(std::size_t n) { return block_diagonal_part(std::vector<std::size_t>(n, 1)); }

Homomorphism random_closed(const std::vector<std::size_t>& blocks, unsigned generators, const IntSource& next) {
  auto idx = block_index(blocks);
  const std::size_t n = idx.size();
  std::vector<ExactMatrix> gens;
  for (unsigned g = 0; g < generators; ++g) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (idx[i] <= idx[j] && next(0, 2) > 0) m(i, j) = GaussianRational(next(-2, 2));
    gens.push_back(std::move(m));
  }
  AlgebraPtr source = build_algebra(n, gens);
  std::vector<ExactMatrix> images;
  for (const auto& g : gens) images.push_back(g.block_diagonal_part(blocks));
  AlgebraPtr target = build_algebra(n, images);
  return Homomorphism::from_function(source, target,
                                     [&](const ExactMatrix& m) { return m.block_diagonal_part(blocks); });
}

}  // namespace bfred::algebra
