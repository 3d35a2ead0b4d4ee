#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bfred/algebra/algebra.hpp"

namespace bfred::algebra {

/// Upper triangular n x n matrices (basis E_ij, i <= j, row-major order).
AlgebraPtr upper_triangular(std::size_t n);
/// Block upper triangular matrices for the given diagonal block sizes.
AlgebraPtr block_upper(const std::vector<std::size_t>& blocks);
AlgebraPtr block_diagonal(const std::vector<std::size_t>& blocks);
AlgebraPtr diagonal_algebra(std::size_t n);
AlgebraPtr full_matrix(std::size_t n);

/// Diagonal part U_n -> D_n. Surjective, kernel = strictly upper part.
Homomorphism diagonal_part(std::size_t n);
/// Block diagonal part of the block upper algebra.
Homomorphism block_diagonal_part(const std::vector<std::size_t>& blocks);

/// Uniform integer source in [lo, hi]; the caller owns the randomness.
using IntSource = std::function<long(long lo, long hi)>;

/// Subalgebra of block_upper(blocks) generated by `generators` random block
/// upper matrices, mapped onto its block diagonal image.
Homomorphism random_closed(const std::vector<std::size_t>& blocks, unsigned generators, const IntSource& next);

}  // namespace bfred::algebra
