#pragma once

#include <cstdint>
#include <vector>

#include "cvhnn/activations.hpp"
#include "cvhnn/matrix.hpp"

namespace cvhnn {

struct WeightGenConfig {
  std::size_t n = 10;
  std::uint64_t seed = 1;
};

/// Random Hermitian weights with zero diagonal. Two N×N standard-normal
/// matrices A (real part source) and B (imaginary part source) are drawn
/// row-major, A first, from the seeded generator; then
///   W_ij = (A_ij + A_ji)/2 + (B_ij - B_ji)/2 i,   W_ii = 0.
/// The result satisfies W_ij == conj(W_ji) exactly.
ComplexMatrix random_hermitian(const WeightGenConfig& config);

struct WeightReport {
  bool is_hermitian = false;          // W_ij == conj(W_ji) for all i, j
  bool diagonal_real_nonneg = false;  // Im W_ii == 0 and Re W_ii >= 0
  double max_violation = 0.0;         // max |W_ij - conj(W_ji)|
};

/// Exact check of the Hermitian and non-negative-diagonal conditions.
WeightReport validate(const ComplexMatrix& weights);

/// Outer-product storage: W_ij = (1/N) Σ_p ξ_i^p conj(ξ_j^p) for i != j,
/// W_ii = 0. Patterns are given as complex values.
/// Throws std::invalid_argument on an empty list or mismatched lengths.
ComplexMatrix hebbian(const std::vector<std::vector<Complex>>& patterns);

/// Same, for patterns drawn from one activation's image set. Also throws
/// when a pattern holds a code outside that image set.
ComplexMatrix hebbian(const ActivationSpec& spec, const std::vector<StateVector>& patterns);

}  // namespace cvhnn
