#pragma once

#include <cstddef>
#include <vector>

#include "cvhnn/activations.hpp"

namespace cvhnn {

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const { return n_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  const std::vector<Complex>& data() const { return data_; }

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

}  // namespace cvhnn
