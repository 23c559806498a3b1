#include "cvhnn/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cvhnn/random.hpp"

namespace cvhnn {

ComplexMatrix random_hermitian(const WeightGenConfig& config) {
  if (config.n == 0) throw std::invalid_argument("weight matrix needs n >= 1");
  const std::size_t n = config.n;
  Rng rng(config.seed);

  std::vector<double> re_source(n * n);
  std::vector<double> im_source(n * n);
  for (auto& x : re_source) x = rng.normal();
  for (auto& x : im_source) x = rng.normal();

  ComplexMatrix w(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double re = (re_source[i * n + j] + re_source[j * n + i]) / 2.0;
      const double im = (im_source[i * n + j] - im_source[j * n + i]) / 2.0;
      // Fill the lower triangle by conjugation so the symmetry is exact.
      w(i, j) = {re, im};
      w(j, i) = {re, -im};
    }
  }
  return w;
}

WeightReport validate(const ComplexMatrix& weights) {
  WeightReport report{true, true, 0.0};
  const std::size_t n = weights.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex d = weights(i, i);
    if (d.imag() != 0.0 || !(d.real() >= 0.0)) report.diagonal_real_nonneg = false;
    for (std::size_t j = i; j < n; ++j) {
      const Complex a = weights(i, j);
      const Complex b = std::conj(weights(j, i));
      if (a != b) {
        report.is_hermitian = false;
        report.max_violation = std::max(report.max_violation, std::abs(a - b));
      }
    }
  }
  return report;
}

ComplexMatrix hebbian(const std::vector<std::vector<Complex>>& patterns) {
  if (patterns.empty()) throw std::invalid_argument("hebbian storage needs at least one pattern");
  const std::size_t n = patterns.front().size();
  if (n == 0) throw std::invalid_argument("patterns must be non-empty");
  for (const auto& p : patterns) {
    if (p.size() != n) throw std::invalid_argument("patterns have mismatched lengths");
  }

  ComplexMatrix w(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Complex sum{0.0, 0.0};
      for (const auto& p : patterns) sum += p[i] * std::conj(p[j]);
      w(i, j) = scale * sum;
      w(j, i) = std::conj(w(i, j));
    }
  }
  return w;
}

ComplexMatrix hebbian(const ActivationSpec& spec, const std::vector<StateVector>& patterns) {
  std::vector<std::vector<Complex>> values;
  values.reserve(patterns.size());
  for (const auto& p : patterns) {
    if (!is_valid_state(spec, p)) {
      throw std::invalid_argument("pattern holds a value outside the activation's image set");
    }
    std::vector<Complex> v;
    v.reserve(p.size());
    for (const auto& code : p) v.push_back(value_of(spec, code));
    values.push_back(std::move(v));
  }
  return hebbian(values);
}

}  // namespace cvhnn
