#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace cvhnn {

using Complex = std::complex<double>;

/// |z|
double magnitude(Complex z);

/// Phase of z normalized to [0, 2π) using the two-argument arctangent.
/// Returns nullopt for z = 0, where the phase is undefined.
std::optional<double> phase(Complex z);

/// +1 for x >= 0, -1 otherwise.
double sign_real(double x);

/// 1 for x >= 0, 0 otherwise.
double step(double x);

/// Staircase quantizer onto {0, ..., Q}: 0 below zero, q on [(q-1)R, qR),
/// and Q from (Q-1)R upwards. Intervals are left-closed.
int ceil_qr(double x, int Q, double R);

/// The same staircase written as a sum of Q shifted step functions.
int ceil_qr_superposed(double x, int Q, double R);

/// Angle of the l-th sector boundary, (2l - 1)π/K.
double sector_boundary(int l, int K);

/// K-th root of unity e^{2πl/K i}. Quarter turns are returned exactly.
Complex unit_root(int l, int K);

/// Index l in {0, ..., K-1} of the phase sector containing z, or nullopt when
/// z = 0 or its phase lies within `boundary_epsilon` of a sector boundary.
std::optional<int> csign_sector(Complex z, int K, double boundary_epsilon = 0.0);

std::optional<Complex> csign(Complex z, int K, double boundary_epsilon = 0.0);
Complex split_sign(Complex z);
Complex coceil(Complex z, int Q, double R);
std::optional<Complex> cosign(Complex z, int Q, double R, int K,
                              double boundary_epsilon = 0.0);

enum class ActivationKind { CSign, SplitSign, CoCeil, CoSign };

std::string_view to_string(ActivationKind kind);
/// Accepts "csign", "split-sign", "coceil", "cosign" (case-sensitive).
/// Throws std::invalid_argument on anything else.
ActivationKind parse_activation_kind(std::string_view name);

/// Activation family plus its parameters. K is used by CSign/CoSign, Q and R
/// by CoCeil/CoSign; unused parameters are still validated.
class ActivationSpec {
 public:
  /// Throws std::invalid_argument unless K >= 1, Q >= 1, R > 0 (finite) and
  /// boundary_epsilon >= 0.
  ActivationSpec(ActivationKind kind, int K, int Q, double R,
                 double boundary_epsilon = 0.0);

  static ActivationSpec csign(int K, double boundary_epsilon = 0.0);
  static ActivationSpec split_sign();
  static ActivationSpec coceil(int Q, double R);
  static ActivationSpec cosign(int Q, double R, int K, double boundary_epsilon = 0.0);

  ActivationKind kind() const { return kind_; }
  int K() const { return K_; }
  int Q() const { return Q_; }
  double R() const { return R_; }
  double boundary_epsilon() const { return boundary_epsilon_; }

  bool operator==(const ActivationSpec&) const = default;

 private:
  ActivationKind kind_;
  int K_;
  int Q_;
  double R_;
  double boundary_epsilon_;
};

/// Exact, integer representation of an image-set element:
///   CSign     (1, sector)
///   SplitSign (sign of re, sign of im), each ±1
///   CoCeil    (re level, im level), each in {0, ..., Q}
///   CoSign    (ring, sector), ring in {1, ..., Q}
/// States compare by code, so equality never depends on floating point.
struct StateCode {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const StateCode&, const StateCode&) = default;
};

/// Network state S(t): one image-set element per neuron.
using StateVector = std::vector<StateCode>;

/// True when every entry is a member of the image set of `spec`.
bool is_valid_state(const ActivationSpec& spec, const StateVector& state);

/// Applies the activation. nullopt means the argument lies outside the
/// activation's domain and the neuron keeps its state.
std::optional<StateCode> quantize(const ActivationSpec& spec, Complex z);

/// Complex value of an image-set element.
Complex value_of(const ActivationSpec& spec, StateCode code);

/// Complex result of the activation, or nullopt where it is undefined.
std::optional<Complex> activate(const ActivationSpec& spec, Complex z);

std::size_t image_size(const ActivationSpec& spec);
std::vector<StateCode> image_set(const ActivationSpec& spec);
std::vector<Complex> image_values(const ActivationSpec& spec);
bool is_member(const ActivationSpec& spec, StateCode code);

/// Position of `code` in image_set(spec). Requires is_member(spec, code).
std::size_t index_of(const ActivationSpec& spec, StateCode code);

/// Precomputed complex values of the image set for fast lookup.
class Codebook {
 public:
  explicit Codebook(const ActivationSpec& spec);

  const ActivationSpec& spec() const { return spec_; }
  Complex value(StateCode code) const { return values_[index_of(spec_, code)]; }

 private:
  ActivationSpec spec_;
  std::vector<Complex> values_;
};

}  // namespace cvhnn
