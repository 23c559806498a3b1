#include "cvhnn/activations.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cvhnn {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double magnitude(Complex z) { return std::hypot(z.real(), z.imag()); }

std::optional<double> phase(Complex z) {
  if (z.real() == 0.0 && z.imag() == 0.0) return std::nullopt;
  double theta = std::atan2(z.imag(), z.real());
  if (theta < 0.0) theta += kTwoPi;
  // A tiny negative angle can round up to exactly 2π; it belongs to sector 0
  // either way.
  if (theta >= kTwoPi) theta = 0.0;
  return theta;
}

double sign_real(double x) { return x >= 0.0 ? 1.0 : -1.0; }

double step(double x) { return x >= 0.0 ? 1.0 : 0.0; }

int ceil_qr(double x, int Q, double R) {
  if (x < 0.0) return 0;
  const double estimate = std::floor(x / R) + 1.0;
  int q = estimate >= Q ? Q : static_cast<int>(estimate);
  // x / R can round across a level edge; settle against the edges themselves.
  while (q < Q && x >= static_cast<double>(q) * R) ++q;
  while (q > 1 && x < static_cast<double>(q - 1) * R) --q;
  return q;
}

int ceil_qr_superposed(double x, int Q, double R) {
  int total = 0;
  for (int q = 1; q <= Q; ++q) {
    total += static_cast<int>(step(x - static_cast<double>(q - 1) * R));
  }
  return total;
}

double sector_boundary(int l, int K) {
  return static_cast<double>(2 * l - 1) * kPi / static_cast<double>(K);
}

Complex unit_root(int l, int K) {
  l %= K;
  if (l < 0) l += K;
  if ((4 * l) % K == 0) {
    switch ((4 * l) / K) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, kTwoPi * static_cast<double>(l) / static_cast<double>(K));
}

std::optional<int> csign_sector(Complex z, int K, double boundary_epsilon) {
  const auto theta = phase(z);
  if (!theta) return std::nullopt;
  for (int l = 1; l <= K; ++l) {
    if (std::abs(*theta - sector_boundary(l, K)) <= boundary_epsilon) return std::nullopt;
  }
  // Number of boundaries strictly below theta; sector K wraps to 0.
  const double estimate = std::floor((*theta * K / kPi + 1.0) / 2.0);
  int count = estimate < 0 ? 0 : (estimate > K ? K : static_cast<int>(estimate));
  while (count < K && sector_boundary(count + 1, K) < *theta) ++count;
  while (count > 0 && sector_boundary(count, K) > *theta) --count;
  return count % K;
}

std::optional<Complex> csign(Complex z, int K, double boundary_epsilon) {
  const auto sector = csign_sector(z, K, boundary_epsilon);
  if (!sector) return std::nullopt;
  return unit_root(*sector, K);
}

Complex split_sign(Complex z) { return {sign_real(z.real()), sign_real(z.imag())}; }

Complex coceil(Complex z, int Q, double R) {
  return {static_cast<double>(ceil_qr(z.real(), Q, R)),
          static_cast<double>(ceil_qr(z.imag(), Q, R))};
}

std::optional<Complex> cosign(Complex z, int Q, double R, int K, double boundary_epsilon) {
  const auto sector = csign_sector(z, K, boundary_epsilon);
  if (!sector) return std::nullopt;
  return static_cast<double>(ceil_qr(magnitude(z), Q, R)) * unit_root(*sector, K);
}

std::string_view to_string(ActivationKind kind) {
  switch (kind) {
    case ActivationKind::CSign: return "csign";
    case ActivationKind::SplitSign: return "split-sign";
    case ActivationKind::CoCeil: return "coceil";
    case ActivationKind::CoSign: return "cosign";
  }
  return "unknown";
}

ActivationKind parse_activation_kind(std::string_view name) {
  if (name == "csign") return ActivationKind::CSign;
  if (name == "split-sign") return ActivationKind::SplitSign;
  if (name == "coceil") return ActivationKind::CoCeil;
  if (name == "cosign") return ActivationKind::CoSign;
  throw std::invalid_argument("unknown activation kind '" + std::string(name) + "'");
}

ActivationSpec::ActivationSpec(ActivationKind kind, int K, int Q, double R,
                               double boundary_epsilon)
    : kind_(kind), K_(K), Q_(Q), R_(R), boundary_epsilon_(boundary_epsilon) {
  if (K < 1) throw std::invalid_argument("resolution factor K must be >= 1");
  if (Q < 1) throw std::invalid_argument("magnitude levels Q must be >= 1");
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw std::invalid_argument("magnitude quantum R must be a positive finite number");
  }
  if (!(boundary_epsilon >= 0.0) || !std::isfinite(boundary_epsilon)) {
    throw std::invalid_argument("boundary_epsilon must be a non-negative finite number");
  }
}

ActivationSpec ActivationSpec::csign(int K, double boundary_epsilon) {
  return {ActivationKind::CSign, K, 1, 1.0, boundary_epsilon};
}

ActivationSpec ActivationSpec::split_sign() { return {ActivationKind::SplitSign, 1, 1, 1.0}; }

ActivationSpec ActivationSpec::coceil(int Q, double R) {
  return {ActivationKind::CoCeil, 1, Q, R};
}

ActivationSpec ActivationSpec::cosign(int Q, double R, int K, double boundary_epsilon) {
  return {ActivationKind::CoSign, K, Q, R, boundary_epsilon};
}

std::optional<StateCode> quantize(const ActivationSpec& spec, Complex z) {
  switch (spec.kind()) {
    case ActivationKind::CSign: {
      const auto sector = csign_sector(z, spec.K(), spec.boundary_epsilon());
      if (!sector) return std::nullopt;
      return StateCode{1, *sector};
    }
    case ActivationKind::SplitSign:
      return StateCode{static_cast<int>(sign_real(z.real())),
                       static_cast<int>(sign_real(z.imag()))};
    case ActivationKind::CoCeil:
      return StateCode{ceil_qr(z.real(), spec.Q(), spec.R()),
                       ceil_qr(z.imag(), spec.Q(), spec.R())};
    case ActivationKind::CoSign: {
      const auto sector = csign_sector(z, spec.K(), spec.boundary_epsilon());
      if (!sector) return std::nullopt;
      return StateCode{ceil_qr(magnitude(z), spec.Q(), spec.R()), *sector};
    }
  }
  return std::nullopt;
}

Complex value_of(const ActivationSpec& spec, StateCode code) {
  switch (spec.kind()) {
    case ActivationKind::CSign: return unit_root(code.y, spec.K());
    case ActivationKind::SplitSign:
    case ActivationKind::CoCeil:
      return {static_cast<double>(code.x), static_cast<double>(code.y)};
    case ActivationKind::CoSign:
      return static_cast<double>(code.x) * unit_root(code.y, spec.K());
  }
  return {};
}

std::optional<Complex> activate(const ActivationSpec& spec, Complex z) {
  const auto code = quantize(spec, z);
  if (!code) return std::nullopt;
  return value_of(spec, *code);
}

std::size_t image_size(const ActivationSpec& spec) {
  const auto K = static_cast<std::size_t>(spec.K());
  const auto Q = static_cast<std::size_t>(spec.Q());
  switch (spec.kind()) {
    case ActivationKind::CSign: return K;
    case ActivationKind::SplitSign: return 4;
    case ActivationKind::CoCeil: return (Q + 1) * (Q + 1);
    case ActivationKind::CoSign: return Q * K;
  }
  return 0;
}

std::vector<StateCode> image_set(const ActivationSpec& spec) {
  std::vector<StateCode> out;
  out.reserve(image_size(spec));
  switch (spec.kind()) {
    case ActivationKind::CSign:
      for (int l = 0; l < spec.K(); ++l) out.push_back({1, l});
      break;
    case ActivationKind::SplitSign:
      out = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
      break;
    case ActivationKind::CoCeil:
      for (int x = 0; x <= spec.Q(); ++x)
        for (int y = 0; y <= spec.Q(); ++y) out.push_back({x, y});
      break;
    case ActivationKind::CoSign:
      for (int r = 1; r <= spec.Q(); ++r)
        for (int l = 0; l < spec.K(); ++l) out.push_back({r, l});
      break;
  }
  return out;
}

std::vector<Complex> image_values(const ActivationSpec& spec) {
  std::vector<Complex> out;
  for (const auto& code : image_set(spec)) out.push_back(value_of(spec, code));
  return out;
}

bool is_member(const ActivationSpec& spec, StateCode code) {
  switch (spec.kind()) {
    case ActivationKind::CSign: return code.x == 1 && code.y >= 0 && code.y < spec.K();
    case ActivationKind::SplitSign:
      return (code.x == 1 || code.x == -1) && (code.y == 1 || code.y == -1);
    case ActivationKind::CoCeil:
      return code.x >= 0 && code.x <= spec.Q() && code.y >= 0 && code.y <= spec.Q();
    case ActivationKind::CoSign:
      return code.x >= 1 && code.x <= spec.Q() && code.y >= 0 && code.y < spec.K();
  }
  return false;
}

bool is_valid_state(const ActivationSpec& spec, const StateVector& state) {
  for (const auto& code : state) {
    if (!is_member(spec, code)) return false;
  }
  return true;
}

std::size_t index_of(const ActivationSpec& spec, StateCode code) {
  const auto x = static_cast<std::size_t>(code.x);
  const auto y = static_cast<std::size_t>(code.y);
  switch (spec.kind()) {
    case ActivationKind::CSign: return y;
    case ActivationKind::SplitSign:
      return (code.x == 1 ? 0 : 2) + (code.y == 1 ? 0 : 1);
    case ActivationKind::CoCeil: return x * static_cast<std::size_t>(spec.Q() + 1) + y;
    case ActivationKind::CoSign: return (x - 1) * static_cast<std::size_t>(spec.K()) + y;
  }
  return 0;
}

Codebook::Codebook(const ActivationSpec& spec) : spec_(spec), values_(image_values(spec)) {}

}  // namespace cvhnn
