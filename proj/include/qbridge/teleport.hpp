// teleport.hpp
// Teleportation of a pure qubit signal through an arbitrary two-qubit channel.
// The signal sits on qubit 0, the channel on qubits (1, 2); qubits (0, 1) are
// Bell-measured and qubit 2 receives the standard correction
// phi+ -> I, psi+ -> X, phi- -> Z, psi- -> XZ.

#pragma once

#include "qbridge/entanglement.hpp"

#include <cstdint>
#include <optional>

namespace qbridge {

/// Local Pauli pair (sender half, receiver half) applied to the channel before
/// the standard protocol runs. Identity is {0, 0}.
struct LocalFrame {
  int sender = 0;
  int receiver = 0;
  bool operator==(const LocalFrame&) const = default;
};

struct TeleportBranch {
  BellKind outcome = BellKind::PhiPlus;
  double probability = 0.0;
  std::optional<double> fidelity;  // empty for zero-probability outcomes
};

struct TeleportResult {
  std::array<TeleportBranch, 4> per_outcome;
  double mean_fidelity = 0.0;
  std::optional<double> closed_form_fidelity;
  LocalFrame frame;
};

/// Frame maximizing the input-averaged fidelity over the 16 Pauli pairs.
/// Ties resolve to the lowest (sender, receiver) index.
LocalFrame best_frame(const TwoQubitState& channel);

/// Teleport with the auto-selected frame.
TeleportResult teleport(const TwoQubitState& channel, const QubitSignal& u);
/// Teleport with a fixed frame.
TeleportResult teleport(const TwoQubitState& channel, const QubitSignal& u, LocalFrame frame);

/// Exact input average of the mean fidelity (octahedron 2-design).
double design_average_fidelity(const TwoQubitState& channel, LocalFrame frame);

/// Monte Carlo input average over Haar-random pure signals. Samples are split
/// into fixed chunks with independently seeded generators, so the value does
/// not depend on how many threads evaluate it.
double average_fidelity(const TwoQubitState& channel, std::uint64_t seed = 2024, int samples = 10000);

constexpr double kClassicalFidelity = 2.0 / 3.0;

/// Printed fidelity formula for X-shaped bridges (entries rho11, rho22,
/// rho14, rho23). Throws std::invalid_argument if the bridge is not X-shaped.
double fidelity_eq10(const TwoQubitState& bridge, const QubitSignal& u);

/// Printed fidelity formula for XP bridges; alpha^2 and beta^2 are read as
/// |alpha|^2 and |beta|^2. Throws std::invalid_argument on a structural mismatch.
double fidelity_eq11(const TwoQubitState& bridge, const QubitSignal& u);

/// Haar-random pure qubit.
template <typename Rng>
QubitSignal random_signal(Rng& rng);

}  // namespace qbridge

#include <random>

namespace qbridge {

template <typename Rng>
QubitSignal random_signal(Rng& rng) {
  // Uniform point on the Bloch sphere.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double cos_theta = 1.0 - 2.0 * u;
  const double half = std::acos(std::clamp(cos_theta, -1.0, 1.0)) / 2.0;
  const double phi = 2.0 * M_PI * v;
  return {Complex(std::cos(half), 0.0), std::polar(std::sin(half), phi)};
}

}  // namespace qbridge
