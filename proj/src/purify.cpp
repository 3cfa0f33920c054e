#include "qbridge/purify.hpp"

namespace qbridge {

namespace {

// Correlation diagonals of phi+, phi-, psi+, psi- (kBellKinds order).
const std::array<Vec3, 4>& bell_dyadics() {
  static const std::array<Vec3, 4> d{Vec3(1, -1, 1), Vec3(-1, 1, 1), Vec3(1, 1, -1), Vec3(-1, -1, -1)};
  return d;
}

}  // namespace

NotPurifiable::NotPurifiable(double fidelity)
    : std::runtime_error("state is not purifiable by the recurrence protocol (largest Bell weight " +
                         std::to_string(fidelity) + " <= 1/2)"),
      fidelity_(fidelity) {}

bool is_bell_diagonal(const TwoQubitState& s, double tol) {
  const PauliForm f = to_pauli(s);
  Mat3 off = f.c;
  off.diagonal().setZero();
  return f.a.cwiseAbs().maxCoeff() <= tol && f.b.cwiseAbs().maxCoeff() <= tol && off.cwiseAbs().maxCoeff() <= tol;
}

Vec3 twirled_dyadic(const TwoQubitState& s) {
  const Mat3 c = to_pauli(s).c;
  Mat3 off = c;
  off.diagonal().setZero();
  if (off.cwiseAbs().maxCoeff() <= 1e-8) return c.diagonal();

  // Signed SVD with proper rotations on both sides.
  Eigen::JacobiSVD<Mat3> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Vec3 d = svd.singularValues();
  if (svd.matrixU().determinant() < 0) d(2) = -d(2);
  if (svd.matrixV().determinant() < 0) d(2) = -d(2);
  return d;
}

double RecurrenceProtocol::success_probability(double f) {
  const double r = (1.0 - f) / 3.0;
  return f * f + 2.0 * f * (1.0 - f) / 3.0 + 5.0 * r * r;
}

double RecurrenceProtocol::next_fidelity(double f) {
  const double r = (1.0 - f) / 3.0;
  return (f * f + r * r) / success_probability(f);
}

PurificationStep RecurrenceProtocol::round(const TwoQubitState& s) const {
  const bool twirl = !is_bell_diagonal(s);
  const Eigen::Vector4d w = bell_weights(twirled_dyadic(s));
  Eigen::Index dominant = 0;
  const double f = w.maxCoeff(&dominant);
  if (f <= 0.5 + 1e-12) throw NotPurifiable(f);

  const double next = next_fidelity(f);
  // Output stays Werner-like around the dominant Bell state.
  Vec3 d = Vec3::Zero();
  for (std::size_t k = 0; k < 4; ++k)
    d += (static_cast<Eigen::Index>(k) == dominant ? next : (1.0 - next) / 3.0) * bell_dyadics()[k];
  return PurificationStep{bell_diagonal(d), success_probability(f), 1, twirl, true};
}

PurificationStep purify_round(const TwoQubitState& s) { return RecurrenceProtocol{}.round(s); }

PurificationStep purify_until(const TwoQubitState& s, double target_telp, int max_rounds,
                              const PurificationProtocol& protocol) {
  if (max_rounds < 1) throw std::invalid_argument("purify_until: max_rounds must be >= 1");
  PurificationStep acc{s, 1.0, 0, false, telp(s) > target_telp};
  while (!acc.target_met && acc.rounds_used < max_rounds) {
    const PurificationStep step = protocol.round(acc.output);
    acc.output = step.output;
    acc.success_probability *= step.success_probability;
    acc.twirled = acc.twirled || step.twirled;
    ++acc.rounds_used;
    acc.target_met = telp(acc.output) > target_telp;
  }
  return acc;
}

}  // namespace qbridge
