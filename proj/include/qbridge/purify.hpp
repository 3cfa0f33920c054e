// purify.hpp
// Purification hook: a protocol maps two copies of a noisy pair to one better
// pair with some success probability. The reference protocol is the
// Werner-twirled two-copy recurrence on Bell weights.

#pragma once

#include "qbridge/entanglement.hpp"

#include <memory>

namespace qbridge {

struct PurificationStep {
  TwoQubitState output;
  double success_probability = 1.0;  // cumulative over rounds_used
  int rounds_used = 0;
  bool twirled = false;    // input had to be projected onto Bell-diagonal form
  bool target_met = true;  // false when purify_until ran out of rounds
};

/// Raised when the largest Bell weight is <= 1/2; the recurrence cannot improve such a state.
class NotPurifiable : public std::runtime_error {
 public:
  explicit NotPurifiable(double fidelity);
  double fidelity() const { return fidelity_; }

 private:
  double fidelity_;
};

/// Bell-diagonal projection: local rotations diagonalize the correlation
/// dyadic, local Bloch terms are dropped. Returns the signed diagonal.
Vec3 twirled_dyadic(const TwoQubitState& s);
bool is_bell_diagonal(const TwoQubitState& s, double tol = 1e-8);

class PurificationProtocol {
 public:
  virtual ~PurificationProtocol() = default;
  virtual std::string_view name() const = 0;
  /// One round on two copies of `s`.
  virtual PurificationStep round(const TwoQubitState& s) const = 0;
};

class RecurrenceProtocol final : public PurificationProtocol {
 public:
  std::string_view name() const override { return "recurrence"; }
  PurificationStep round(const TwoQubitState& s) const override;

  /// F' for fidelity F, and the round's success probability.
  static double next_fidelity(double f);
  static double success_probability(double f);
};

PurificationStep purify_round(const TwoQubitState& s);

/// Rounds until telp(output) > target_telp or max_rounds are spent.
PurificationStep purify_until(const TwoQubitState& s, double target_telp, int max_rounds,
                              const PurificationProtocol& protocol = RecurrenceProtocol{});

}  // namespace qbridge
