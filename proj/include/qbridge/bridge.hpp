// bridge.hpp
// Entanglement swapping. Two pairs (i,j) and (k,l) are joined by a Bell
// measurement on (j,k); the outer qubits (i,l) are left in a bridge state.
//
// Closed forms take the *signed* diagonal (c11, c22, c33) of each input's
// correlation dyadic. They reproduce the phi+ measurement branch, which is
// also the reference frame the other branches are corrected into.

#pragma once

#include "qbridge/entanglement.hpp"

#include <optional>
#include <span>
#include <vector>

namespace qbridge {

using BellOutcome = BellKind;

constexpr double kZeroProbability = 1e-14;

struct BridgeOutcome {
  std::optional<TwoQubitState> state;  // empty when probability < kZeroProbability
  BellOutcome outcome = BellOutcome::PhiPlus;
  double probability = 0.0;

  bool zero_probability() const { return !state.has_value(); }
};

/// Bell-basis projection of (j,k) for left on (i,j) and right on (k,l).
/// Outcomes are returned in kBellKinds order.
std::array<BridgeOutcome, 4> swap(const TwoQubitState& left, const TwoQubitState& right);

/// Pauli index that maps the given branch back onto the phi+ branch:
/// phi+ -> 0, psi+ -> 1, psi- -> 2, phi- -> 3.
int correction_pauli(BellOutcome m);

enum class CorrectionSite {
  Auto,   // first qubit, falling back to the last when branches disagree there
  First,  // correct qubit i (exact when the left pair is Bell-diagonal)
  Last,   // correct qubit l (exact when the right pair is Bell-diagonal)
};

struct CanonicalBridge {
  TwoQubitState state;
  bool branches_agree = true;
  CorrectionSite site = CorrectionSite::First;
};

constexpr double kBranchAgreementTol = 1e-10;

/// Applies the outcome-conditioned Pauli correction to every branch. When the
/// corrected branches coincide the common state is returned; otherwise the
/// probability-weighted average with branches_agree = false.
CanonicalBridge canonical_bridge(std::span<const BridgeOutcome> outcomes,
                                 CorrectionSite site = CorrectionSite::Auto);

/// swap + canonical_bridge folded left-to-right along a chain of pairs.
CanonicalBridge swap_chain(std::span<const TwoQubitState> links, CorrectionSite site = CorrectionSite::Auto);

/// XX bridge matrix exactly as tabulated (trace 1/4).
Mat4 xx_bridge_raw(const Vec3& left_c, const Vec3& right_c);
/// xx_bridge_raw scaled by 4 to unit trace.
TwoQubitState xx_bridge_closed(const Vec3& left_c, const Vec3& right_c);

/// XP bridge with the sign-corrected 14/23 coherences, trace 1/2 before
/// normalization. `left_c` is the X-state dyadic diagonal, q the pure-state
/// parameter of pure(q).
Mat4 xp_bridge_raw(const Vec3& left_c, double q);
TwoQubitState xp_bridge_closed(const Vec3& left_c, double q);

/// The XP table as printed, including the rho_23 = C2 (A3 + A4) entry and the
/// uncorrected rho_14 sign. Not generally a state; used only for auditing.
Mat4 xp_bridge_printed(const Vec3& left_c, double q);

}  // namespace qbridge
