// entanglement.hpp
// Wootters concurrence and the teleportation-usefulness measure
// N = tr sqrt(C^T C) of the correlation dyadic.

#pragma once

#include "qbridge/states.hpp"

namespace qbridge {

struct EntanglementReport {
  double concurrence = 0.0;
  double telp = 0.0;
  bool useful_for_teleportation = false;  // telp > 1
};

/// C = max{0, l1 - l2 - l3 - l4}, l_i the descending square roots of the
/// eigenvalues of rho (sy(x)sy) rho* (sy(x)sy).
double concurrence(const TwoQubitState& s);

/// Closed form for Bell-diagonal states: max{0, 2 w_max - 1} where w_max is
/// the largest Bell weight of the signed dyadic diagonal.
double concurrence_bell_diagonal(double c1, double c2, double c3);

/// tr sqrt(C^T C), i.e. the sum of singular values of the correlation dyadic.
double telp(const TwoQubitState& s);

EntanglementReport report(const TwoQubitState& s);

}  // namespace qbridge
