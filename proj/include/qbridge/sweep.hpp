// sweep.hpp
// Parameter sweeps over bridge families, the audit table comparing the
// printed closed forms with the circuit simulation, and threshold search.
//
// A family bridge joins a Werner pair of parameter x (left) with a fixed
// right pair: WW another Werner(x), WB the singlet, WX a Bell-diagonal state
// with a given correlation triple, WP the pure state pure(q).

#pragma once

#include "qbridge/bridge.hpp"
#include "qbridge/teleport.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qbridge {

enum class BridgeFamily { WW, WB, WX, WP };

std::string_view to_string(BridgeFamily f);  // "ww", "wb", ...
BridgeFamily parse_family(std::string_view name);

struct SweepSpec {
  BridgeFamily family = BridgeFamily::WW;
  double start = 0.0;
  double stop = 1.0;
  int count = 101;
  Vec3 triple = Vec3(-0.9, -0.8, -0.7);  // WX right pair, signed correlation diagonal
  std::vector<double> q_values{1.0};     // WP right pairs
  QubitSignal signal = QubitSignal::balanced();

  /// Throws std::invalid_argument.
  void validate() const;
  std::vector<double> grid() const;
};

/// Right-hand input of the family; q is only read for WP.
TwoQubitState family_partner(const SweepSpec& spec, double q);
/// Circuit bridge: Bell projection plus outcome correction.
TwoQubitState family_bridge(const SweepSpec& spec, double x, double q = 1.0);
/// Printed closed form for the same bridge (unit trace).
TwoQubitState family_bridge_closed(const SweepSpec& spec, double x, double q = 1.0);

struct SweepRow {
  BridgeFamily family;
  double x = 0.0;
  std::optional<double> q;
  Vec3 dyadic_diag = Vec3::Zero();
  double concurrence = 0.0;
  double telp = 0.0;
  double fidelity_oracle = 0.0;
  double fidelity_closed = 0.0;
};

/// Grid points are evaluated concurrently; row order is WP q-major, then x.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct AuditRow {
  std::string formula;
  BridgeFamily family;
  std::optional<double> x;
  std::optional<double> q;
  double closed_form_value = 0.0;
  double oracle_value = 0.0;
  double abs_diff() const { return std::abs(closed_form_value - oracle_value); }
};

std::vector<AuditRow> run_discrepancy(const SweepSpec& spec);
std::string audit_csv(const std::vector<AuditRow>& rows);

/// Smallest x in [lo, hi] where the bridge becomes entangled (or, for telp,
/// useful for teleportation), found by bisection to within tol. Throws
/// std::invalid_argument when the predicate does not change sign on [lo, hi].
double concurrence_threshold(const SweepSpec& spec, double q, double lo, double hi, double tol = 1e-10);
double telp_threshold(const SweepSpec& spec, double q, double lo, double hi, double tol = 1e-10);

/// 12 significant digits, as used in every CSV cell.
std::string format_number(double v);

}  // namespace qbridge
