// states.hpp
// Two-qubit state families, the Pauli (Bloch + correlation dyadic) view of a
// two-qubit density matrix, and the single-qubit signal to be teleported.

#pragma once

#include "qbridge/qmath.hpp"

#include <array>
#include <string>
#include <string_view>
#include <variant>

namespace qbridge {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

constexpr double kStateTol = 1e-10;

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

constexpr std::array<BellKind, 4> kBellKinds{BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                                             BellKind::PsiMinus};

std::string_view to_string(BellKind k);
BellKind parse_bell_kind(std::string_view name);

/// Normalized Bell ket in the computational basis.
Eigen::Vector4cd bell_vector(BellKind k);

/// A 4x4 density matrix that has been checked to be Hermitian, unit-trace
/// and positive semidefinite (within kStateTol).
class TwoQubitState {
 public:
  /// Validates; throws PhysicsError on a non-physical matrix.
  explicit TwoQubitState(const Mat4& rho);

  const Mat4& rho() const { return rho_; }
  double entry(int row, int col) const { return rho_(row, col).real(); }

  /// Same state with the two qubits exchanged.
  TwoQubitState swapped() const;
  /// (U (x) V) rho (U (x) V)^dagger.
  TwoQubitState transformed(const Mat2& u, const Mat2& v) const;

  static bool is_physical(const Mat4& rho, double tol = kStateTol);

 private:
  Mat4 rho_;
};

/// rho = (1 + a.sigma (x) 1 + 1 (x) b.sigma + sum_mn C_mn sigma_m (x) sigma_n) / 4
struct PauliForm {
  Vec3 a = Vec3::Zero();
  Vec3 b = Vec3::Zero();
  Mat3 c = Mat3::Zero();
};

/// Unknown pure signal alpha|0> + beta|1>.
class QubitSignal {
 public:
  QubitSignal(Complex alpha, Complex beta);

  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }
  Eigen::Vector2cd ket() const { return {alpha_, beta_}; }

  static QubitSignal balanced();

 private:
  Complex alpha_;
  Complex beta_;
};

TwoQubitState bell(BellKind k);

/// Partially entangled pure state with correlation diag(-1, -q, -q) and
/// local Bloch vectors (p,0,0), (-p,0,0), p = sqrt(1 - q^2). Concurrence q.
TwoQubitState pure(double q);

/// X state with correlation dyadic diag(-c11, -c22, -c33) and no local terms.
TwoQubitState x_state(double c11, double c22, double c33);

/// Singlet-like Werner state, x_state(x, x, x).
TwoQubitState werner(double x);

/// Bell-diagonal state built directly from its signed dyadic diagonal.
TwoQubitState bell_diagonal(const Vec3& dyadic_diag);

/// Product state rho_A (x) rho_B from two Bloch vectors.
TwoQubitState separable(const Vec3& a, const Vec3& b);

PauliForm to_pauli(const TwoQubitState& s);
PauliForm to_pauli(const Mat4& rho);
/// Throws PhysicsError when the resulting matrix is not a state.
TwoQubitState from_pauli(const PauliForm& f);
Mat4 pauli_to_matrix(const PauliForm& f);

Mat2 signal_density(const QubitSignal& u);

/// Weights of a Bell-diagonal state on (phi+, phi-, psi+, psi-) given the
/// signed diagonal of its correlation dyadic.
Eigen::Vector4d bell_weights(const Vec3& dyadic_diag);

/// True when every Bell weight of the triple is >= -tol.
bool is_physical_dyadic(const Vec3& dyadic_diag, double tol = kStateTol);

/// Tagged description of a state held in a link inventory.
struct BellSignal { BellKind kind; };
struct WernerSignal { double x; };
struct XSignal { double c11, c22, c33; };
struct PureSignal { double q; };
struct SeparableSignal { Vec3 a, b; };

using SignalKind = std::variant<BellSignal, WernerSignal, XSignal, PureSignal, SeparableSignal>;

TwoQubitState make_state(const SignalKind& kind);
std::string describe(const SignalKind& kind);
bool is_werner(const SignalKind& kind);
bool operator==(const SignalKind& lhs, const SignalKind& rhs);

}  // namespace qbridge
