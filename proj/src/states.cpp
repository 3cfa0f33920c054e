#include "qbridge/states.hpp"

#include <cstdio>

namespace qbridge {

namespace {

Mat4 sigma_pair(int m, int n) { return tensor(pauli(m), pauli(n)); }

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string_view to_string(BellKind k) {
  switch (k) {
    case BellKind::PhiPlus: return "phi+";
    case BellKind::PhiMinus: return "phi-";
    case BellKind::PsiPlus: return "psi+";
    case BellKind::PsiMinus: return "psi-";
  }
  return "?";
}

BellKind parse_bell_kind(std::string_view name) {
  for (BellKind k : kBellKinds)
    if (name == to_string(k)) return k;
  throw std::invalid_argument("unknown Bell state '" + std::string(name) + "'");
}

Eigen::Vector4cd bell_vector(BellKind k) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (k) {
    case BellKind::PhiPlus: return {h, 0, 0, h};
    case BellKind::PhiMinus: return {h, 0, 0, -h};
    case BellKind::PsiPlus: return {0, h, h, 0};
    case BellKind::PsiMinus: return {0, h, -h, 0};
  }
  throw std::logic_error("bell_vector: bad kind");
}

TwoQubitState::TwoQubitState(const Mat4& rho) : rho_(rho) {
  if (!is_physical(rho)) throw PhysicsError("matrix is not a valid two-qubit density matrix");
  // Hermitian part only; removes round-off asymmetry.
  rho_ = (rho + rho.adjoint()) / 2.0;
}

bool TwoQubitState::is_physical(const Mat4& rho, double tol) {
  if (!rho.allFinite()) return false;
  if (!is_hermitian(rho, tol)) return false;
  if (std::abs(rho.trace() - Complex(1.0)) > tol) return false;
  return eig_hermitian(rho).eigenvalues(3) >= -tol;
}

TwoQubitState TwoQubitState::swapped() const {
  Mat4 p = Mat4::Zero();
  p(0, 0) = p(1, 2) = p(2, 1) = p(3, 3) = 1.0;
  return TwoQubitState(p * rho_ * p);
}

TwoQubitState TwoQubitState::transformed(const Mat2& u, const Mat2& v) const {
  const Mat4 w = tensor(u, v);
  return TwoQubitState(w * rho_ * w.adjoint());
}

QubitSignal::QubitSignal(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
  const double norm = std::norm(alpha) + std::norm(beta);
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kStateTol)
    throw std::invalid_argument("signal amplitudes must satisfy |alpha|^2 + |beta|^2 = 1");
}

QubitSignal QubitSignal::balanced() {
  const double h = 1.0 / std::sqrt(2.0);
  return {h, h};
}

TwoQubitState bell(BellKind k) {
  const Eigen::Vector4cd v = bell_vector(k);
  return TwoQubitState(v * v.adjoint());
}

Mat4 pauli_to_matrix(const PauliForm& f) {
  Mat4 rho = Mat4::Identity();
  for (int m = 1; m <= 3; ++m) {
    rho += f.a(m - 1) * sigma_pair(m, 0) + f.b(m - 1) * sigma_pair(0, m);
    for (int n = 1; n <= 3; ++n) rho += f.c(m - 1, n - 1) * sigma_pair(m, n);
  }
  return rho / 4.0;
}

TwoQubitState from_pauli(const PauliForm& f) { return TwoQubitState(pauli_to_matrix(f)); }

PauliForm to_pauli(const Mat4& rho) {
  PauliForm f;
  for (int m = 1; m <= 3; ++m) {
    f.a(m - 1) = (sigma_pair(m, 0) * rho).trace().real();
    f.b(m - 1) = (sigma_pair(0, m) * rho).trace().real();
    for (int n = 1; n <= 3; ++n) f.c(m - 1, n - 1) = (sigma_pair(m, n) * rho).trace().real();
  }
  return f;
}

PauliForm to_pauli(const TwoQubitState& s) { return to_pauli(s.rho()); }

TwoQubitState pure(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("pure: q must lie in [0, 1]");
  const double p = std::sqrt(1.0 - q * q);
  PauliForm f;
  f.a = Vec3(p, 0, 0);
  f.b = Vec3(-p, 0, 0);
  f.c.diagonal() = Vec3(-1.0, -q, -q);
  return from_pauli(f);
}

Eigen::Vector4d bell_weights(const Vec3& d) {
  return {(1 + d(0) - d(1) + d(2)) / 4, (1 - d(0) + d(1) + d(2)) / 4, (1 + d(0) + d(1) - d(2)) / 4,
          (1 - d(0) - d(1) - d(2)) / 4};
}

bool is_physical_dyadic(const Vec3& d, double tol) {
  return d.allFinite() && bell_weights(d).minCoeff() >= -tol;
}

TwoQubitState bell_diagonal(const Vec3& dyadic_diag) {
  if (!is_physical_dyadic(dyadic_diag))
    throw PhysicsError("correlation triple does not describe a physical Bell-diagonal state");
  PauliForm f;
  f.c.diagonal() = dyadic_diag;
  return from_pauli(f);
}

TwoQubitState x_state(double c11, double c22, double c33) { return bell_diagonal(Vec3(-c11, -c22, -c33)); }

TwoQubitState werner(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("werner: x must lie in [0, 1]");
  return x_state(x, x, x);
}

TwoQubitState separable(const Vec3& a, const Vec3& b) {
  if (a.norm() > 1.0 + 1e-9 || b.norm() > 1.0 + 1e-9)
    throw std::invalid_argument("separable: Bloch vectors must have length <= 1");
  PauliForm f;
  f.a = a;
  f.b = b;
  f.c = a * b.transpose();
  return from_pauli(f);
}

Mat2 signal_density(const QubitSignal& u) {
  const Eigen::Vector2cd k = u.ket();
  return k * k.adjoint();
}

TwoQubitState make_state(const SignalKind& kind) {
  return std::visit(
      [](const auto& s) -> TwoQubitState {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BellSignal>) return bell(s.kind);
        else if constexpr (std::is_same_v<T, WernerSignal>) return werner(s.x);
        else if constexpr (std::is_same_v<T, XSignal>) return x_state(s.c11, s.c22, s.c33);
        else if constexpr (std::is_same_v<T, PureSignal>) return pure(s.q);
        else return separable(s.a, s.b);
      },
      kind);
}

std::string describe(const SignalKind& kind) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BellSignal>) return "bell(" + std::string(to_string(s.kind)) + ")";
        else if constexpr (std::is_same_v<T, WernerSignal>) return "werner(" + fmt_num(s.x) + ")";
        else if constexpr (std::is_same_v<T, XSignal>)
          return "x(" + fmt_num(s.c11) + ";" + fmt_num(s.c22) + ";" + fmt_num(s.c33) + ")";
        else if constexpr (std::is_same_v<T, PureSignal>) return "pure(" + fmt_num(s.q) + ")";
        else
          return "separable(" + fmt_num(s.a(0)) + ";" + fmt_num(s.a(1)) + ";" + fmt_num(s.a(2)) + "|" +
                 fmt_num(s.b(0)) + ";" + fmt_num(s.b(1)) + ";" + fmt_num(s.b(2)) + ")";
      },
      kind);
}

bool is_werner(const SignalKind& kind) { return std::holds_alternative<WernerSignal>(kind); }

bool operator==(const SignalKind& lhs, const SignalKind& rhs) { return describe(lhs) == describe(rhs); }

}  // namespace qbridge
