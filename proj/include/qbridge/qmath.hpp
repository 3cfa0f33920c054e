// qmath.hpp
// Small dense complex kernel for 1-, 2- and 3-qubit operators (dims 2, 4, 8).
//
// Qubit ordering: qubit 0 is the most significant bit of a computational
// basis index, so |q0 q1 q2> has index 4*q0 + 2*q1 + q2.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbridge {

template <typename Scalar, int Dim>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Dim, Dim>;

/// Runtime-sized result of a partial trace; never larger than 8x8.
template <typename Scalar>
using CMatrixX = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic, 0, 8, 8>;

using Mat2 = CMatrix<double, 2>;
using Mat4 = CMatrix<double, 4>;
using Mat8 = CMatrix<double, 8>;
using Complex = std::complex<double>;

constexpr double kHermitianTol = 1e-10;
constexpr double kClampTol = 1e-10;
constexpr double kNegativeEigenError = 1e-8;

/// Thrown when a matrix that should describe a physical state does not.
class PhysicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar, int Dim>
struct Spectrum {
  Eigen::Matrix<Scalar, Dim, 1> eigenvalues;  // descending
  CMatrix<Scalar, Dim> eigenvectors;          // columns match eigenvalues
};

/// sigma_0 = identity, sigma_1..3 = X, Y, Z.
template <typename Scalar = double>
CMatrix<Scalar, 2> pauli(int k) {
  using C = std::complex<Scalar>;
  CMatrix<Scalar, 2> m;
  switch (k) {
    case 0: m << C(1), C(0), C(0), C(1); break;
    case 1: m << C(0), C(1), C(1), C(0); break;
    case 2: m << C(0), C(0, -1), C(0, 1), C(0); break;
    case 3: m << C(1), C(0), C(0), C(-1); break;
    default: throw std::out_of_range("pauli index must be in 0..3, got " + std::to_string(k));
  }
  return m;
}

/// Kronecker product; the left factor acts on the more significant qubits.
template <typename DerivedA, typename DerivedB>
auto tensor(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  constexpr int RowsA = DerivedA::RowsAtCompileTime;
  constexpr int RowsB = DerivedB::RowsAtCompileTime;
  static_assert(RowsA != Eigen::Dynamic && RowsB != Eigen::Dynamic, "tensor expects fixed-size operands");
  static_assert(RowsA * RowsB <= 8, "tensor result exceeds the supported 8x8 dimension");
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, RowsA * RowsB, RowsA * RowsB> out;
  for (int i = 0; i < RowsA; ++i)
    for (int j = 0; j < RowsA; ++j)
      out.template block<RowsB, RowsB>(i * RowsB, j * RowsB) = a(i, j) * b;
  return out;
}

/// Largest entrywise modulus, the norm every tolerance here is stated in.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
  return a.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, double tol = kHermitianTol) {
  return max_abs(a - a.adjoint()) <= tol;
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  return a.allFinite();
}

/// Reduced operator on the qubits listed in `keep` (ascending order is
/// enforced; the kept qubits retain their relative significance).
template <typename Derived>
CMatrixX<typename Derived::RealScalar> partial_trace(const Eigen::MatrixBase<Derived>& a,
                                                     std::span<const int> keep) {
  using Real = typename Derived::RealScalar;
  const int dim = static_cast<int>(a.rows());
  int qubits = 0;
  if (dim == 4) qubits = 2;
  else if (dim == 8) qubits = 3;
  else throw std::invalid_argument("partial_trace expects a 4x4 or 8x8 operator");
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");

  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
    throw std::invalid_argument("partial_trace: duplicate qubit index");
  for (int q : kept)
    if (q < 0 || q >= qubits) throw std::invalid_argument("partial_trace: qubit index out of range");

  std::vector<int> traced;
  for (int q = 0; q < qubits; ++q)
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);

  const int nk = static_cast<int>(kept.size());
  const int nt = static_cast<int>(traced.size());
  auto bit_of = [qubits](int q) { return qubits - 1 - q; };

  // Compose a full basis index from a kept-subsystem index and a traced index.
  auto compose = [&](int ki, int ti) {
    int idx = 0;
    for (int s = 0; s < nk; ++s)
      if ((ki >> (nk - 1 - s)) & 1) idx |= 1 << bit_of(kept[s]);
    for (int s = 0; s < nt; ++s)
      if ((ti >> (nt - 1 - s)) & 1) idx |= 1 << bit_of(traced[s]);
    return idx;
  };

  const int out_dim = 1 << nk;
  CMatrixX<Real> out = CMatrixX<Real>::Zero(out_dim, out_dim);
  for (int r = 0; r < out_dim; ++r)
    for (int c = 0; c < out_dim; ++c)
      for (int t = 0; t < (1 << nt); ++t) out(r, c) += a(compose(r, t), compose(c, t));
  return out;
}

template <typename Derived>
CMatrixX<typename Derived::RealScalar> partial_trace(const Eigen::MatrixBase<Derived>& a,
                                                     std::initializer_list<int> keep) {
  return partial_trace(a, std::span<const int>(keep.begin(), keep.size()));
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues in descending order.
template <typename Derived>
auto eig_hermitian(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  constexpr int Dim = Derived::RowsAtCompileTime;
  static_assert(Dim != Eigen::Dynamic, "eig_hermitian expects a fixed-size matrix");
  if (!is_hermitian(a)) throw std::invalid_argument("eig_hermitian: input is not Hermitian");

  const CMatrix<Real, Dim> h = (a + a.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<CMatrix<Real, Dim>> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver did not converge");

  // Eigen returns ascending order.
  Spectrum<Real, Dim> s;
  for (int i = 0; i < Dim; ++i) {
    s.eigenvalues(i) = solver.eigenvalues()(Dim - 1 - i);
    s.eigenvectors.col(i) = solver.eigenvectors().col(Dim - 1 - i);
  }
  return s;
}

/// Principal square root of a positive semidefinite matrix. Eigenvalues in
/// [-1e-8, 0) are round-off and clamped; anything more negative is an error.
template <typename Derived>
auto sqrt_psd(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  constexpr int Dim = Derived::RowsAtCompileTime;
  const auto s = eig_hermitian(a);
  Eigen::Matrix<Real, Dim, 1> roots;
  for (int i = 0; i < Dim; ++i) {
    const Real v = s.eigenvalues(i);
    if (v < -kNegativeEigenError)
      throw PhysicsError("sqrt_psd: eigenvalue " + std::to_string(v) + " is significantly negative");
    roots(i) = std::sqrt(std::max(v, Real(0)));
  }
  CMatrix<Real, Dim> out = s.eigenvectors * roots.template cast<std::complex<Real>>().asDiagonal() *
                           s.eigenvectors.adjoint();
  return out;
}

template <typename Derived>
auto trace(const Eigen::MatrixBase<Derived>& a) {
  return a.trace();
}

}  // namespace qbridge
