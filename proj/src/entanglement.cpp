#include "qbridge/entanglement.hpp"

namespace qbridge {

double concurrence(const TwoQubitState& s) {
  // rho = sum_i |v_i><v_i| with v_i = sqrt(mu_i) e_i. The square roots of the
  // eigenvalues of rho (sy(x)sy) rho* (sy(x)sy) are the singular values of
  // tau_ij = v_i^T (sy(x)sy) v_j; tau is quadratic in the small v_i, so this
  // route stays accurate for rank-deficient states.
  const Mat4 flip = tensor(pauli(2), pauli(2));
  const auto spec = eig_hermitian(s.rho());
  Mat4 v;
  for (int i = 0; i < 4; ++i) v.col(i) = std::sqrt(std::max(spec.eigenvalues(i), 0.0)) * spec.eigenvectors.col(i);
  const Mat4 tau = v.transpose() * flip * v;
  const Eigen::Vector4d l = Eigen::JacobiSVD<Mat4>(tau).singularValues();  // descending
  return std::clamp(l(0) - l(1) - l(2) - l(3), 0.0, 1.0);
}

double concurrence_bell_diagonal(double c1, double c2, double c3) {
  const Vec3 d(c1, c2, c3);
  if (!is_physical_dyadic(d)) throw PhysicsError("concurrence_bell_diagonal: non-physical triple");
  return std::clamp(2.0 * bell_weights(d).maxCoeff() - 1.0, 0.0, 1.0);
}

double telp(const TwoQubitState& s) {
  const Mat3 c = to_pauli(s).c;
  // Singular values directly; squaring first loses precision near zero.
  return Eigen::JacobiSVD<Mat3>(c).singularValues().sum();
}

EntanglementReport report(const TwoQubitState& s) {
  EntanglementReport r;
  r.concurrence = concurrence(s);
  r.telp = telp(s);
  r.useful_for_teleportation = r.telp > 1.0;
  return r;
}

}  // namespace qbridge
