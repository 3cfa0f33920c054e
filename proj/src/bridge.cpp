#include "qbridge/bridge.hpp"

namespace qbridge {

namespace {

void check_triple(const Vec3& c, const char* what) {
  if (!is_physical_dyadic(c)) throw PhysicsError(std::string(what) + ": non-physical correlation triple");
}

// Coefficients A1..A4 from a dyadic diagonal.
std::array<double, 4> x_coefficients(const Vec3& c) {
  return {(1 + c(2)) / 4, (1 - c(2)) / 4, (c(0) - c(1)) / 4, (c(0) + c(1)) / 4};
}

Mat4 weighted_average(std::span<const BridgeOutcome> outcomes, const std::array<Mat4, 4>& corrected) {
  Mat4 avg = Mat4::Zero();
  double total = 0.0;
  for (std::size_t m = 0; m < outcomes.size(); ++m) {
    if (outcomes[m].zero_probability()) continue;
    avg += outcomes[m].probability * corrected[m];
    total += outcomes[m].probability;
  }
  return avg / total;
}

CanonicalBridge corrected_on(std::span<const BridgeOutcome> outcomes, CorrectionSite site) {
  std::array<Mat4, 4> corrected;
  for (std::size_t m = 0; m < outcomes.size(); ++m) {
    if (outcomes[m].zero_probability()) continue;
    const Mat2 p = pauli(correction_pauli(outcomes[m].outcome));
    const Mat2 id = Mat2::Identity();
    const Mat4 u = site == CorrectionSite::Last ? tensor(id, p) : tensor(p, id);
    corrected[m] = u * outcomes[m].state->rho() * u.adjoint();
  }
  const Mat4 avg = weighted_average(outcomes, corrected);
  bool agree = true;
  for (std::size_t m = 0; m < outcomes.size(); ++m)
    if (!outcomes[m].zero_probability() && max_abs(corrected[m] - avg) > kBranchAgreementTol) agree = false;
  return CanonicalBridge{TwoQubitState(avg), agree, site};
}

}  // namespace

std::array<BridgeOutcome, 4> swap(const TwoQubitState& left, const TwoQubitState& right) {
  const Mat4& l = left.rho();
  const Mat4& r = right.rho();
  std::array<BridgeOutcome, 4> out;
  for (std::size_t m = 0; m < 4; ++m) {
    const Eigen::Vector4cd b = bell_vector(kBellKinds[m]);
    // out(i l, i' l') = sum <b|j k> L(i j, i' j') R(k l, k' l') <j' k'|b>
    Mat4 t = Mat4::Zero();
    for (int i = 0; i < 2; ++i)
      for (int ip = 0; ip < 2; ++ip)
        for (int ll = 0; ll < 2; ++ll)
          for (int lp = 0; lp < 2; ++lp) {
            Complex acc = 0.0;
            for (int j = 0; j < 2; ++j)
              for (int k = 0; k < 2; ++k)
                for (int jp = 0; jp < 2; ++jp)
                  for (int kp = 0; kp < 2; ++kp)
                    acc += std::conj(b(2 * j + k)) * l(2 * i + j, 2 * ip + jp) * r(2 * k + ll, 2 * kp + lp) *
                           b(2 * jp + kp);
            t(2 * i + ll, 2 * ip + lp) = acc;
          }
    const double prob = t.trace().real();
    out[m].outcome = kBellKinds[m];
    out[m].probability = std::max(prob, 0.0);
    if (prob >= kZeroProbability) out[m].state.emplace(t / prob);
  }
  return out;
}

int correction_pauli(BellOutcome m) {
  switch (m) {
    case BellOutcome::PhiPlus: return 0;
    case BellOutcome::PsiPlus: return 1;
    case BellOutcome::PsiMinus: return 2;
    case BellOutcome::PhiMinus: return 3;
  }
  throw std::logic_error("correction_pauli: bad outcome");
}

CanonicalBridge canonical_bridge(std::span<const BridgeOutcome> outcomes, CorrectionSite site) {
  if (outcomes.size() != 4) throw std::invalid_argument("canonical_bridge expects four outcomes");
  if (site != CorrectionSite::Auto) return corrected_on(outcomes, site);
  auto first = corrected_on(outcomes, CorrectionSite::First);
  if (first.branches_agree) return first;
  auto last = corrected_on(outcomes, CorrectionSite::Last);
  return last.branches_agree ? last : first;
}

CanonicalBridge swap_chain(std::span<const TwoQubitState> links, CorrectionSite site) {
  if (links.empty()) throw std::invalid_argument("swap_chain: no links");
  CanonicalBridge acc{links.front(), true, site};
  for (std::size_t i = 1; i < links.size(); ++i) {
    const auto outcomes = swap(acc.state, links[i]);
    const bool agreed = acc.branches_agree;
    acc = canonical_bridge(outcomes, site);
    acc.branches_agree = acc.branches_agree && agreed;
  }
  return acc;
}

Mat4 xx_bridge_raw(const Vec3& left_c, const Vec3& right_c) {
  check_triple(left_c, "xx_bridge");
  check_triple(right_c, "xx_bridge");
  const auto a = x_coefficients(left_c);
  const auto b = x_coefficients(right_c);
  const double r11 = 0.5 * (a[0] * b[0] + a[1] * b[1]);
  const double r14 = 0.5 * (a[2] * b[2] + a[3] * b[3]);
  const double r22 = 0.5 * (a[0] * b[1] + a[1] * b[0]);
  const double r23 = 0.5 * (a[2] * b[3] + a[3] * b[2]);
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(3, 3) = r11;
  m(1, 1) = m(2, 2) = r22;
  m(0, 3) = m(3, 0) = r14;
  m(1, 2) = m(2, 1) = r23;
  return m;
}

TwoQubitState xx_bridge_closed(const Vec3& left_c, const Vec3& right_c) {
  return TwoQubitState(4.0 * xx_bridge_raw(left_c, right_c));
}

namespace {

Mat4 xp_table(const Vec3& left_c, double q, bool printed) {
  check_triple(left_c, "xp_bridge");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("xp_bridge: q must lie in [0, 1]");
  const auto a = x_coefficients(left_c);
  const double p = std::sqrt(1.0 - q * q);
  const double c1 = (1 - q) / 4, c2 = (1 + q) / 4, c3 = p / 4;

  const double r11 = a[0] * c1 + a[1] * c2;
  const double r12 = -(a[0] * c3 + a[1] * c3);
  const double r13 = c3 * (a[2] + a[3]);
  const double r22 = a[0] * c2 + a[1] * c1;
  double r14 = a[2] * c1 + a[3] * c2;
  double r23 = c2 * (a[2] + a[3]);
  if (!printed) {
    r14 = -r14;
    r23 = -(a[2] * c2 + a[3] * c1);
  }

  Mat4 m;
  m << r11, r12, r13, r14,
       r12, r22, r23, r13,
       r13, r23, r22, r12,
       r14, r13, r12, r11;
  return m;
}

}  // namespace

Mat4 xp_bridge_raw(const Vec3& left_c, double q) { return xp_table(left_c, q, false); }

TwoQubitState xp_bridge_closed(const Vec3& left_c, double q) {
  const Mat4 m = xp_bridge_raw(left_c, q);
  return TwoQubitState(m / m.trace().real());
}

Mat4 xp_bridge_printed(const Vec3& left_c, double q) { return xp_table(left_c, q, true); }

}  // namespace qbridge
