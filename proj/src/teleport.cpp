#include "qbridge/teleport.hpp"

#include <future>
#include <numeric>
#include <vector>

namespace qbridge {

namespace {

Mat2 correction(BellKind m) {
  switch (m) {
    case BellKind::PhiPlus: return pauli(0);
    case BellKind::PsiPlus: return pauli(1);
    case BellKind::PhiMinus: return pauli(3);
    case BellKind::PsiMinus: return pauli(1) * pauli(3);
  }
  throw std::logic_error("correction: bad outcome");
}

Mat4 framed(const TwoQubitState& channel, LocalFrame f) {
  const Mat4 u = tensor(pauli(f.sender), pauli(f.receiver));
  return u * channel.rho() * u.adjoint();
}

TeleportResult run_protocol(const Mat4& channel, const QubitSignal& u) {
  const Mat8 joint = tensor(signal_density(u), channel);
  const Eigen::Vector2cd psi = u.ket();
  TeleportResult r;
  for (std::size_t m = 0; m < 4; ++m) {
    const Eigen::Vector4cd b = bell_vector(kBellKinds[m]);
    const Mat8 proj = tensor((b * b.adjoint()).eval(), Mat2::Identity().eval());
    const Mat8 post = proj * joint * proj;
    const Mat2 out = partial_trace(post, {2});
    const double prob = out.trace().real();
    TeleportBranch& br = r.per_outcome[m];
    br.outcome = kBellKinds[m];
    br.probability = std::max(prob, 0.0);
    if (prob < 1e-14) continue;
    const Mat2 c = correction(kBellKinds[m]);
    const Mat2 fixed = c * out * c.adjoint() / prob;
    br.fidelity = std::clamp((psi.adjoint() * fixed * psi)(0, 0).real(), 0.0, 1.0);
    r.mean_fidelity += br.probability * *br.fidelity;
  }
  return r;
}

// Six Bloch-axis states; fidelity is quadratic in the input, so their mean is
// the exact Haar average.
const std::array<QubitSignal, 6>& octahedron() {
  static const std::array<QubitSignal, 6> states = [] {
    const double h = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    return std::array<QubitSignal, 6>{QubitSignal(1.0, 0.0), QubitSignal(0.0, 1.0), QubitSignal(h, h),
                                      QubitSignal(h, -h),    QubitSignal(h, h * i), QubitSignal(h, -h * i)};
  }();
  return states;
}

double design_average(const Mat4& channel) {
  double sum = 0.0;
  for (const auto& s : octahedron()) sum += run_protocol(channel, s).mean_fidelity;
  return sum / 6.0;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool is_x_shaped(const Mat4& m) {
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (r != c && r + c != 3 && std::abs(m(r, c)) > 1e-10) return false;
  return true;
}

}  // namespace

double design_average_fidelity(const TwoQubitState& channel, LocalFrame frame) {
  return design_average(framed(channel, frame));
}

LocalFrame best_frame(const TwoQubitState& channel) {
  LocalFrame best;
  double best_value = -1.0;
  for (int s = 0; s < 4; ++s)
    for (int r = 0; r < 4; ++r) {
      const double v = design_average(framed(channel, {s, r}));
      if (v > best_value + 1e-12) {
        best_value = v;
        best = {s, r};
      }
    }
  return best;
}

TeleportResult teleport(const TwoQubitState& channel, const QubitSignal& u, LocalFrame frame) {
  TeleportResult r = run_protocol(framed(channel, frame), u);
  r.frame = frame;
  return r;
}

TeleportResult teleport(const TwoQubitState& channel, const QubitSignal& u) {
  return teleport(channel, u, best_frame(channel));
}

double average_fidelity(const TwoQubitState& channel, std::uint64_t seed, int samples) {
  if (samples <= 0) throw std::invalid_argument("average_fidelity: samples must be positive");
  const LocalFrame frame = best_frame(channel);
  const Mat4 rho = framed(channel, frame);

  constexpr int kChunk = 1000;
  const int chunks = (samples + kChunk - 1) / kChunk;
  auto run_chunk = [&](int c) {
    std::mt19937_64 rng(splitmix64(seed + static_cast<std::uint64_t>(c)));
    const int n = std::min(kChunk, samples - c * kChunk);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += run_protocol(rho, random_signal(rng)).mean_fidelity;
    return sum;
  };
  std::vector<std::future<double>> parts;
  parts.reserve(chunks);
  for (int c = 0; c < chunks; ++c) parts.push_back(std::async(std::launch::async, run_chunk, c));
  // Chunk sums are combined in index order, independent of scheduling.
  double total = 0.0;
  for (auto& p : parts) total += p.get();
  return total / samples;
}

double fidelity_eq10(const TwoQubitState& bridge, const QubitSignal& u) {
  const Mat4& m = bridge.rho();
  if (!is_x_shaped(m)) throw std::invalid_argument("fidelity_eq10: bridge is not an X state");
  const Complex a = u.alpha(), b = u.beta();
  const Complex r11 = m(0, 0), r22 = m(1, 1), r14 = m(0, 3), r23 = m(1, 2);
  const double aa = std::norm(a), bb = std::norm(b);
  const Complex sym = a * std::conj(b) + std::conj(a) * b;
  const Complex anti = a * std::conj(b) - std::conj(a) * b;
  const Complex f = aa * ((r11 + r22) + sym * (r11 - r22)) +
                    std::conj(a) * b * ((aa - bb) * (r14 + r23) + anti * (r14 - r23)) +
                    a * std::conj(b) * ((aa - bb) * (r14 + r23) - anti * (r14 - r23)) +
                    bb * ((r11 + r22) - sym * (r11 - r22));
  return f.real();
}

double fidelity_eq11(const TwoQubitState& bridge, const QubitSignal& u) {
  const Mat4& m = bridge.rho();
  const double tol = 1e-10;
  if (std::abs(m(0, 0) - m(3, 3)) > tol || std::abs(m(1, 1) - m(2, 2)) > tol || std::abs(m(0, 1) - m(2, 3)) > tol ||
      std::abs(m(0, 2) - m(1, 3)) > tol)
    throw std::invalid_argument("fidelity_eq11: bridge does not have the XP structure");
  const Complex a = u.alpha(), b = u.beta();
  const Complex r11 = m(0, 0), r22 = m(1, 1), r12 = m(0, 1), r14 = m(0, 3), r23 = m(1, 2), r24 = m(1, 3);
  const double aa = std::norm(a), bb = std::norm(b);
  const Complex sym = std::conj(a) * b + std::conj(b) * a;
  const Complex f = aa * (r11 + r22 + 2.0 * (aa - bb) * r24 + sym * (r11 - r22)) +
                    sym * ((aa - bb) * (r23 - r14) - sym * r23 - 2.0 * r12) +
                    bb * (r11 + r22 + 2.0 * (aa - bb) * r24 - sym * (r11 - r22));
  return f.real();
}

}  // namespace qbridge
