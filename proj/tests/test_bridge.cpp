#include "oracles.hpp"

#include "qbridge/bridge.hpp"

#include <doctest.h>

using namespace qbridge;

namespace {

Vec3 magnitudes(const TwoQubitState& s) { return to_pauli(s).c.diagonal().cwiseAbs(); }

TwoQubitState random_state(std::mt19937_64& rng, int t) { return TwoQubitState(oracle::random_density(rng, 1 + t % 4)); }

// Random physical Bell-diagonal triple.
Vec3 random_triple(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::Vector4d w(u(rng), u(rng), u(rng), u(rng));
  w /= w.sum();
  return to_pauli(oracle::from_bell_weights(w)).c.diagonal();
}

}  // namespace

TEST_CASE("swap agrees with the gate-level circuit on 500 random pairs") {
  std::mt19937_64 rng(21);
  double worst_state = 0.0, worst_total = 0.0;
  for (int t = 0; t < 500; ++t) {
    const TwoQubitState left = random_state(rng, t), right = random_state(rng, t + 1);
    const auto outcomes = swap(left, right);
    const auto blocks = oracle::swap_circuit(left.rho(), right.rho());
    double total = 0.0;
    for (std::size_t m = 0; m < 4; ++m) {
      CHECK(outcomes[m].outcome == kBellKinds[m]);
      const double p = blocks[m].trace().real();
      CHECK(std::abs(outcomes[m].probability - p) < 1e-12);
      total += outcomes[m].probability;
      if (!outcomes[m].zero_probability())
        worst_state = std::max(worst_state, max_abs(outcomes[m].state->rho() - Mat4(blocks[m] / p)));
    }
    worst_total = std::max(worst_total, std::abs(total - 1.0));
  }
  CHECK(worst_total < 1e-10);
  CHECK(worst_state < 1e-10);
}

TEST_CASE("swapping Bell pairs") {
  const auto outcomes = swap(bell(BellKind::PhiPlus), bell(BellKind::PhiPlus));
  for (const auto& o : outcomes) {
    CHECK(o.probability == doctest::Approx(0.25));
    REQUIRE(o.state);
    CHECK(concurrence(*o.state) == doctest::Approx(1.0));
    // Branch m is the Bell state m itself.
    CHECK(max_abs(o.state->rho() - bell(o.outcome).rho()) < 1e-12);
  }
  const auto c = canonical_bridge(outcomes);
  CHECK(c.branches_agree);
  CHECK(max_abs(c.state.rho() - bell(BellKind::PhiPlus).rho()) < 1e-12);
}

TEST_CASE("zero-probability outcomes are flagged") {
  // |00><00| on (i,j) and (k,l): (j,k) = |00> never yields psi+/-.
  Mat4 zero = Mat4::Zero();
  zero(0, 0) = 1.0;
  const TwoQubitState s(zero);
  const auto outcomes = swap(s, s);
  CHECK(outcomes[2].zero_probability());
  CHECK(outcomes[3].zero_probability());
  CHECK_FALSE(outcomes[0].zero_probability());
  CHECK(outcomes[0].probability + outcomes[1].probability == doctest::Approx(1.0));
  const auto c = canonical_bridge(outcomes);
  CHECK(std::abs(c.state.rho().trace().real() - 1.0) < 1e-12);
}

TEST_CASE("family bridges have the expected correlation magnitudes") {
  for (int i = 0; i <= 20; ++i) {
    const double x = i / 20.0;
    const auto ww = swap(werner(x), werner(x));
    for (const auto& o : ww) {
      REQUIRE(o.state);
      CHECK((magnitudes(*o.state) - Vec3::Constant(x * x)).norm() < 1e-12);
      CHECK(std::abs(o.probability - 0.25) < 1e-12);
    }
    const auto wb = canonical_bridge(swap(werner(x), bell(BellKind::PsiMinus)));
    CHECK(wb.branches_agree);
    CHECK((magnitudes(wb.state) - Vec3::Constant(x)).norm() < 1e-12);
    const auto wx = canonical_bridge(swap(werner(x), x_state(0.9, 0.8, 0.7)));
    CHECK(wx.branches_agree);
    CHECK((magnitudes(wx.state) - Vec3(0.9 * x, 0.8 * x, 0.7 * x)).norm() < 1e-12);
  }
}

TEST_CASE("correction pauli table") {
  CHECK(correction_pauli(BellOutcome::PhiPlus) == 0);
  CHECK(correction_pauli(BellOutcome::PsiPlus) == 1);
  CHECK(correction_pauli(BellOutcome::PsiMinus) == 2);
  CHECK(correction_pauli(BellOutcome::PhiMinus) == 3);
  // The correction maps each Bell state onto phi+ (up to phase) on either qubit.
  for (BellKind k : kBellKinds) {
    const Mat2 p = pauli(correction_pauli(k));
    const Mat4 first = tensor(p, Mat2::Identity().eval()), last = tensor(Mat2::Identity().eval(), p);
    const Eigen::Vector4cd phi = bell_vector(BellKind::PhiPlus);
    CHECK(std::abs(phi.dot(first * bell_vector(k))) == doctest::Approx(1.0));
    CHECK(std::abs(phi.dot(last * bell_vector(k))) == doctest::Approx(1.0));
  }
}

TEST_CASE("canonical bridge picks a site that makes branches agree") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 100; ++t) {
    const TwoQubitState general = random_state(rng, t);
    const TwoQubitState diag = bell_diagonal(random_triple(rng));
    const auto a = canonical_bridge(swap(diag, general));
    CHECK(a.branches_agree);
    CHECK(a.site == CorrectionSite::First);
    const auto b = canonical_bridge(swap(general, diag));
    CHECK(b.branches_agree);
    // The corrected branch is the phi+ branch.
    const auto raw = swap(general, diag);
    CHECK(max_abs(b.state.rho() - raw[0].state->rho()) < 1e-10);
  }
  // Two generic inputs: the average is still a state, flagged as disagreeing.
  const auto outcomes = swap(random_state(rng, 3), random_state(rng, 3));
  const auto c = canonical_bridge(outcomes);
  CHECK_FALSE(c.branches_agree);
  CHECK(TwoQubitState::is_physical(c.state.rho()));
  CHECK_THROWS_AS(canonical_bridge(std::span<const BridgeOutcome>(outcomes.data(), 3)), std::invalid_argument);
}

TEST_CASE("multiplicativity on Bell-diagonal inputs") {
  std::mt19937_64 rng(23);
  double worst = 0.0;
  for (int t = 0; t < 300; ++t) {
    const Vec3 u = random_triple(rng), v = random_triple(rng);
    const auto c = canonical_bridge(swap(bell_diagonal(u), bell_diagonal(v)));
    CHECK(c.branches_agree);
    worst = std::max(worst, (magnitudes(c.state) - u.cwiseProduct(v).cwiseAbs()).norm());
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("swapping never increases entanglement") {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 300; ++t) {
    const TwoQubitState left = random_state(rng, t), right = random_state(rng, t + 2);
    const auto outcomes = swap(left, right);
    double averaged = 0.0;
    for (const auto& o : outcomes)
      if (o.state) averaged += o.probability * concurrence(*o.state);
    const double bound = std::min(concurrence(left), concurrence(right)) + 1e-10;
    CHECK(averaged <= bound);
    CHECK(concurrence(canonical_bridge(outcomes).state) <= averaged + 1e-10);
  }
}

TEST_CASE("XX closed form") {
  // (1,1,1) as printed is the singlet triple up to the overall sign; both
  // give the same matrix.
  const TwoQubitState bb = xx_bridge_closed(Vec3::Constant(-1), Vec3::Constant(-1));
  CHECK(concurrence(bb) == doctest::Approx(1.0));
  CHECK(max_abs(bb.rho() - bell(BellKind::PhiPlus).rho()) < 1e-15);
  for (int i = 0; i <= 20; ++i) {
    const double x = i / 20.0, x2 = x * x;
    const Mat4 raw = xx_bridge_raw(Vec3::Constant(-x), Vec3::Constant(-x));
    CHECK(std::abs(raw.trace().real() - 0.25) < 1e-15);
    const Mat4 m = xx_bridge_closed(Vec3::Constant(-x), Vec3::Constant(-x)).rho();
    CHECK(std::abs(m(0, 0).real() - (1 + x2) / 4) < 1e-15);
    CHECK(std::abs(m(1, 1).real() - (1 - x2) / 4) < 1e-15);
    CHECK(std::abs(m(2, 2).real() - (1 - x2) / 4) < 1e-15);
    CHECK(std::abs(m(3, 3).real() - (1 + x2) / 4) < 1e-15);
    CHECK(std::abs(m(0, 3).real() - x2 / 2) < 1e-15);
    CHECK(std::abs(m(1, 2)) < 1e-15);
  }
  CHECK_THROWS_AS(xx_bridge_closed(Vec3::Constant(1), Vec3::Constant(-1)), PhysicsError);
}

TEST_CASE("closed forms match the circuit on 21-point grids") {
  const Vec3 wx(-0.9, -0.8, -0.7);
  for (int i = 0; i <= 20; ++i) {
    const double x = i / 20.0;
    const Vec3 w = Vec3::Constant(-x);
    const auto check = [](const TwoQubitState& closed, const TwoQubitState& left, const TwoQubitState& right) {
      const auto outcomes = swap(left, right);
      const auto blocks = oracle::swap_circuit(left.rho(), right.rho());
      const Mat4 phi = blocks[0] / blocks[0].trace().real();
      CHECK(max_abs(closed.rho() - phi) < 1e-10);
      CHECK(max_abs(closed.rho() - canonical_bridge(outcomes).state.rho()) < 1e-10);
    };
    check(xx_bridge_closed(w, w), werner(x), werner(x));
    check(xx_bridge_closed(w, Vec3::Constant(-1)), werner(x), bell(BellKind::PsiMinus));
    check(xx_bridge_closed(w, wx), werner(x), bell_diagonal(wx));
    for (double q : {0.0, 0.3, 0.6, 0.9, 1.0}) {
      check(xp_bridge_closed(w, q), werner(x), pure(q));
      CHECK(std::abs(xp_bridge_raw(w, q).trace().real() - 0.5) < 1e-15);
    }
  }
}

TEST_CASE("XP closed form examples") {
  // q = 1 partner is maximally entangled: entangled exactly when x > 1/3.
  CHECK(concurrence(xp_bridge_closed(Vec3::Constant(-0.33), 1.0)) == 0.0);
  CHECK(concurrence(xp_bridge_closed(Vec3::Constant(-0.34), 1.0)) > 0.0);
  // A product partner yields a product bridge.
  CHECK(concurrence(xp_bridge_closed(Vec3::Constant(-0.9), 0.0)) < 1e-7);
  CHECK_THROWS_AS(xp_bridge_closed(Vec3::Constant(-0.5), 1.5), std::invalid_argument);
  // The printed table differs from the circuit in the 14 and 23 entries.
  const Mat4 printed = xp_bridge_printed(Vec3::Constant(-0.8), 0.6);
  const Mat4 fixed = xp_bridge_raw(Vec3::Constant(-0.8), 0.6);
  CHECK(std::abs(printed(0, 3) - fixed(0, 3)) > 1e-3);
  CHECK(std::abs(printed(1, 2) - fixed(1, 2)) > 1e-3);
}

TEST_CASE("chains") {
  const TwoQubitState w = werner(0.9);
  const std::vector<TwoQubitState> links{w, w, w};
  const auto chain = swap_chain(links);
  CHECK(chain.branches_agree);
  CHECK((magnitudes(chain.state) - Vec3::Constant(0.729)).norm() < 1e-12);

  // Fold order does not matter for Bell-diagonal links.
  std::mt19937_64 rng(25);
  for (int t = 0; t < 50; ++t) {
    const TwoQubitState a = bell_diagonal(random_triple(rng)), b = bell_diagonal(random_triple(rng)),
                        c = bell_diagonal(random_triple(rng));
    const std::vector<TwoQubitState> abc{a, b, c};
    const std::vector<TwoQubitState> bc{b, c};
    const TwoQubitState left = swap_chain(abc).state;
    const TwoQubitState right = canonical_bridge(swap(a, swap_chain(bc).state)).state;
    CHECK(max_abs(left.rho() - right.rho()) < 1e-10);
  }
  CHECK(max_abs(swap_chain(std::vector<TwoQubitState>{w}).state.rho() - w.rho()) < 1e-15);
  CHECK_THROWS_AS(swap_chain(std::vector<TwoQubitState>{}), std::invalid_argument);
}
