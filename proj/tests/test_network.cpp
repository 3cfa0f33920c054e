#include "oracles.hpp"

#include "qbridge/network.hpp"
#include "qbridge/report.hpp"

#include <doctest.h>

using namespace qbridge;

namespace {

DistributionConfig werner_everywhere(double x, int hops = 2, int inventory = 1) {
  DistributionConfig c;
  c.hops = hops;
  c.inventory_per_link = inventory;
  c.s2_werner_x = x;
  c.weight_werner = 1.0;
  c.s1_werner_x = x;
  return c;
}

Vec3 magnitudes(const TwoQubitState& s) { return to_pauli(s).c.diagonal().cwiseAbs(); }

}  // namespace

TEST_CASE("two-hop distribution") {
  const Network net = distribute(werner_everywhere(0.9), 7);
  CHECK(net.nodes().size() == 4);
  CHECK(net.hops().size() == 2);
  CHECK(net.links().size() == 3);
  for (const Link& l : net.links()) {
    CHECK(l.total() == 1);
    CHECK(l.has_werner());
  }
  for (const auto& [a, b] : net.hops()) CHECK(quantum_neighbors(net, a, b));
  CHECK(net.link_between(NodeId{1}, NodeId{2}) != nullptr);
  CHECK(net.link_between(NodeId{0}, NodeId{3}) == nullptr);
  CHECK_FALSE(quantum_neighbors(net, NodeId{0}, NodeId{3}));
  CHECK_THROWS_AS(quantum_neighbors(net, NodeId{0}, NodeId{9}), std::invalid_argument);
}

TEST_CASE("every hop link holds a Werner pair whatever S1 draws") {
  DistributionConfig c;
  c.hops = 4;
  c.inventory_per_link = 2;
  c.s1_links = S1Topology::AllPairs;
  c.weight_werner = 0.0;
  c.weight_bell = c.weight_x = c.weight_pure = c.weight_separable = 1.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Network net = distribute(c, seed);
    CHECK(net.links().size() == 4 + 24);
    for (const auto& [a, b] : net.hops()) CHECK(net.link_between(a, b)->has_werner());
  }
}

TEST_CASE("distribution is deterministic in the seed") {
  DistributionConfig c = werner_everywhere(0.9, 5, 3);
  c.weight_bell = c.weight_x = c.weight_pure = c.weight_separable = 1.0;
  c.s1_links = S1Topology::AllPairs;
  CHECK(describe_inventory(distribute(c, 11)) == describe_inventory(distribute(c, 11)));
  CHECK(describe_inventory(distribute(c, 11)) != describe_inventory(distribute(c, 12)));
}

TEST_CASE("distribution rejects empty topologies and bad weights") {
  DistributionConfig c;
  c.hops = 0;
  CHECK_THROWS_AS(distribute(c, 1), std::invalid_argument);
  c.hops = 2;
  c.weight_werner = 0.0;
  CHECK_THROWS_AS(distribute(c, 1), std::invalid_argument);
  c.weight_werner = -1.0;
  std::uint64_t state = 0;
  CHECK_THROWS_AS(draw_s1(c, state), std::invalid_argument);
}

TEST_CASE("S1 draw frequencies within 3 sigma") {
  DistributionConfig c;
  c.weight_werner = 0.0;
  c.weight_bell = c.weight_x = c.weight_pure = c.weight_separable = 0.25;
  std::uint64_t state = 99;
  const int n = 1000;
  std::map<int, int> counts;
  for (int i = 0; i < n; ++i) ++counts[static_cast<int>(draw_s1(c, state).index())];
  CHECK(counts.count(1) == 0);  // Werner has weight zero
  const double sigma = std::sqrt(n * 0.25 * 0.75);
  for (int k : {0, 2, 3, 4}) CHECK(std::abs(counts[k] - n * 0.25) <= 3 * sigma);
}

TEST_CASE("quantum neighbors follow inventory") {
  Network net;
  net.add_hop(NodeId{0}, NodeId{1});
  net.deposit(NodeId{0}, NodeId{1}, WernerSignal{0.9});
  net.deposit(NodeId{1}, NodeId{2}, XSignal{0.9, 0.8, 0.7});
  CHECK(quantum_neighbors(net, NodeId{0}, NodeId{1}));
  CHECK_FALSE(quantum_neighbors(net, NodeId{1}, NodeId{2}));
  const RouteReport r = build_bridge(net, {NodeId{0}, NodeId{1}});
  CHECK(r.swaps_performed == 0);
  CHECK_FALSE(quantum_neighbors(net, NodeId{0}, NodeId{1}));
  CHECK_THROWS_AS(net.add_link(NodeId{3}, NodeId{3}), std::invalid_argument);
}

TEST_CASE("path finding") {
  Network net;
  net.deposit(NodeId{0}, NodeId{1}, WernerSignal{0.5});
  net.deposit(NodeId{1}, NodeId{3}, WernerSignal{0.5});
  net.deposit(NodeId{0}, NodeId{2}, WernerSignal{0.9});
  net.deposit(NodeId{2}, NodeId{3}, WernerSignal{0.9});
  net.deposit(NodeId{3}, NodeId{4}, WernerSignal{0.9});
  net.add_node(NodeId{5});

  CHECK(find_path(net, NodeId{0}, NodeId{1}) == std::vector<NodeId>{{0}, {1}});
  CHECK(find_path(net, NodeId{0}, NodeId{3}) == std::vector<NodeId>{{0}, {2}, {3}});
  CHECK(find_path(net, NodeId{0}, NodeId{3}, RouteObjective::Shortest) == std::vector<NodeId>{{0}, {1}, {3}});
  CHECK(find_path(net, NodeId{0}, NodeId{4}) == std::vector<NodeId>{{0}, {2}, {3}, {4}});
  CHECK(find_path(net, NodeId{0}, NodeId{5}).empty());
  CHECK_THROWS_AS(find_path(net, NodeId{0}, NodeId{0}), std::invalid_argument);

  // Empty links are not routable.
  net.link_between(NodeId{0}, NodeId{2})->inventory.front().count = 0;
  CHECK(find_path(net, NodeId{0}, NodeId{3}) == std::vector<NodeId>{{0}, {1}, {3}});
}

TEST_CASE("bridges along Werner chains") {
  for (int n = 1; n <= 4; ++n)
    for (double x : {0.5, 0.7, 0.8, 0.95}) {
      Network net;
      std::vector<NodeId> path{NodeId{0}};
      for (int e = 0; e < n; ++e) {
        net.deposit(NodeId{e}, NodeId{e + 1}, WernerSignal{x});
        path.push_back(NodeId{e + 1});
      }
      const RouteReport r = build_bridge(net, path);
      CHECK(r.swaps_performed == n - 1);
      CHECK((magnitudes(r.bridge) - Vec3::Constant(std::pow(x, n))).norm() < 1e-12);
      CHECK((r.report.concurrence > 0) == (std::pow(x, n) > 1.0 / 3.0));
      CHECK(net.total_inventory() == 0);
      CHECK(r.consumed.size() == static_cast<std::size_t>(n));
    }
}

TEST_CASE("Werner edge plus Bell edge") {
  Network net;
  net.deposit(NodeId{0}, NodeId{1}, WernerSignal{0.6});
  net.deposit(NodeId{1}, NodeId{2}, BellSignal{BellKind::PsiMinus});
  const RouteReport r = build_bridge(net, {NodeId{0}, NodeId{1}, NodeId{2}});
  CHECK((magnitudes(r.bridge) - Vec3::Constant(0.6)).norm() < 1e-12);
}

TEST_CASE("greedy selection and orientation") {
  Network net;
  net.deposit(NodeId{0}, NodeId{1}, WernerSignal{0.6});
  net.deposit(NodeId{0}, NodeId{1}, BellSignal{BellKind::PsiMinus});
  // Stored with its first qubit at node 2.
  net.deposit(NodeId{2}, NodeId{1}, PureSignal{0.5});
  const RouteReport r = build_bridge(net, {NodeId{0}, NodeId{1}, NodeId{2}});
  CHECK(describe(r.edge_entries[0].kind) == "bell(psi-)");
  CHECK(max_abs(r.edge_states[1].rho() - pure(0.5).swapped().rho()) < 1e-15);
  const std::vector<TwoQubitState> expected{bell(BellKind::PsiMinus), pure(0.5).swapped()};
  CHECK(max_abs(r.bridge.rho() - swap_chain(expected).state.rho()) < 1e-12);
  CHECK(net.link_between(NodeId{0}, NodeId{1})->total() == 1);
}

TEST_CASE("missing inventory consumes nothing") {
  Network net;
  net.deposit(NodeId{0}, NodeId{1}, WernerSignal{0.9});
  net.add_link(NodeId{1}, NodeId{2});
  const int before = net.total_inventory();
  CHECK_THROWS_AS(build_bridge(net, {NodeId{0}, NodeId{1}, NodeId{2}}), InventoryError);
  CHECK(net.total_inventory() == before);
  CHECK_THROWS_AS(build_bridge(net, {NodeId{0}}), std::invalid_argument);
  CHECK_THROWS_AS(build_bridge(net, {NodeId{0}, NodeId{7}}), std::invalid_argument);
}

TEST_CASE("teleport request on the two-hop network") {
  Network net = distribute(werner_everywhere(0.9), 3);
  const QubitSignal u(0.6, Complex(0, 0.8));
  const TeleportRequestReport r = request_teleport(net, NodeId{0}, NodeId{2}, u);
  CHECK(r.outcome == RequestOutcome::Teleported);
  CHECK(r.path == std::vector<NodeId>{{0}, {1}, {2}});
  CHECK(r.swaps_performed == 1);
  REQUIRE(r.teleport);
  // End-to-end equals the unit-level composition.
  const TwoQubitState bridge = canonical_bridge(swap(werner(0.9), werner(0.9))).state;
  CHECK(std::abs(r.teleport->mean_fidelity - teleport(bridge, u).mean_fidelity) < 1e-12);
  CHECK(r.consumed.size() == 2);
  CHECK(net.total_inventory() == 1);

  const auto count = [&](const std::string& needle) {
    return std::count_if(r.log.begin(), r.log.end(),
                         [&](const std::string& l) { return l.find(needle) != std::string::npos; });
  };
  CHECK(count("swap at node") == 1);
  CHECK(count("telp check") == 1);
  CHECK(count("teleported") == 1);

  // Inventory on 0-1 and 1-2 is gone now.
  const TeleportRequestReport again = request_teleport(net, NodeId{0}, NodeId{2}, u);
  CHECK(again.outcome == RequestOutcome::NoRoute);
  CHECK_THROWS_AS(request_teleport(net, NodeId{1}, NodeId{1}, u), std::invalid_argument);
  CHECK_THROWS_AS(request_teleport(net, NodeId{1}, NodeId{8}, u), std::invalid_argument);
}

TEST_CASE("low-quality pairs are rejected") {
  Network net = distribute(werner_everywhere(0.3, 2, 4), 3);
  const int before = net.total_inventory();
  const TeleportRequestReport r = request_teleport(net, NodeId{0}, NodeId{2}, QubitSignal::balanced());
  CHECK(r.outcome == RequestOutcome::Rejected);
  CHECK_FALSE(r.teleport);
  REQUIRE(r.final_report);
  CHECK(r.final_report->telp <= 1.0);
  CHECK(before - net.total_inventory() == static_cast<int>(r.consumed.size()));
  CHECK(r.log.back().find("Rejected") != std::string::npos);
}

TEST_CASE("purification consumes one extra copy per round") {
  // Link strategy: each round purifies every link, then rebuilds the bridge.
  Network net = distribute(werner_everywhere(0.45, 2, 4), 3);
  RequestOptions opt;
  opt.strategy = PurifyStrategy::Link;
  opt.purify_max_rounds = 2;
  const int before = net.total_inventory();
  const TeleportRequestReport r = request_teleport(net, NodeId{0}, NodeId{2}, QubitSignal::balanced(), opt);
  CHECK(r.purification_rounds == 2);
  CHECK(r.outcome == RequestOutcome::Rejected);
  CHECK(r.consumed.size() == 2 + 2 * 2);
  CHECK(before - net.total_inventory() == 6);
  REQUIRE(r.initial);
  REQUIRE(r.final_report);
  CHECK(r.final_report->telp > r.initial->telp);

  // Bridge strategy on a single hop toward a stricter target.
  Network hop = distribute(werner_everywhere(0.5, 1, 6), 3);
  RequestOptions strict;
  strict.target_telp = 2.0;
  strict.purify_max_rounds = 5;
  const TeleportRequestReport s = request_teleport(hop, NodeId{0}, NodeId{1}, QubitSignal::balanced(), strict);
  CHECK(s.outcome == RequestOutcome::Teleported);
  CHECK(s.purification_rounds == 5);
  CHECK(hop.total_inventory() == 0);
  CHECK(s.purification_success < 1.0);

  // Running out of spare copies stops purification.
  Network thin = distribute(werner_everywhere(0.5, 1, 2), 3);
  const TeleportRequestReport t = request_teleport(thin, NodeId{0}, NodeId{1}, QubitSignal::balanced(), strict);
  CHECK(t.purification_rounds == 1);
  CHECK(t.outcome == RequestOutcome::Rejected);
}

TEST_CASE("network runs are reproducible") {
  RunConfig cfg;
  cfg.distribution = werner_everywhere(0.85, 4, 3);
  cfg.distribution.weight_bell = cfg.distribution.weight_pure = cfg.distribution.weight_x = 1.0;
  cfg.seed = 5;
  cfg.requests = {{NodeId{0}, NodeId{7}, -1}, {NodeId{1}, NodeId{4}, -1}, {NodeId{2}, NodeId{3}, -1}};
  const NetworkRun a = run_network(cfg), b = run_network(cfg);
  CHECK(a.requests_csv == b.requests_csv);
  CHECK(a.log == b.log);
  CHECK(a.reports.size() == 3);
  cfg.seed = 6;
  CHECK(run_network(cfg).log != a.log);
}
