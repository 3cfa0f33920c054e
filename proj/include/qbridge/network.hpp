// network.hpp
// The routing protocol: hops of two nodes share Werner pairs (source S2),
// nodes in different hops share randomly drawn pairs (source S1), and signals
// (source S3) are teleported over bridges built by swapping along a path.
//
// A Network is a single-owner state machine; requests mutate link
// inventories and must be applied sequentially.

#pragma once

#include "qbridge/bridge.hpp"
#include "qbridge/purify.hpp"
#include "qbridge/teleport.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qbridge {

struct NodeId {
  int value = 0;
  auto operator<=>(const NodeId&) const = default;
};

struct InventoryEntry {
  SignalKind kind;
  int count = 0;
  bool reversed = false;  // kind describes qubit order (b, a) instead of (a, b)
};

struct Link {
  NodeId a;
  NodeId b;
  std::vector<InventoryEntry> inventory;

  int total() const;
  bool connects(NodeId x, NodeId y) const { return (a == x && b == y) || (a == y && b == x); }
  bool has_werner() const;
};

class Network {
 public:
  void add_node(NodeId n);
  /// Creates the link if absent; returns its index.
  std::size_t add_link(NodeId a, NodeId b);
  /// Adds `count` copies of `kind`, whose first qubit belongs to `a`.
  void deposit(NodeId a, NodeId b, const SignalKind& kind, int count = 1);
  void add_hop(NodeId a, NodeId b);

  bool has_node(NodeId n) const;
  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<std::pair<NodeId, NodeId>>& hops() const { return hops_; }
  const std::vector<Link>& links() const { return links_; }
  std::vector<Link>& links() { return links_; }
  const Link* link_between(NodeId a, NodeId b) const;
  Link* link_between(NodeId a, NodeId b);
  int total_inventory() const;

  std::uint64_t rng_seed = 0;

 private:
  std::vector<NodeId> nodes_;
  std::vector<std::pair<NodeId, NodeId>> hops_;
  std::vector<Link> links_;
};

enum class S1Topology { Chain, AllPairs };

struct DistributionConfig {
  int hops = 2;
  int inventory_per_link = 1;
  S1Topology s1_links = S1Topology::Chain;
  // S1 draw weights per family; normalized at distribution time.
  double weight_bell = 0.0;
  double weight_werner = 1.0;
  double weight_x = 0.0;
  double weight_pure = 0.0;
  double weight_separable = 0.0;
  // Parameters of the S1 families.
  BellKind s1_bell = BellKind::PsiMinus;
  double s1_werner_x = 0.9;
  Vec3 s1_x_triple = Vec3(0.9, 0.8, 0.7);  // x_state parameters
  double s1_pure_q = 0.6;
  Vec3 s1_separable_a = Vec3(0, 0, 1);
  Vec3 s1_separable_b = Vec3(0, 0, 1);
  // S2 Werner parameter for every hop.
  double s2_werner_x = 0.9;
  // S3 signals, referenced by index from requests.
  std::vector<QubitSignal> s3_signals;
};

/// Hop h holds nodes 2h and 2h+1. Deterministic in (config, seed).
Network distribute(const DistributionConfig& config, std::uint64_t seed);

/// Draws one S1 kind; exposed for the frequency test.
SignalKind draw_s1(const DistributionConfig& config, std::uint64_t& state);

bool quantum_neighbors(const Network& net, NodeId a, NodeId b);

enum class RouteObjective {
  ShortestThenConcurrence,  // fewest hops, ties by product of best link concurrences
  Shortest,                 // fewest hops, ties by lowest node ids
};

/// Empty when disconnected.
std::vector<NodeId> find_path(const Network& net, NodeId src, NodeId dst,
                              RouteObjective objective = RouteObjective::ShortestThenConcurrence);

struct Consumption {
  NodeId a;
  NodeId b;
  SignalKind kind;
};

struct RouteReport {
  std::vector<NodeId> path;
  int swaps_performed = 0;
  TwoQubitState bridge;
  EntanglementReport report;
  std::vector<Consumption> consumed;
  bool branches_agree = true;
  std::vector<InventoryEntry> edge_entries;  // selected entry per edge (count 1)
  std::vector<TwoQubitState> edge_states;    // oriented along the path
};

/// Thrown by build_bridge when an edge has nothing left; nothing is consumed.
class InventoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Greedy max-concurrence state per edge, reserved all-or-nothing, then
/// left-folded swaps with canonical correction.
RouteReport build_bridge(Network& net, const std::vector<NodeId>& path);

enum class PurifyStrategy {
  Bridge,  // purify the end-to-end bridge
  Link,    // purify each link state, then rebuild the bridge
};

struct RequestOptions {
  int purify_max_rounds = 3;
  PurifyStrategy strategy = PurifyStrategy::Bridge;
  double target_telp = 1.0;
  RouteObjective objective = RouteObjective::ShortestThenConcurrence;
};

enum class RequestOutcome { Teleported, Rejected, NoRoute };

std::string_view to_string(RequestOutcome o);

struct TeleportRequestReport {
  NodeId src;
  NodeId dst;
  RequestOutcome outcome = RequestOutcome::NoRoute;
  std::vector<NodeId> path;
  int swaps_performed = 0;
  std::optional<EntanglementReport> initial;
  std::optional<EntanglementReport> final_report;
  int purification_rounds = 0;
  double purification_success = 1.0;
  std::optional<TeleportResult> teleport;
  std::optional<TwoQubitState> channel;  // state actually used (or last state when rejected)
  std::vector<Consumption> consumed;
  std::vector<std::string> log;
};

/// src == dst is an invalid request (std::invalid_argument).
TeleportRequestReport request_teleport(Network& net, NodeId src, NodeId dst, const QubitSignal& u,
                                       const RequestOptions& options = {});

}  // namespace qbridge
