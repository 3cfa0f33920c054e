#include "qbridge/network.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <queue>
#include <sstream>

namespace qbridge {

namespace {

std::uint64_t next_u64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double next_unit(std::uint64_t& state) { return static_cast<double>(next_u64(state) >> 11) * 0x1.0p-53; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string path_string(const std::vector<NodeId>& path) {
  std::string s;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) s += "-";
    s += std::to_string(path[i].value);
  }
  return s;
}

// State of one inventory entry with its first qubit at `from`.
TwoQubitState oriented(const Link& link, const InventoryEntry& entry, NodeId from) {
  const TwoQubitState s = make_state(entry.kind);
  const bool first_at_a = !entry.reversed;
  return (link.a == from) == first_at_a ? s : s.swapped();
}

int best_entry(const Link& link) {
  int best = -1;
  double best_c = -1.0;
  for (std::size_t i = 0; i < link.inventory.size(); ++i) {
    if (link.inventory[i].count <= 0) continue;
    const double c = concurrence(make_state(link.inventory[i].kind));
    if (c > best_c + 1e-12) {
      best_c = c;
      best = static_cast<int>(i);
    }
  }
  return best;
}

double best_concurrence(const Link& link) {
  const int i = best_entry(link);
  return i < 0 ? 0.0 : concurrence(make_state(link.inventory[i].kind));
}

InventoryEntry* find_entry(Link& link, const InventoryEntry& like) {
  for (auto& e : link.inventory)
    if (e.count > 0 && e.reversed == like.reversed && e.kind == like.kind) return &e;
  return nullptr;
}

// One extra copy of each edge's selected entry, all-or-nothing.
bool reserve_copies(Network& net, const std::vector<NodeId>& path, const std::vector<InventoryEntry>& picked,
                    std::vector<Consumption>& consumed) {
  std::vector<InventoryEntry*> entries;
  for (std::size_t e = 0; e + 1 < path.size(); ++e) {
    Link* link = net.link_between(path[e], path[e + 1]);
    InventoryEntry* entry = link ? find_entry(*link, picked[e]) : nullptr;
    if (!entry) return false;
    entries.push_back(entry);
  }
  for (std::size_t e = 0; e < entries.size(); ++e) {
    --entries[e]->count;
    consumed.push_back({path[e], path[e + 1], picked[e].kind});
  }
  return true;
}

std::string report_line(const EntanglementReport& r) {
  return "concurrence=" + num(r.concurrence) + " telp=" + num(r.telp) +
         (r.useful_for_teleportation ? " useful" : " not-useful");
}

}  // namespace

int Link::total() const {
  int n = 0;
  for (const auto& e : inventory) n += e.count;
  return n;
}

bool Link::has_werner() const {
  return std::any_of(inventory.begin(), inventory.end(),
                     [](const InventoryEntry& e) { return e.count > 0 && is_werner(e.kind); });
}

void Network::add_node(NodeId n) {
  if (!has_node(n)) nodes_.push_back(n);
}

bool Network::has_node(NodeId n) const { return std::find(nodes_.begin(), nodes_.end(), n) != nodes_.end(); }

std::size_t Network::add_link(NodeId a, NodeId b) {
  if (a == b) throw std::invalid_argument("link endpoints must be distinct");
  add_node(a);
  add_node(b);
  for (std::size_t i = 0; i < links_.size(); ++i)
    if (links_[i].connects(a, b)) return i;
  links_.push_back(Link{a, b, {}});
  return links_.size() - 1;
}

void Network::deposit(NodeId a, NodeId b, const SignalKind& kind, int count) {
  if (count < 0) throw std::invalid_argument("deposit: negative count");
  Link& link = links_[add_link(a, b)];
  const bool reversed = link.a != a;
  for (auto& e : link.inventory)
    if (e.reversed == reversed && e.kind == kind) {
      e.count += count;
      return;
    }
  link.inventory.push_back({kind, count, reversed});
}

void Network::add_hop(NodeId a, NodeId b) {
  add_link(a, b);
  hops_.emplace_back(a, b);
}

const Link* Network::link_between(NodeId a, NodeId b) const {
  for (const auto& l : links_)
    if (l.connects(a, b)) return &l;
  return nullptr;
}

Link* Network::link_between(NodeId a, NodeId b) {
  for (auto& l : links_)
    if (l.connects(a, b)) return &l;
  return nullptr;
}

int Network::total_inventory() const {
  int n = 0;
  for (const auto& l : links_) n += l.total();
  return n;
}

SignalKind draw_s1(const DistributionConfig& c, std::uint64_t& state) {
  const std::array<double, 5> w{c.weight_bell, c.weight_werner, c.weight_x, c.weight_pure, c.weight_separable};
  double total = 0.0;
  for (double v : w) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("S1 weights must be finite and non-negative");
    total += v;
  }
  if (total <= 0.0) throw std::invalid_argument("S1 weights are not normalizable (sum is zero)");
  const double u = next_unit(state) * total;
  double acc = 0.0;
  std::size_t pick = 4;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    if (u < acc) {
      pick = i;
      break;
    }
  }
  // Round-off can leave u == total; fall back to the last family with weight.
  if (pick == 4 && w[4] <= 0.0)
    for (std::size_t i = 4; i-- > 0;)
      if (w[i] > 0.0) {
        pick = i;
        break;
      }
  switch (pick) {
    case 0: return BellSignal{c.s1_bell};
    case 1: return WernerSignal{c.s1_werner_x};
    case 2: return XSignal{c.s1_x_triple(0), c.s1_x_triple(1), c.s1_x_triple(2)};
    case 3: return PureSignal{c.s1_pure_q};
    default: return SeparableSignal{c.s1_separable_a, c.s1_separable_b};
  }
}

Network distribute(const DistributionConfig& config, std::uint64_t seed) {
  if (config.hops < 1) throw std::invalid_argument("distribute: topology needs at least one hop");
  if (config.inventory_per_link < 1) throw std::invalid_argument("distribute: inventory_per_link must be >= 1");
  // Validate parameters up front so a bad config fails before any draw.
  (void)werner(config.s2_werner_x);

  Network net;
  net.rng_seed = seed;
  for (int h = 0; h < config.hops; ++h) {
    const NodeId a{2 * h}, b{2 * h + 1};
    net.add_hop(a, b);
    net.deposit(a, b, WernerSignal{config.s2_werner_x}, config.inventory_per_link);
  }

  std::vector<std::pair<NodeId, NodeId>> s1_pairs;
  if (config.s1_links == S1Topology::Chain) {
    for (int h = 0; h + 1 < config.hops; ++h) s1_pairs.emplace_back(NodeId{2 * h + 1}, NodeId{2 * h + 2});
  } else {
    for (int u = 0; u < 2 * config.hops; ++u)
      for (int v = u + 1; v < 2 * config.hops; ++v)
        if (u / 2 != v / 2) s1_pairs.emplace_back(NodeId{u}, NodeId{v});
  }

  std::uint64_t state = seed;
  for (const auto& [a, b] : s1_pairs)
    for (int k = 0; k < config.inventory_per_link; ++k) {
      const SignalKind kind = draw_s1(config, state);
      (void)make_state(kind);
      net.deposit(a, b, kind, 1);
    }
  return net;
}

bool quantum_neighbors(const Network& net, NodeId a, NodeId b) {
  if (!net.has_node(a) || !net.has_node(b)) throw std::invalid_argument("quantum_neighbors: unknown node");
  const Link* l = net.link_between(a, b);
  return l && l->has_werner();
}

std::vector<NodeId> find_path(const Network& net, NodeId src, NodeId dst, RouteObjective objective) {
  if (!net.has_node(src) || !net.has_node(dst)) throw std::invalid_argument("find_path: unknown node");
  if (src == dst) throw std::invalid_argument("find_path: src and dst must differ");

  std::map<NodeId, std::vector<NodeId>> adj;
  for (const auto& l : net.links())
    if (l.total() > 0) {
      adj[l.a].push_back(l.b);
      adj[l.b].push_back(l.a);
    }
  for (auto& [n, v] : adj) std::sort(v.begin(), v.end());

  std::map<NodeId, int> dist{{src, 0}};
  std::queue<NodeId> frontier;
  frontier.push(src);
  while (!frontier.empty()) {
    const NodeId n = frontier.front();
    frontier.pop();
    for (NodeId m : adj[n])
      if (!dist.count(m)) {
        dist[m] = dist[n] + 1;
        frontier.push(m);
      }
  }
  if (!dist.count(dst)) return {};

  // Walk every shortest path in lexicographic order and keep the best score.
  std::vector<NodeId> best;
  double best_score = -1.0;
  std::vector<NodeId> current{src};
  std::function<void(NodeId, double)> walk = [&](NodeId n, double score) {
    if (n == dst) {
      if (best.empty() || score > best_score + 1e-12) {
        best = current;
        best_score = score;
      }
      return;
    }
    for (NodeId m : adj[n]) {
      auto it = dist.find(m);
      if (it == dist.end() || it->second != dist[n] + 1) continue;
      if (dist[dst] - it->second < 0) continue;
      const double edge = objective == RouteObjective::ShortestThenConcurrence
                              ? best_concurrence(*net.link_between(n, m))
                              : 1.0;
      current.push_back(m);
      walk(m, score * edge);
      current.pop_back();
      if (objective == RouteObjective::Shortest && !best.empty()) return;
    }
  };
  walk(src, 1.0);
  return best;
}

RouteReport build_bridge(Network& net, const std::vector<NodeId>& path) {
  if (path.size() < 2) throw std::invalid_argument("build_bridge: path needs at least two nodes");

  std::vector<Link*> links;
  std::vector<int> picks;
  for (std::size_t e = 0; e + 1 < path.size(); ++e) {
    Link* link = net.link_between(path[e], path[e + 1]);
    if (!link) throw std::invalid_argument("build_bridge: path uses a missing link");
    const int pick = best_entry(*link);
    if (pick < 0)
      throw InventoryError("build_bridge: no states left on link " + std::to_string(path[e].value) + "-" +
                           std::to_string(path[e + 1].value));
    links.push_back(link);
    picks.push_back(pick);
  }

  std::vector<TwoQubitState> states;
  std::vector<InventoryEntry> picked;
  std::vector<Consumption> consumed;
  for (std::size_t e = 0; e < links.size(); ++e) {
    InventoryEntry& entry = links[e]->inventory[picks[e]];
    states.push_back(oriented(*links[e], entry, path[e]));
    picked.push_back({entry.kind, 1, entry.reversed});
    consumed.push_back({path[e], path[e + 1], entry.kind});
    --entry.count;
  }

  const CanonicalBridge bridge = swap_chain(states);
  return RouteReport{path,     static_cast<int>(links.size()) - 1, bridge.state, report(bridge.state),
                     consumed, bridge.branches_agree,              picked,       states};
}

std::string_view to_string(RequestOutcome o) {
  switch (o) {
    case RequestOutcome::Teleported: return "Teleported";
    case RequestOutcome::Rejected: return "Rejected";
    case RequestOutcome::NoRoute: return "NoRoute";
  }
  return "?";
}

TeleportRequestReport request_teleport(Network& net, NodeId src, NodeId dst, const QubitSignal& u,
                                       const RequestOptions& options) {
  if (src == dst) throw std::invalid_argument("request_teleport: src and dst must differ");
  if (!net.has_node(src) || !net.has_node(dst)) throw std::invalid_argument("request_teleport: unknown node");

  TeleportRequestReport rep;
  rep.src = src;
  rep.dst = dst;
  const std::string tag = "request " + std::to_string(src.value) + "->" + std::to_string(dst.value) + ": ";

  rep.path = find_path(net, src, dst, options.objective);
  if (rep.path.empty()) {
    rep.outcome = RequestOutcome::NoRoute;
    rep.log.push_back(tag + "no route");
    return rep;
  }
  rep.log.push_back(tag + "path " + path_string(rep.path) +
                    (quantum_neighbors(net, src, dst) && rep.path.size() == 2 ? " (quantum neighbors)" : ""));

  RouteReport route = build_bridge(net, rep.path);
  rep.swaps_performed = route.swaps_performed;
  rep.consumed = route.consumed;
  for (std::size_t e = 0; e < route.edge_entries.size(); ++e)
    rep.log.push_back(tag + "link " + std::to_string(rep.path[e].value) + "-" + std::to_string(rep.path[e + 1].value) +
                      " uses " + describe(route.edge_entries[e].kind));
  for (int s = 0; s < route.swaps_performed; ++s)
    rep.log.push_back(tag + "swap at node " + std::to_string(rep.path[s + 1].value));
  if (!route.branches_agree) rep.log.push_back(tag + "bridge branches disagree; using outcome-averaged state");
  rep.initial = route.report;
  rep.log.push_back(tag + "telp check " + report_line(route.report));

  TwoQubitState channel = route.bridge;
  EntanglementReport current = route.report;
  bool accepted = current.telp > options.target_telp;
  std::vector<TwoQubitState> link_states = route.edge_states;

  while (!accepted && rep.purification_rounds < options.purify_max_rounds) {
    const std::string round_tag = tag + "purify round " + std::to_string(rep.purification_rounds + 1);
    // Compute the round first; inventory is touched only if it succeeds.
    std::optional<TwoQubitState> next;
    std::vector<TwoQubitState> next_links = link_states;
    double prob = 1.0;
    bool twirled = false;
    try {
      if (options.strategy == PurifyStrategy::Bridge) {
        const PurificationStep step = purify_round(channel);
        next = step.output;
        prob = step.success_probability;
        twirled = step.twirled;
      } else {
        for (auto& s : next_links) {
          const PurificationStep step = purify_round(s);
          s = step.output;
          prob *= step.success_probability;
          twirled = twirled || step.twirled;
        }
        next = swap_chain(next_links).state;
      }
    } catch (const NotPurifiable& e) {
      rep.log.push_back(round_tag + " failed: " + e.what());
      break;
    }
    if (!reserve_copies(net, rep.path, route.edge_entries, rep.consumed)) {
      rep.log.push_back(round_tag + " aborted: no spare copies on the path");
      break;
    }
    channel = *next;
    link_states = std::move(next_links);
    ++rep.purification_rounds;
    rep.purification_success *= prob;
    current = report(channel);
    accepted = current.telp > options.target_telp;
    rep.log.push_back(round_tag + (twirled ? " (twirled)" : "") + " p=" + num(prob) + " " + report_line(current));
  }

  rep.final_report = current;
  rep.channel = channel;
  if (!accepted) {
    rep.outcome = RequestOutcome::Rejected;
    rep.log.push_back(tag + "Rejected");
    return rep;
  }
  rep.teleport = teleport(channel, u);
  rep.outcome = RequestOutcome::Teleported;
  rep.log.push_back(tag + "teleported with mean fidelity " + num(rep.teleport->mean_fidelity) + " (frame " +
                    std::to_string(rep.teleport->frame.sender) + "," + std::to_string(rep.teleport->frame.receiver) +
                    ")");
  return rep;
}

}  // namespace qbridge
