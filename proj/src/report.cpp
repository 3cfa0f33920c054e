#include "qbridge/report.hpp"

#include "qbridge/sweep.hpp"

#include <sstream>

namespace qbridge {

namespace {

std::string join_path(const std::vector<NodeId>& path) {
  std::string s;
  for (std::size_t i = 0; i < path.size(); ++i) s += (i ? "-" : "") + std::to_string(path[i].value);
  return s;
}

std::string optional_cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

// describe() never emits commas, so the list fits in one unquoted cell.
std::string consumed_cell(const std::vector<Consumption>& consumed) {
  std::string s;
  for (std::size_t i = 0; i < consumed.size(); ++i) {
    const Consumption& c = consumed[i];
    s += (i ? " | " : "") + std::to_string(c.a.value) + "-" + std::to_string(c.b.value) + " " + describe(c.kind);
  }
  return s;
}

}  // namespace

std::string describe_inventory(const Network& net) {
  std::ostringstream out;
  for (const Link& link : net.links()) {
    out << "  link " << link.a.value << "-" << link.b.value << ":";
    if (link.inventory.empty()) out << " empty";
    for (const InventoryEntry& e : link.inventory)
      out << " " << e.count << "x " << describe(e.kind) << (e.reversed ? " (reversed)" : "");
    out << "\n";
  }
  return out.str();
}

NetworkRun run_network(const RunConfig& config, const QubitSignal& default_signal) {
  validate_requests(config);
  NetworkRun run{distribute(config.distribution, config.seed), {}, {}, {}};

  std::ostringstream log;
  log << "distribution seed " << config.seed << ": " << config.distribution.hops << " hops, "
      << run.network.nodes().size() << " nodes, " << run.network.links().size() << " links, "
      << run.network.total_inventory() << " pairs\n";
  for (const auto& [a, b] : run.network.hops()) log << "  hop " << a.value << "-" << b.value << "\n";
  log << describe_inventory(run.network);

  std::ostringstream csv;
  csv << "request,src,dst,signal,outcome,path,swaps,initial_concurrence,initial_telp,final_concurrence,final_telp,"
         "purification_rounds,purification_success,mean_fidelity,frame,consumed\n";

  for (std::size_t i = 0; i < config.requests.size(); ++i) {
    const TeleportRequestSpec& req = config.requests[i];
    const QubitSignal u = req.signal < 0 ? default_signal : config.distribution.s3_signals[req.signal];
    TeleportRequestReport r = request_teleport(run.network, req.src, req.dst, u, config.options);
    for (const std::string& line : r.log) log << line << "\n";

    auto field = [](const std::optional<EntanglementReport>& rep, bool conc) -> std::optional<double> {
      if (!rep) return std::nullopt;
      return conc ? rep->concurrence : rep->telp;
    };
    csv << i << ',' << req.src.value << ',' << req.dst.value << ',' << req.signal << ',' << to_string(r.outcome)
        << ',' << join_path(r.path) << ',' << r.swaps_performed << ',' << optional_cell(field(r.initial, true)) << ','
        << optional_cell(field(r.initial, false)) << ',' << optional_cell(field(r.final_report, true)) << ','
        << optional_cell(field(r.final_report, false)) << ',' << r.purification_rounds << ','
        << format_number(r.purification_success) << ','
        << (r.teleport ? format_number(r.teleport->mean_fidelity) : std::string()) << ','
        << (r.teleport ? std::to_string(r.teleport->frame.sender) + "/" + std::to_string(r.teleport->frame.receiver)
                       : std::string())
        << ',' << consumed_cell(r.consumed) << '\n';
    run.reports.push_back(std::move(r));
  }
  log << "remaining inventory:\n" << describe_inventory(run.network);

  run.requests_csv = csv.str();
  run.log = log.str();
  return run;
}

}  // namespace qbridge
