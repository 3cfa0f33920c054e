// report.hpp
// Network protocol runs rendered as a per-request CSV and a text log.

#pragma once

#include "qbridge/config.hpp"

#include <string>

namespace qbridge {

struct NetworkRun {
  Network network;  // state after every request has been applied
  std::vector<TeleportRequestReport> reports;
  std::string requests_csv;
  std::string log;
};

/// Distributes with config.seed and applies the requests in order. Requests
/// without a signal index send `default_signal`.
NetworkRun run_network(const RunConfig& config, const QubitSignal& default_signal = QubitSignal::balanced());

std::string describe_inventory(const Network& net);

}  // namespace qbridge
