// qbridge: bridge-family sweeps, closed-form audits and network protocol runs.
//
//   qbridge sweep   --family wx --grid 0:1:101 --triple -0.9,-0.8,-0.7 [--out DIR]
//   qbridge audit   [--family ww] [--grid ...] [--out DIR]
//   qbridge network --config run.cfg [--seed N] [--request 0:3] [--out DIR]
//
// Exit codes: 0 ok, 2 bad configuration or arguments, 3 physics invariant violated.

#include "qbridge/config.hpp"
#include "qbridge/report.hpp"
#include "qbridge/sweep.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace qbridge;

namespace {

constexpr int kConfigError = 2;
constexpr int kPhysicsError = 3;

std::vector<double> numbers(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

void apply_grid(SweepSpec& spec, const std::string& grid) {
  const auto v = numbers(grid, ':');
  if (v.size() != 3 || v[2] != std::floor(v[2])) throw std::invalid_argument("--grid must be START:STOP:COUNT");
  spec.start = v[0];
  spec.stop = v[1];
  spec.count = static_cast<int>(v[2]);
}

QubitSignal parse_signal(const std::string& text) {
  const auto v = numbers(text, ',');
  if (v.size() != 4) throw std::invalid_argument("--signal must be RE_A,IM_A,RE_B,IM_B");
  return {Complex(v[0], v[1]), Complex(v[2], v[3])};
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  std::cerr << "wrote " << path.string() << "\n";
}

struct SpecFlags {
  std::string family;
  std::string grid;
  std::string triple;
  std::vector<std::string> q;
  std::string signal;
  std::string out;

  SweepSpec build(BridgeFamily f) const {
    SweepSpec spec;
    spec.family = f;
    if (!grid.empty()) apply_grid(spec, grid);
    if (!triple.empty()) {
      const auto t = numbers(triple, ',');
      if (t.size() != 3) throw std::invalid_argument("--triple needs three numbers");
      spec.triple = Vec3(t[0], t[1], t[2]);
    }
    if (!q.empty()) {
      spec.q_values.clear();
      for (const auto& item : q)
        for (double v : numbers(item, ',')) spec.q_values.push_back(v);
    }
    if (!signal.empty()) spec.signal = parse_signal(signal);
    spec.validate();
    return spec;
  }
};

void add_spec_flags(CLI::App* cmd, SpecFlags& f) {
  cmd->add_option("--family", f.family, "Bridge family: ww, wb, wx or wp");
  cmd->add_option("--grid", f.grid, "Werner parameter grid START:STOP:COUNT (default 0:1:101)");
  cmd->add_option("--triple", f.triple, "WX partner correlation diagonal a,b,c (default -0.9,-0.8,-0.7)");
  cmd->add_option("--q", f.q, "WP partner parameter(s), comma separated or repeated (default 1)");
  cmd->add_option("--signal", f.signal, "Signal amplitudes RE_A,IM_A,RE_B,IM_B (default balanced)");
  cmd->add_option("--out", f.out, "Output directory (default: print CSV to stdout)");
}

void emit(const SpecFlags& f, const std::string& name, const std::string& csv) {
  if (f.out.empty()) std::cout << csv;
  else write_file(fs::path(f.out) / name, csv);
}

int cmd_sweep(const SpecFlags& f) {
  const SweepSpec spec = f.build(parse_family(f.family.empty() ? "ww" : f.family));
  const auto rows = run_sweep(spec);
  emit(f, "sweep_" + std::string(to_string(spec.family)) + ".csv", sweep_csv(rows));
  if (!f.out.empty()) {
    for (const SweepRow& r : rows)
      if (r.concurrence > 1e-12) {
        std::cout << to_string(spec.family) << ": first entangled grid point x = " << format_number(r.x)
                  << (r.q ? " (q = " + format_number(*r.q) + ")" : "") << "\n";
        break;
      }
  }
  return 0;
}

int cmd_audit(const SpecFlags& f) {
  std::vector<BridgeFamily> families;
  if (f.family.empty()) families = {BridgeFamily::WW, BridgeFamily::WB, BridgeFamily::WX, BridgeFamily::WP};
  else families = {parse_family(f.family)};

  std::vector<AuditRow> rows;
  for (BridgeFamily fam : families) {
    const auto part = run_discrepancy(f.build(fam));
    rows.insert(rows.end(), part.begin(), part.end());
  }
  emit(f, "audit.csv", audit_csv(rows));
  if (!f.out.empty()) {
    for (const AuditRow& r : rows)
      if (!r.x)
        std::cout << to_string(r.family) << " " << r.formula << ": quoted " << format_number(r.closed_form_value)
                  << ", derived " << format_number(r.oracle_value) << "\n";
  }
  return 0;
}

struct NetworkFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> requests;
  std::string signal;
  std::string out = ".";
};

int cmd_network(const NetworkFlags& f) {
  RunConfig config = load_config(f.config);
  if (f.seed) config.seed = *f.seed;
  if (!f.requests.empty()) {
    config.requests.clear();
    try {
      for (const auto& r : f.requests) config.requests.push_back(parse_request(r));
      validate_requests(config);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(0, std::string("--request: ") + e.what());
    }
  }
  const QubitSignal signal = f.signal.empty() ? QubitSignal::balanced() : parse_signal(f.signal);
  const NetworkRun run = run_network(config, signal);
  write_file(fs::path(f.out) / "requests.csv", run.requests_csv);
  write_file(fs::path(f.out) / "network.log", run.log);
  for (const auto& r : run.reports) {
    std::cout << r.src.value << " -> " << r.dst.value << ": " << to_string(r.outcome);
    if (r.teleport) std::cout << ", mean fidelity " << format_number(r.teleport->mean_fidelity);
    if (r.purification_rounds) std::cout << ", " << r.purification_rounds << " purification round(s)";
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wireless quantum bridge simulator"};
  app.require_subcommand(1);

  SpecFlags sweep_flags;
  CLI::App* sweep = app.add_subcommand("sweep", "Concurrence, telp and fidelity over a Werner-parameter grid");
  add_spec_flags(sweep, sweep_flags);

  SpecFlags audit_flags;
  CLI::App* audit = app.add_subcommand("audit", "Closed-form formulas against the circuit simulation");
  add_spec_flags(audit, audit_flags);

  NetworkFlags net_flags;
  CLI::App* network = app.add_subcommand("network", "Distribute pairs and serve teleportation requests");
  network->add_option("--config", net_flags.config, "Run configuration file")->required();
  network->add_option("--seed", net_flags.seed, "Override the configured seed");
  network->add_option("--request", net_flags.requests, "SRC:DST[:K], repeatable; replaces configured requests");
  network->add_option("--signal", net_flags.signal, "Signal for requests without an index (default balanced)");
  network->add_option("--out", net_flags.out, "Output directory (default .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*sweep) return cmd_sweep(sweep_flags);
    if (*audit) return cmd_audit(audit_flags);
    return cmd_network(net_flags);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const PhysicsError& e) {
    std::cerr << "physics invariant violated: " << e.what() << "\n";
    return kPhysicsError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
