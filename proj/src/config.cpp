#include "qbridge/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace qbridge {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw std::invalid_argument("expected a number, got '" + s + "'");
  return v;
}

template <typename Int>
Int to_int(const std::string& s) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("expected an integer, got '" + s + "'");
  return v;
}

Vec3 to_vec3(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw std::invalid_argument("expected three comma-separated numbers, got '" + s + "'");
  return {to_double(parts[0]), to_double(parts[1]), to_double(parts[2])};
}

double non_negative(double v, const char* what) {
  if (v < 0.0) throw std::invalid_argument(std::string(what) + " must be >= 0");
  return v;
}

double unit_interval(double v, const char* what) {
  if (v < 0.0 || v > 1.0) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  return v;
}

// Amplitudes typed with a handful of digits are renormalized; anything
// further than 1e-6 from unit norm is rejected.
QubitSignal to_signal(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 4) throw std::invalid_argument("signal needs RE_A,IM_A,RE_B,IM_B, got '" + s + "'");
  const Complex a(to_double(parts[0]), to_double(parts[1]));
  const Complex b(to_double(parts[2]), to_double(parts[3]));
  const double norm = std::norm(a) + std::norm(b);
  if (std::abs(norm - 1.0) > 1e-6) throw std::invalid_argument("signal '" + s + "' is not normalized");
  const double k = 1.0 / std::sqrt(norm);
  return {a * k, b * k};
}

std::vector<QubitSignal> to_signals(const std::string& s) {
  std::vector<QubitSignal> out;
  if (s.empty()) return out;
  for (const auto& item : split(s, ';'))
    if (!item.empty()) out.push_back(to_signal(item));
  return out;
}

TeleportRequestSpec to_request(const std::string& s, char sep) {
  std::string head = s;
  int signal = -1;
  if (sep == '>') {
    const auto colon = s.find(':');
    if (colon != std::string::npos) {
      head = trim(s.substr(0, colon));
      signal = to_int<int>(trim(s.substr(colon + 1)));
    }
    const auto nodes = split(head, '>');
    if (nodes.size() != 2) throw std::invalid_argument("request must look like SRC>DST[:K], got '" + s + "'");
    return {NodeId{to_int<int>(nodes[0])}, NodeId{to_int<int>(nodes[1])}, signal};
  }
  const auto fields = split(s, ':');
  if (fields.size() < 2 || fields.size() > 3)
    throw std::invalid_argument("request must look like SRC:DST[:K], got '" + s + "'");
  if (fields.size() == 3) signal = to_int<int>(fields[2]);
  return {NodeId{to_int<int>(fields[0])}, NodeId{to_int<int>(fields[1])}, signal};
}

std::vector<TeleportRequestSpec> to_requests(const std::string& s) {
  std::vector<TeleportRequestSpec> out;
  for (const auto& item : split(s, ';'))
    if (!item.empty()) out.push_back(to_request(item, '>'));
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"hops",
       [](RunConfig& c, const std::string& v) {
         c.distribution.hops = to_int<int>(v);
         if (c.distribution.hops < 1) throw std::invalid_argument("hops must be >= 1");
       }},
      {"inventory_per_link",
       [](RunConfig& c, const std::string& v) {
         c.distribution.inventory_per_link = to_int<int>(v);
         if (c.distribution.inventory_per_link < 1) throw std::invalid_argument("inventory_per_link must be >= 1");
       }},
      {"seed", [](RunConfig& c, const std::string& v) { c.seed = to_int<std::uint64_t>(v); }},
      {"s1_links",
       [](RunConfig& c, const std::string& v) {
         if (v == "chain") c.distribution.s1_links = S1Topology::Chain;
         else if (v == "all") c.distribution.s1_links = S1Topology::AllPairs;
         else throw std::invalid_argument("s1_links must be chain or all");
       }},
      {"s2_werner_x",
       [](RunConfig& c, const std::string& v) { c.distribution.s2_werner_x = unit_interval(to_double(v), "s2_werner_x"); }},
      {"s3_signals", [](RunConfig& c, const std::string& v) { c.distribution.s3_signals = to_signals(v); }},
      {"requests", [](RunConfig& c, const std::string& v) { c.requests = to_requests(v); }},
      {"s1_weights.bell",
       [](RunConfig& c, const std::string& v) { c.distribution.weight_bell = non_negative(to_double(v), "weight"); }},
      {"s1_weights.werner",
       [](RunConfig& c, const std::string& v) { c.distribution.weight_werner = non_negative(to_double(v), "weight"); }},
      {"s1_weights.x",
       [](RunConfig& c, const std::string& v) { c.distribution.weight_x = non_negative(to_double(v), "weight"); }},
      {"s1_weights.pure",
       [](RunConfig& c, const std::string& v) { c.distribution.weight_pure = non_negative(to_double(v), "weight"); }},
      {"s1_weights.separable",
       [](RunConfig& c, const std::string& v) {
         c.distribution.weight_separable = non_negative(to_double(v), "weight");
       }},
      {"s1_params.bell", [](RunConfig& c, const std::string& v) { c.distribution.s1_bell = parse_bell_kind(v); }},
      {"s1_params.werner_x",
       [](RunConfig& c, const std::string& v) { c.distribution.s1_werner_x = unit_interval(to_double(v), "werner_x"); }},
      {"s1_params.x_triple",
       [](RunConfig& c, const std::string& v) {
         // Given as the signed correlation diagonal, like --triple.
         const Vec3 t = to_vec3(v);
         if (!is_physical_dyadic(t)) throw std::invalid_argument("x_triple does not describe a state");
         c.distribution.s1_x_triple = -t;
       }},
      {"s1_params.pure_q",
       [](RunConfig& c, const std::string& v) { c.distribution.s1_pure_q = unit_interval(to_double(v), "pure_q"); }},
      {"s1_params.separable_a",
       [](RunConfig& c, const std::string& v) {
         c.distribution.s1_separable_a = to_vec3(v);
         if (c.distribution.s1_separable_a.norm() > 1.0 + kStateTol) throw std::invalid_argument("Bloch vector too long");
       }},
      {"s1_params.separable_b",
       [](RunConfig& c, const std::string& v) {
         c.distribution.s1_separable_b = to_vec3(v);
         if (c.distribution.s1_separable_b.norm() > 1.0 + kStateTol) throw std::invalid_argument("Bloch vector too long");
       }},
      {"purify.max_rounds",
       [](RunConfig& c, const std::string& v) {
         c.options.purify_max_rounds = to_int<int>(v);
         if (c.options.purify_max_rounds < 0) throw std::invalid_argument("max_rounds must be >= 0");
       }},
      {"purify.strategy",
       [](RunConfig& c, const std::string& v) {
         if (v == "bridge") c.options.strategy = PurifyStrategy::Bridge;
         else if (v == "link") c.options.strategy = PurifyStrategy::Link;
         else throw std::invalid_argument("strategy must be bridge or link");
       }},
      {"purify.target_telp", [](RunConfig& c, const std::string& v) { c.options.target_telp = to_double(v); }},
      {"route.objective",
       [](RunConfig& c, const std::string& v) {
         if (v == "shortest_then_concurrence") c.options.objective = RouteObjective::ShortestThenConcurrence;
         else if (v == "shortest") c.options.objective = RouteObjective::Shortest;
         else throw std::invalid_argument("objective must be shortest_then_concurrence or shortest");
       }},
  };
  return table;
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string vec3_text(const Vec3& v) { return g17(v(0)) + "," + g17(v(1)) + "," + g17(v(2)); }

}  // namespace

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ": " + message : "config: " + message),
      line_(line) {}

RunConfig parse_config(std::istream& in) {
  RunConfig config;
  std::string section;
  std::string raw;
  int line_no = 0;
  int requests_line = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    // ';' separates list items in values, so it only starts a comment at column 0.
    if (line.empty() || line.front() == ';') continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError(line_no, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "missing key");
    const std::string full = section.empty() ? key : section + "." + key;

    const auto it = setters().find(full);
    if (it == setters().end()) throw ConfigError(line_no, "unknown key '" + full + "'");
    try {
      it->second(config, value);
    } catch (const std::exception& e) {
      throw ConfigError(line_no, full + ": " + e.what());
    }
    if (full == "requests") requests_line = line_no;
  }

  const DistributionConfig& d = config.distribution;
  if (d.weight_bell + d.weight_werner + d.weight_x + d.weight_pure + d.weight_separable <= 0.0)
    throw ConfigError(0, "s1_weights must not all be zero");
  try {
    validate_requests(config);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(requests_line, e.what());
  }
  return config;
}

RunConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open " + path.string());
  return parse_config(in);
}

TeleportRequestSpec parse_request(const std::string& text) { return to_request(trim(text), ':'); }

void validate_requests(const RunConfig& config) {
  const int nodes = 2 * config.distribution.hops;
  const int signals = static_cast<int>(config.distribution.s3_signals.size());
  for (const auto& r : config.requests) {
    const std::string name = std::to_string(r.src.value) + ">" + std::to_string(r.dst.value);
    if (r.src.value < 0 || r.src.value >= nodes || r.dst.value < 0 || r.dst.value >= nodes)
      throw std::invalid_argument("request " + name + " names a node outside 0.." + std::to_string(nodes - 1));
    if (r.src == r.dst) throw std::invalid_argument("request " + name + " has src == dst");
    if (r.signal < -1 || r.signal >= signals)
      throw std::invalid_argument("request " + name + " refers to signal " + std::to_string(r.signal) + " but only " +
                                  std::to_string(signals) + " are listed");
  }
}

std::string to_config_text(const RunConfig& c) {
  const DistributionConfig& d = c.distribution;
  std::ostringstream out;
  out << "hops = " << d.hops << "\n";
  out << "inventory_per_link = " << d.inventory_per_link << "\n";
  out << "seed = " << c.seed << "\n";
  out << "s1_links = " << (d.s1_links == S1Topology::Chain ? "chain" : "all") << "\n";
  out << "s2_werner_x = " << g17(d.s2_werner_x) << "\n";
  out << "s3_signals = ";
  for (std::size_t i = 0; i < d.s3_signals.size(); ++i) {
    const QubitSignal& s = d.s3_signals[i];
    out << (i ? "; " : "") << g17(s.alpha().real()) << "," << g17(s.alpha().imag()) << "," << g17(s.beta().real())
        << "," << g17(s.beta().imag());
  }
  out << "\nrequests = ";
  for (std::size_t i = 0; i < c.requests.size(); ++i) {
    const auto& r = c.requests[i];
    out << (i ? "; " : "") << r.src.value << ">" << r.dst.value;
    if (r.signal >= 0) out << ":" << r.signal;
  }
  out << "\n\n[s1_weights]\n";
  out << "bell = " << g17(d.weight_bell) << "\nwerner = " << g17(d.weight_werner) << "\nx = " << g17(d.weight_x)
      << "\npure = " << g17(d.weight_pure) << "\nseparable = " << g17(d.weight_separable) << "\n";
  out << "\n[s1_params]\n";
  out << "bell = " << to_string(d.s1_bell) << "\nwerner_x = " << g17(d.s1_werner_x)
      << "\nx_triple = " << vec3_text(-d.s1_x_triple) << "\npure_q = " << g17(d.s1_pure_q)
      << "\nseparable_a = " << vec3_text(d.s1_separable_a) << "\nseparable_b = " << vec3_text(d.s1_separable_b)
      << "\n";
  out << "\n[purify]\n";
  out << "max_rounds = " << c.options.purify_max_rounds
      << "\nstrategy = " << (c.options.strategy == PurifyStrategy::Bridge ? "bridge" : "link")
      << "\ntarget_telp = " << g17(c.options.target_telp) << "\n";
  out << "\n[route]\n";
  out << "objective = "
      << (c.options.objective == RouteObjective::Shortest ? "shortest" : "shortest_then_concurrence") << "\n";
  return out.str();
}

}  // namespace qbridge
