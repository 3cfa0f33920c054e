// config.hpp
// Plain-text run configuration: `key = value` lines, optional [section]
// headers, `#` comments (`;` only at the start of a line). A key inside [purify] is addressed as
// purify.<key>; the dotted form also works at top level.
//
//   hops = 2
//   inventory_per_link = 1
//   seed = 7
//   s1_links = chain              # chain | all
//   s2_werner_x = 0.9
//   s3_signals = 0.6,0,0.8,0; 1,0,0,0
//   requests = 0>3; 1>2:1          # src>dst[:signal index]
//   [s1_weights]  bell werner x pure separable
//   [s1_params]   bell werner_x x_triple(correlation diagonal) pure_q
//                 separable_a separable_b
//   [purify]      max_rounds strategy(bridge|link) target_telp
//   [route]       objective(shortest_then_concurrence|shortest)

#pragma once

#include "qbridge/network.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbridge {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message);
  int line() const { return line_; }  // 0 when not tied to a line

 private:
  int line_;
};

struct TeleportRequestSpec {
  NodeId src;
  NodeId dst;
  int signal = -1;  // index into s3_signals; -1 sends the balanced signal
  bool operator==(const TeleportRequestSpec&) const = default;
};

struct RunConfig {
  DistributionConfig distribution;
  RequestOptions options;
  std::uint64_t seed = 1;
  std::vector<TeleportRequestSpec> requests;
};

RunConfig parse_config(std::istream& in);
RunConfig parse_config_string(const std::string& text);
/// Throws ConfigError(0, ...) if the file cannot be opened.
RunConfig load_config(const std::filesystem::path& path);

/// Inverse of parse_config; numbers use 17 significant digits.
std::string to_config_text(const RunConfig& config);

/// "SRC:DST[:K]" as accepted on the command line.
TeleportRequestSpec parse_request(const std::string& text);

/// Checks node ranges and signal indices against the distribution.
void validate_requests(const RunConfig& config);

}  // namespace qbridge
