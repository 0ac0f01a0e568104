#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flipin/experiments.hpp"
#include "flipin/influence_network.hpp"

namespace flipin::tools {

/// {"eta": real, "nodes": [ids], "edges": [{"from", "to", "w"}]}.
/// Structural problems (unknown ids, duplicate edges, bad types) throw
/// std::invalid_argument; weight rules are left to validate_network.
NetworkSpec parse_network(const nlohmann::json& doc);
NetworkSpec load_network(const std::string& path);

/// {"nodes": [{"id", "gamma_d", "c_d", "gamma_a", "c_a"}]}, returned in the
/// network's node order.
std::vector<NodeParams> parse_params(const nlohmann::json& doc, const NetworkSpec& network);
std::vector<NodeParams> load_params(const std::string& path, const NetworkSpec& network);

nlohmann::json read_json_file(const std::string& path);

/// 12 significant digits.
std::string format_number(double x);
/// x rounded through its 12-digit text form.
double round12(double x);

/// Fixed CSV header, without the trailing newline.
const std::string& csv_header();

struct WriteOptions {
  /// ISO-8601 UTC stamp emitted as a leading comment (CSV) or field (JSON).
  std::optional<std::string> timestamp;
};

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records, const WriteOptions& opts = {});
void write_json(std::ostream& os, const std::vector<SweepRecord>& records, const WriteOptions& opts = {});

/// Current UTC time, second resolution.
std::string utc_timestamp();

}  // namespace flipin::tools
