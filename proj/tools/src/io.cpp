#include "flipin/tools/io.hpp"

#include <ctime>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

namespace flipin::tools {

using nlohmann::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

namespace {

double number_field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw std::invalid_argument(where + ": missing \"" + key + "\"");
  if (!it->is_number()) throw std::invalid_argument(where + ": \"" + key + "\" must be a number");
  return it->get<double>();
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw std::invalid_argument(where + ": missing \"" + key + "\"");
  if (!it->is_string()) throw std::invalid_argument(where + ": \"" + key + "\" must be a string");
  return it->get<std::string>();
}

const json& array_field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_array()) {
    throw std::invalid_argument(where + ": \"" + key + "\" must be an array");
  }
  return *it;
}

}  // namespace

NetworkSpec parse_network(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("network: expected a JSON object");
  NetworkSpec spec;
  spec.eta = number_field(doc, "eta", "network");

  std::map<std::string, std::size_t> index;
  for (const json& id : array_field(doc, "nodes", "network")) {
    if (!id.is_string()) throw std::invalid_argument("network: node ids must be strings");
    const std::string name = id.get<std::string>();
    if (!index.emplace(name, spec.ids.size()).second) {
      throw std::invalid_argument("network: duplicate node id \"" + name + "\"");
    }
    spec.ids.push_back(name);
  }
  spec.node_count = spec.ids.size();
  spec.weights.assign(spec.node_count * spec.node_count, 0.0);

  auto lookup = [&](const std::string& name, std::size_t e) {
    auto it = index.find(name);
    if (it == index.end()) {
      throw std::invalid_argument("network: edge " + std::to_string(e) + " references unknown node \"" +
                                  name + "\"");
    }
    return it->second;
  };

  std::set<std::pair<std::size_t, std::size_t>> seen;
  if (doc.contains("edges")) {
    const json& edges = array_field(doc, "edges", "network");
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const std::string where = "network: edge " + std::to_string(e);
      const std::size_t m = lookup(string_field(edges[e], "from", where), e);
      const std::size_t n = lookup(string_field(edges[e], "to", where), e);
      if (!seen.emplace(m, n).second) {
        throw std::invalid_argument(where + " duplicates " + spec.ids[m] + " -> " + spec.ids[n]);
      }
      spec.weight(m, n) = number_field(edges[e], "w", where);
    }
  }
  return spec;
}

NetworkSpec load_network(const std::string& path) { return parse_network(read_json_file(path)); }

std::vector<NodeParams> parse_params(const json& doc, const NetworkSpec& network) {
  if (!doc.is_object()) throw std::invalid_argument("params: expected a JSON object");
  std::map<std::string, NodeParams> by_id;
  for (const json& entry : array_field(doc, "nodes", "params")) {
    const std::string id = string_field(entry, "id", "params");
    const std::string where = "params: node " + id;
    NodeParams p{number_field(entry, "gamma_d", where), number_field(entry, "c_d", where),
                 number_field(entry, "gamma_a", where), number_field(entry, "c_a", where)};
    if (!by_id.emplace(id, p).second) throw std::invalid_argument("params: duplicate node id \"" + id + "\"");
  }

  std::vector<NodeParams> out;
  for (std::size_t n = 0; n < network.node_count; ++n) {
    auto it = by_id.find(network.label(n));
    if (it == by_id.end()) throw std::invalid_argument("params: no entry for node \"" + network.label(n) + "\"");
    out.push_back(it->second);
    by_id.erase(it);
  }
  if (!by_id.empty()) {
    throw std::invalid_argument("params: node \"" + by_id.begin()->first + "\" is not in the network");
  }
  return out;
}

std::vector<NodeParams> load_params(const std::string& path, const NetworkSpec& network) {
  return parse_params(read_json_file(path), network);
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

const std::string& csv_header() {
  static const std::string header =
      "eta,node_id,insurable,s,T,p_d,p_a,alpha,L_d,L_d_bare,L_a,L_i,"
      "L_d_total,L_a_total,L_i_total,T_total,mode,solver";
  return header;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records, const WriteOptions& opts) {
  if (opts.timestamp) os << "# generated " << *opts.timestamp << '\n';
  os << csv_header() << '\n';
  for (const SweepRecord& rec : records) {
    const std::string tail = format_number(rec.L_d_total) + ',' + format_number(rec.L_a_total) + ',' +
                             format_number(rec.L_i_total) + ',' + format_number(rec.T_total) + ',' +
                             std::string(to_string(rec.mode)) + ',' + rec.solver;
    for (const NodeRecord& n : rec.nodes) {
      os << format_number(rec.eta) << ',' << csv_escape(n.node_id) << ','
         << (n.insurable ? "true" : "false") << ',' << (n.s ? format_number(*n.s) : "") << ','
         << format_number(n.T) << ',' << format_number(n.p_d) << ',' << format_number(n.p_a) << ','
         << format_number(n.alpha) << ',' << format_number(n.L_d) << ',' << format_number(n.L_d_bare)
         << ',' << format_number(n.L_a) << ',' << format_number(n.L_i) << ',' << tail << '\n';
    }
  }
}

void write_json(std::ostream& os, const std::vector<SweepRecord>& records, const WriteOptions& opts) {
  json doc = json::object();
  if (opts.timestamp) doc["generated"] = *opts.timestamp;
  json list = json::array();
  for (const SweepRecord& rec : records) {
    json nodes = json::array();
    for (const NodeRecord& n : rec.nodes) {
      nodes.push_back({{"node_id", n.node_id},
                       {"insurable", n.insurable},
                       {"s", n.s ? json(round12(*n.s)) : json(nullptr)},
                       {"T", round12(n.T)},
                       {"p_d", round12(n.p_d)},
                       {"p_a", round12(n.p_a)},
                       {"alpha", round12(n.alpha)},
                       {"L_d", round12(n.L_d)},
                       {"L_d_bare", round12(n.L_d_bare)},
                       {"L_a", round12(n.L_a)},
                       {"L_i", round12(n.L_i)}});
    }
    list.push_back({{"eta", round12(rec.eta)},
                    {"mode", to_string(rec.mode)},
                    {"solver", rec.solver},
                    {"nodes", std::move(nodes)},
                    {"aggregates",
                     {{"L_d_total", round12(rec.L_d_total)},
                      {"L_a_total", round12(rec.L_a_total)},
                      {"L_i_total", round12(rec.L_i_total)},
                      {"T_total", round12(rec.T_total)}}}});
  }
  doc["records"] = std::move(list);
  os << doc.dump(2) << '\n';
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

}  // namespace flipin::tools
