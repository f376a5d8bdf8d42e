#include "mptsp/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mptsp/error.hpp"

namespace mptsp {

namespace {

using Json = nlohmann::ordered_json;

Json parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kMalformedJson, e.what());
  }
}

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedJson, what);
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) malformed(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::pair<int, int> as_pair(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) {
    malformed(std::string(what) + " entries must be 2-element arrays");
  }
  return {as_int(j[0], what), as_int(j[1], what)};
}

Graph parse_graph(const Json& j) {
  if (!j.is_object()) malformed("instance must be a JSON object");
  if (!j.contains("n")) malformed("missing field \"n\"");
  if (!j.contains("edges") || !j["edges"].is_array()) {
    malformed("missing array field \"edges\"");
  }
  const int n = as_int(j["n"], "n");
  std::vector<Edge> edges;
  edges.reserve(j["edges"].size());
  for (const auto& e : j["edges"]) edges.push_back(as_pair(e, "edges"));
  return Graph(n, std::move(edges));
}

Instance parse_multipath(const Json& j, Graph graph) {
  const auto& arr = j["commodities"];
  if (!arr.is_array()) malformed("\"commodities\" must be an array");
  std::vector<Commodity> commodities;
  for (const auto& c : arr) {
    const auto [s, t] = as_pair(c, "commodities");
    commodities.push_back({s, t});
  }
  return Instance(std::move(graph), std::move(commodities));
}

OrderedInstance parse_ordered(const Json& j, Graph graph) {
  const auto& arr = j["order"];
  if (!arr.is_array()) malformed("\"order\" must be an array");
  std::vector<Vertex> order;
  for (const auto& o : arr) order.push_back(as_int(o, "order"));
  return OrderedInstance(std::move(graph), std::move(order));
}

Json graph_json(const Graph& g) {
  Json j;
  j["n"] = g.num_vertices();
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  return j;
}

}  // namespace

AnyInstance load_instance(std::string_view text) {
  const Json j = parse(text);
  Graph graph = parse_graph(j);
  const bool has_commodities = j.contains("commodities");
  const bool has_order = j.contains("order");
  if (has_commodities == has_order) {
    malformed("exactly one of \"commodities\" or \"order\" is required");
  }
  if (has_order) return parse_ordered(j, std::move(graph));
  return parse_multipath(j, std::move(graph));
}

Instance load_multipath_instance(std::string_view text) {
  auto any = load_instance(text);
  if (auto* inst = std::get_if<Instance>(&any)) return std::move(*inst);
  return std::get<OrderedInstance>(any).to_multipath();
}

OrderedInstance load_ordered_instance(std::string_view text) {
  auto any = load_instance(text);
  if (auto* inst = std::get_if<OrderedInstance>(&any)) return std::move(*inst);
  throw Error(ErrorCode::kInvalidOrder, "expected an instance with an \"order\" field");
}

std::string save_instance(const Instance& inst) {
  Json j = graph_json(inst.graph());
  Json arr = Json::array();
  for (const auto& c : inst.commodities()) arr.push_back({c.source, c.sink});
  j["commodities"] = std::move(arr);
  return j.dump();
}

std::string save_instance(const OrderedInstance& inst) {
  Json j = graph_json(inst.graph());
  j["order"] = inst.order();
  return j.dump();
}

std::string save_solution(const Solution& sol) {
  Json j;
  j["walks"] = sol.walks;
  j["cost"] = sol.cost;
  return j.dump();
}

Solution load_solution(std::string_view text) {
  const Json j = parse(text);
  if (!j.is_object() || !j.contains("walks") || !j["walks"].is_array()) {
    malformed("solution needs a \"walks\" array");
  }
  Solution sol;
  for (const auto& w : j["walks"]) {
    if (!w.is_array()) malformed("each walk must be an array");
    std::vector<Vertex> walk;
    for (const auto& v : w) walk.push_back(as_int(v, "walk vertex"));
    sol.walks.push_back(std::move(walk));
  }
  sol.cost = j.contains("cost") ? j["cost"].get<std::int64_t>() : sol.walk_cost();
  return sol;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  out << contents;
}

}  // namespace mptsp
