#include "ruletree/tree_io.hpp"

#include <json.hpp>

namespace ruletree {

namespace {

using nlohmann::json;

json node_to_json(const DecisionTree::Node& n) {
  if (n.is_terminal()) return json{{"rules", n.rules}};
  json edges = json::array();
  for (const auto& e : n.edges) {
    json label = e.label.is_star() ? json("*") : json(e.label.as_int());
    edges.push_back(json{{"label", label}, {"child", node_to_json(*e.child)}});
  }
  return json{{"attr", n.attr->index}, {"edges", edges}};
}

DecisionTree::NodePtr node_from_json(const json& j) {
  if (j.contains("rules")) {
    if (!j["rules"].is_array()) throw std::invalid_argument("tree json: \"rules\" must be an array");
    return DecisionTree::terminal(j["rules"].get<std::vector<int>>());
  }
  if (!j.contains("attr") || !j.contains("edges"))
    throw std::invalid_argument("tree json: node needs \"rules\" or \"attr\"+\"edges\"");
  std::vector<DecisionTree::Edge> edges;
  for (const auto& e : j["edges"]) {
    const auto& lbl = e.at("label");
    Value v = lbl.is_string()
                  ? (lbl.get<std::string>() == "*"
                         ? Value::star()
                         : throw std::invalid_argument("tree json: bad label"))
                  : Value::integer(lbl.get<std::int64_t>());
    edges.push_back({v, node_from_json(e.at("child"))});
  }
  return DecisionTree::working(AttrId{j["attr"].get<int>()}, std::move(edges));
}

}  // namespace

std::string tree_to_json(const DecisionTree& t, const RuleSystem& s) {
  json j{{"variant", t.variant() == TreeVariant::E ? "e" : "o"},
         {"system_digest", system_digest_hex(s)},
         {"root", node_to_json(t.root())}};
  return j.dump(2) + "\n";
}

LoadedTree tree_from_json(const std::string& text) {
  json j = json::parse(text);
  std::string variant = j.at("variant").get<std::string>();
  if (variant != "o" && variant != "e")
    throw std::invalid_argument("tree json: variant must be \"o\" or \"e\"");
  return {DecisionTree(variant == "e" ? TreeVariant::E : TreeVariant::O,
                       node_from_json(j.at("root"))),
          j.at("system_digest").get<std::string>()};
}

namespace {

int dot_node(const DecisionTree::Node& n, int& next, std::string& out) {
  int id = next++;
  if (n.is_terminal()) {
    std::string label = "{";
    for (std::size_t i = 0; i < n.rules.size(); ++i) {
      if (i > 0) label += ",";
      label += "r" + std::to_string(n.rules[i] + 1);
    }
    label += "}";
    out += "  n" + std::to_string(id) + " [shape=box,label=\"" + label + "\"];\n";
    return id;
  }
  out += "  n" + std::to_string(id) + " [shape=oval,label=\"" +
         to_string(*n.attr) + "\"];\n";
  for (const auto& e : n.edges) {
    int child = dot_node(*e.child, next, out);
    out += "  n" + std::to_string(id) + " -> n" + std::to_string(child) +
           " [label=\"" + to_string(e.label) + "\"];\n";
  }
  return id;
}

}  // namespace

std::string tree_to_dot(const DecisionTree& t) {
  std::string out = "digraph decision_tree {\n";
  int next = 0;
  dot_node(t.root(), next, out);
  out += "}\n";
  return out;
}

}  // namespace ruletree
