#include "ultra/io.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "ultra/errors.hpp"

namespace ultra {

namespace {

using Json = nlohmann::ordered_json;

Json parse_json(const std::string& text, const char* what) {
  Json parsed = Json::parse(text, nullptr, false);
  if (parsed.is_discarded()) {
    throw StructuralError(std::string("invalid JSON in ") + what);
  }
  return parsed;
}

Rational distance_from_json(const Json& value) {
  if (value.is_string()) return Rational::parse(value.get<std::string>());
  if (value.is_number_unsigned()) {
    return Rational(static_cast<std::int64_t>(value.get<std::uint64_t>()));
  }
  if (value.is_number_float()) {
    throw StructuralError("distance " + value.dump() +
                          " is a binary float; write it as a string (\"0.25\" or \"1/4\")");
  }
  throw StructuralError("distance " + value.dump() +
                        " must be a string, a p/q ratio or an unsigned integer");
}

std::string csv_quote(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"' && cell.empty()) {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  if (quoted) throw StructuralError("unterminated quote in CSV line: " + line);
  cells.push_back(std::move(cell));
  return cells;
}

Json space_json(const UltrametricSpace& space) {
  Json out;
  out["points"] = space.points();
  Json matrix = Json::array();
  for (std::size_t i = 0; i < space.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < space.size(); ++j) row.push_back(space.distance(i, j).str());
    matrix.push_back(std::move(row));
  }
  out["matrix"] = std::move(matrix);
  return out;
}

Json space_data_json(const SpaceData& data) {
  Json out;
  out["points"] = data.points;
  Json matrix = Json::array();
  for (const auto& row : data.matrix) {
    Json json_row = Json::array();
    for (const auto& value : row) json_row.push_back(value.str());
    matrix.push_back(std::move(json_row));
  }
  out["matrix"] = std::move(matrix);
  return out;
}

Json tree_node_json(const LabeledTree& tree, int v) {
  Json node;
  node["label"] = tree.nodes[v].label.str();
  if (tree.is_leaf(v)) {
    if (!tree.nodes[v].point.empty()) node["point"] = tree.nodes[v].point;
    return node;
  }
  Json children = Json::array();
  for (int c : tree.nodes[v].children) children.push_back(tree_node_json(tree, c));
  node["children"] = std::move(children);
  return node;
}

int tree_node_from_json(const Json& json, LabeledTree& tree, int parent) {
  if (!json.is_object()) throw StructuralError("tree node is not a JSON object");
  if (!json.contains("label")) throw StructuralError("tree node without a label");
  const int id = static_cast<int>(tree.nodes.size());
  tree.nodes.push_back({});
  tree.nodes[id].parent = parent;
  tree.nodes[id].label = distance_from_json(json.at("label"));
  if (json.contains("point")) {
    if (!json.at("point").is_string()) throw StructuralError("leaf point name is not a string");
    tree.nodes[id].point = json.at("point").get<std::string>();
  }
  if (json.contains("children")) {
    if (!json.at("children").is_array()) throw StructuralError("children is not an array");
    for (const auto& child : json.at("children")) {
      const int cid = tree_node_from_json(child, tree, id);
      tree.nodes[id].children.push_back(cid);
    }
  }
  return id;
}

Json distance_set_json(const DistanceSet& set) {
  Json out = Json::array();
  for (const auto& value : set.values()) out.push_back(value.str());
  return out;
}

const char* verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::NoCounterexample: return "no-counterexample";
    case Verdict::Counterexample: return "counterexample";
    case Verdict::WitnessVerified: return "witness-verified";
  }
  return "?";
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

SpaceData parse_space_json(const std::string& text) {
  const Json json = parse_json(text, "space file");
  if (!json.is_object() || !json.contains("points") || !json.contains("matrix")) {
    throw StructuralError("space JSON needs \"points\" and \"matrix\"");
  }
  SpaceData data;
  if (!json.at("points").is_array()) throw StructuralError("\"points\" is not an array");
  for (const auto& point : json.at("points")) {
    if (!point.is_string()) throw StructuralError("point name is not a string");
    data.points.push_back(point.get<std::string>());
  }
  if (!json.at("matrix").is_array()) throw StructuralError("\"matrix\" is not an array");
  for (const auto& row : json.at("matrix")) {
    if (!row.is_array()) throw StructuralError("matrix row is not an array");
    std::vector<Rational> values;
    for (const auto& cell : row) values.push_back(distance_from_json(cell));
    data.matrix.push_back(std::move(values));
  }
  return data;
}

SpaceData parse_space_csv(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw StructuralError("empty CSV space file");
  SpaceData data;
  data.points = csv_split(lines[0]);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<Rational> row;
    for (const auto& cell : csv_split(lines[i])) row.push_back(Rational::parse(cell));
    data.matrix.push_back(std::move(row));
  }
  return data;
}

SpaceData parse_space_auto(const std::string& text) {
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
    return c == '{' ? parse_space_json(text) : parse_space_csv(text);
  }
  throw StructuralError("empty space file");
}

std::string space_to_json(const UltrametricSpace& space) { return space_json(space).dump(2) + "\n"; }

std::string space_to_csv(const UltrametricSpace& space) {
  std::string out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_quote(space.point(i));
  }
  out += '\n';
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = 0; j < space.size(); ++j) {
      if (j > 0) out += ',';
      out += space.distance(i, j).str();
    }
    out += '\n';
  }
  return out;
}

ParsedTree parse_tree_json(const std::string& text) {
  const Json json = parse_json(text, "tree file");
  ParsedTree parsed;
  if (json.is_object() && json.contains("points")) {
    if (!json.at("points").is_array()) throw StructuralError("\"points\" is not an array");
    std::vector<std::string> points;
    for (const auto& point : json.at("points")) {
      if (!point.is_string()) throw StructuralError("point name is not a string");
      points.push_back(point.get<std::string>());
    }
    parsed.declared_points = std::move(points);
  }
  tree_node_from_json(json, parsed.tree, -1);
  parsed.tree.root = 0;
  return parsed;
}

std::string tree_to_json(const LabeledTree& tree,
                         const std::optional<std::vector<std::string>>& declared_points) {
  Json out;
  if (declared_points) out["points"] = *declared_points;
  Json root = tree_node_json(tree, tree.root);
  for (auto& [key, value] : root.items()) out[key] = std::move(value);
  return out.dump(2) + "\n";
}

std::string tree_to_json(const RepresentingTree& tree) {
  return tree_to_json(tree.skeleton(), tree.points());
}

std::string tree_to_dot(const LabeledTree& tree) {
  std::string out = "digraph tree {\n  node [shape=circle];\n";
  for (std::size_t v = 0; v < tree.nodes.size(); ++v) {
    const auto& node = tree.nodes[static_cast<int>(v)];
    if (tree.is_leaf(static_cast<int>(v))) {
      const std::string name = node.point.empty() ? node.label.str() : node.point;
      out += "  n" + std::to_string(v) + " [label=\"" + dot_escape(name) + "\", shape=none];\n";
    } else {
      out += "  n" + std::to_string(v) + " [label=\"" + node.label.str() + "\"];\n";
    }
  }
  for (std::size_t v = 0; v < tree.nodes.size(); ++v) {
    for (int c : tree.nodes[static_cast<int>(v)].children) {
      out += "  n" + std::to_string(v) + " -> n" + std::to_string(c) + ";\n";
    }
  }
  out += "}\n";
  return out;
}

std::string partition_to_json(const UltrametricSpace& space, const Partition& partition) {
  Json out;
  out["separation"] = partition.separation.str();
  Json parts = Json::array();
  for (const auto& part : partition.parts) {
    Json names = Json::array();
    for (std::size_t p : part) names.push_back(space.point(p));
    parts.push_back(std::move(names));
  }
  out["parts"] = std::move(parts);
  return out.dump(2) + "\n";
}

std::string diametrical_graph_to_dot(const UltrametricSpace& space, const Partition& partition) {
  std::string out = "graph diametrical {\n";
  for (std::size_t i = 0; i < space.size(); ++i) {
    out += "  p" + std::to_string(i) + " [label=\"" + dot_escape(space.point(i)) + "\"];\n";
  }
  std::vector<int> owner(space.size(), 0);
  for (std::size_t a = 0; a < partition.parts.size(); ++a) {
    for (std::size_t p : partition.parts[a]) owner[p] = static_cast<int>(a);
  }
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = i + 1; j < space.size(); ++j) {
      if (owner[i] != owner[j]) {
        out += "  p" + std::to_string(i) + " -- p" + std::to_string(j) + ";\n";
      }
    }
  }
  out += "}\n";
  return out;
}

std::string validation_to_json(const SpaceValidation& report) {
  Json out;
  out["valid"] = report.valid;
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json item;
    switch (v.axiom) {
      case SpaceAxiom::ZeroDiagonal: item["axiom"] = "zero_diagonal"; break;
      case SpaceAxiom::Symmetry: item["axiom"] = "symmetry"; break;
      case SpaceAxiom::Positivity: item["axiom"] = "positivity"; break;
      case SpaceAxiom::StrongTriangle: item["axiom"] = "strong_triangle"; break;
    }
    Json where = Json::array();
    for (int index : v.where) {
      if (index >= 0) where.push_back(index);
    }
    item["where"] = std::move(where);
    item["message"] = v.message;
    violations.push_back(std::move(item));
  }
  out["violations"] = std::move(violations);
  return out.dump(2) + "\n";
}

std::string validation_to_text(const SpaceValidation& report) {
  if (report.valid) return "valid ultrametric space\n";
  std::string out = "invalid: " + std::to_string(report.violations.size()) + " violation(s)\n";
  for (const auto& v : report.violations) out += "  " + v.message + "\n";
  return out;
}

std::string tree_validation_to_json(const TreeValidation& report) {
  Json out;
  out["valid"] = report.valid;
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json item;
    switch (v.clause) {
      case TreeClause::OutDegreeOne: item["clause"] = "out_degree_one"; break;
      case TreeClause::LeafLabelMismatch: item["clause"] = "leaf_label_mismatch"; break;
      case TreeClause::LabelNotDecreasing: item["clause"] = "label_not_decreasing"; break;
    }
    item["vertex"] = v.vertex;
    item["message"] = v.message;
    violations.push_back(std::move(item));
  }
  out["violations"] = std::move(violations);
  return out.dump(2) + "\n";
}

std::string center_report_to_json(const CenterReport& report) {
  Json out;
  out["n"] = report.n;
  out["center"] = distance_set_json(report.center);
  out["distance_set"] = distance_set_json(report.distance_set);
  Json per_point;
  for (const auto& [point, set] : report.per_point) per_point[point] = distance_set_json(set);
  out["per_point"] = std::move(per_point);
  out["bound"] = report.bound;
  out["lower_floor"] = distance_set_json(report.lower_floor);
  return out.dump(2) + "\n";
}

std::string bound_table_to_json(const BoundTable& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json item;
    item["n"] = row.n;
    item["classes"] = row.class_count;
    item["max_center_size"] = row.max_center_size;
    item["formula_value"] = row.formula_value;
    rows.push_back(std::move(item));
  }
  Json out;
  out["rows"] = std::move(rows);
  return out.dump(2) + "\n";
}

std::string bound_table_to_text(const BoundTable& table) {
  std::ostringstream out;
  out << "  n  classes  max|C|  1+floor(log2 n)\n";
  for (const auto& row : table.rows) {
    out << std::setw(3) << row.n << std::setw(9) << row.class_count << std::setw(8)
        << row.max_center_size << std::setw(17) << row.formula_value << "\n";
  }
  return out.str();
}

std::string conjecture_report_to_json(const ConjectureReport& report) {
  Json out;
  out["conjecture"] = report.conjecture_id;
  out["scope"] = report.scope;
  out["verdict"] = verdict_name(report.verdict);
  out["exhaustive"] = report.exhaustive;
  out["notes"] = report.notes;
  Json evidence = Json::array();
  for (const auto& item : report.evidence) {
    Json e;
    e["space"] = space_data_json(item.space);
    e["center"] = distance_set_json(item.center);
    if (!item.canonical_key.empty()) e["canonical_key"] = item.canonical_key;
    evidence.push_back(std::move(e));
  }
  out["evidence"] = std::move(evidence);
  return out.dump(2) + "\n";
}

std::string conjecture_report_to_text(const ConjectureReport& report) {
  std::string out = "conjecture " + std::to_string(report.conjecture_id) + ": " +
                    verdict_name(report.verdict) + (report.exhaustive ? " (exhaustive)" : "") +
                    "\n";
  out += "scope: " + report.scope + "\n";
  out += "notes: " + report.notes + "\n";
  for (const auto& item : report.evidence) {
    out += "evidence: " + std::to_string(item.space.points.size()) + "-point space, C = " +
           item.center.str() + "\n";
  }
  return out;
}

std::string enumeration_class_to_json_line(const EnumerationClass& cls) {
  Json out;
  out["n"] = cls.n;
  out["center_size"] = cls.center_size;
  out["key"] = cls.key;
  if (cls.n >= 2) {
    out["tree"] = Json::parse(tree_to_json(cls.canonical_tree, std::nullopt));
  }
  return out.dump() + "\n";
}

ConstructionSpec parse_construction_spec(const std::string& text) {
  const Json json = parse_json(text, "construction spec");
  if (!json.is_object() || !json.contains("kind")) {
    throw StructuralError("construction spec needs a \"kind\"");
  }
  const std::string kind = json.at("kind").get<std::string>();
  ConstructionSpec spec;
  if (kind == "binary_word") {
    spec.kind = ConstructionSpec::Kind::BinaryWord;
    if (!json.contains("n") || !json.at("n").is_number_unsigned()) {
      throw StructuralError("binary_word needs an unsigned \"n\"");
    }
    spec.n = json.at("n").get<unsigned>();
  } else if (kind == "double" || kind == "add_point") {
    spec.kind = kind == "double" ? ConstructionSpec::Kind::Double
                                 : ConstructionSpec::Kind::AddPoint;
    if (!json.contains("base")) throw StructuralError(kind + " needs a \"base\" space");
    spec.base = parse_space_json(json.at("base").dump());
    if (kind == "double") {
      if (!json.contains("t_star")) throw StructuralError("double needs \"t_star\"");
      spec.t_star = distance_from_json(json.at("t_star"));
    }
  } else if (kind == "realize_set") {
    spec.kind = ConstructionSpec::Kind::RealizeSet;
    if (!json.contains("set") || !json.at("set").is_array()) {
      throw StructuralError("realize_set needs a \"set\" array");
    }
    for (const auto& value : json.at("set")) spec.target_set.push_back(distance_from_json(value));
  } else {
    throw StructuralError("unknown construction kind '" + kind + "'");
  }
  return spec;
}

}  // namespace ultra
