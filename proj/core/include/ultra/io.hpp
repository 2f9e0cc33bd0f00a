#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ultra/center.hpp"
#include "ultra/constructions.hpp"
#include "ultra/explore.hpp"
#include "ultra/partition.hpp"
#include "ultra/space.hpp"
#include "ultra/tree.hpp"

namespace ultra {

// Space files. JSON: {"points": ["a", ...], "matrix": [["0", "3", ...], ...]}
// with every distance an exact decimal or "p/q" string (unsigned JSON
// integers are also accepted; binary floats are rejected). CSV: a header row
// of point names, then the matrix. Both round-trip losslessly.
SpaceData parse_space_json(const std::string& text);
SpaceData parse_space_csv(const std::string& text);
/// Dispatches on the leading character ('{' = JSON, otherwise CSV).
SpaceData parse_space_auto(const std::string& text);
std::string space_to_json(const UltrametricSpace& space);
std::string space_to_csv(const UltrametricSpace& space);

// Tree files: nested {"label": "3", "children": [...]}, leaves
// {"label": "0", "point": "a"}. The root object may carry a "points" array
// recording the declared point order, which realize uses to reproduce a
// space file byte-for-byte.
struct ParsedTree {
  LabeledTree tree;
  std::optional<std::vector<std::string>> declared_points;
};
ParsedTree parse_tree_json(const std::string& text);
std::string tree_to_json(const RepresentingTree& tree);
std::string tree_to_json(const LabeledTree& tree,
                         const std::optional<std::vector<std::string>>& declared_points);

/// Representing tree in DOT: internal nodes show labels, leaves show point
/// names.
std::string tree_to_dot(const LabeledTree& tree);

std::string partition_to_json(const UltrametricSpace& space, const Partition& partition);
/// Edge list of the diametrical graph; quadratic, so callers should keep n
/// small.
std::string diametrical_graph_to_dot(const UltrametricSpace& space, const Partition& partition);

std::string validation_to_json(const SpaceValidation& report);
std::string validation_to_text(const SpaceValidation& report);
std::string tree_validation_to_json(const TreeValidation& report);

std::string center_report_to_json(const CenterReport& report);

std::string bound_table_to_json(const BoundTable& table);
std::string bound_table_to_text(const BoundTable& table);

std::string conjecture_report_to_json(const ConjectureReport& report);
std::string conjecture_report_to_text(const ConjectureReport& report);

std::string enumeration_class_to_json_line(const EnumerationClass& cls);

/// {"kind": "binary_word", "n": 3} / {"kind": "double", "t_star": "2",
/// "base": {...}} / {"kind": "add_point", "base": {...}} /
/// {"kind": "realize_set", "set": ["0", "1", "2"]}.
ConstructionSpec parse_construction_spec(const std::string& text);

}  // namespace ultra
