#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "simgroup/diagram.hpp"
#include "simgroup/germ.hpp"
#include "simgroup/perm.hpp"
#include "simgroup/table.hpp"

namespace simgroup::cli {

using json = nlohmann::ordered_json;

// Cycle notation such as "(1 2)(3 4)" or "(1,2,3)"; "()" or "" is the identity.
Perm parse_cycles(std::string_view text, int degree);
// Comma-separated cycle generators, or one of "sym", "alt", "trivial".
PermGroup parse_group(std::string_view text, int degree);

json perm_to_json(const Perm& p);
Perm perm_from_json(const json& j, int degree);

json word_to_json(const Word& w, int d);
Word word_from_json(const json& j, int d);

// {"d": int, "H": [generators], "columns": [{"v": "121", "h": [2,1], "u": "2"}]}
json element_to_json(const TableElement& g);
TableElement element_from_json(const json& j);

// {"symbols": [...], "wires": [labels], "transistors": [{"top": [...], "bottom": [...]}],
//  "frame_top": [...], "frame_bottom": [...]}; labels are symbol names.
json diagram_to_json(const BraidedDiagram& diagram, const SemigroupPresentation& p);
BraidedDiagram diagram_from_json(const json& j, const SemigroupPresentation& p);

// "u:v" with ε (or empty) for an empty preperiod, or "symbols:{1,2}".
using PointSpec = std::variant<EventuallyPeriodicPoint, std::vector<int>>;
PointSpec parse_point(std::string_view text, int d);
std::string point_to_string(const PointSpec& point);

json germ_to_json(const GermDescriptor& g);

// Reads a whole file; InputError if it cannot be opened.
std::string read_file(const std::string& path);
json parse_json(std::string_view text, const std::string& source);
// Writes through a temporary file and a rename.
void write_atomically(const std::string& path, std::string_view contents);

}  // namespace simgroup::cli
