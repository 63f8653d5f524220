#pragma once

// JSON artifacts: trees, forests, maps, colorings, reports and the fixtures
// file. Every document except bare trees and maps carries a schema_version;
// loaders refuse a version they do not know.
//
//   tree      {"kind":"tree"|"forest", "parent":[null,0,0,...]}
//   map       {"dom":tree, "cod":tree, "values":[...]}
//   coloring  {"schema_version":1, "kind":"coloring", "colors":b, "values":[...]}
//   report    {"schema_version":1, "kind":"report", "command":..., "params":{...},
//              "verdict":..., ...}
//   fixtures  {"schema_version":1, "kind":"fixtures", "entries":[{"id":..., ...}]}

#include <string>
#include <vector>

#include <json.hpp>

#include "ramsey/coloring.hpp"
#include "ramsey/tree.hpp"
#include "ramsey/tree_map.hpp"

namespace ramsey {

using Json = nlohmann::ordered_json;

inline constexpr int kTreeSchema = 1;
inline constexpr int kMapSchema = 1;
inline constexpr int kColoringSchema = 1;
inline constexpr int kReportSchema = 1;
inline constexpr int kFixturesSchema = 1;

/// {"tree":1, "map":1, ...}
Json schema_versions();

/// Parse errors and unreadable files throw Error(InvalidArgument) with the
/// parser's position in the message.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
/// Two-space indent and a trailing newline.
std::string dump_json(const Json& j);
void write_json_file(const std::string& path, const Json& j);

/// Throws SchemaMismatch when j has a schema_version other than `version`,
/// or (required) none at all, or a kind other than `kind`.
void check_schema(const Json& j, const std::string& kind, int version, bool required = true);

Json to_json(const OrderedTree& t);
Json to_json(const OrderedForest& f);
Json to_json(const TreeMap& m);
Json coloring_to_json(const std::vector<int>& values, int colors);

/// Without normalize, non-canonical parent arrays throw NonCanonical; with
/// it they are canonicalized first. A "forest" document loads as a tree via
/// its closure 1⊕F.
OrderedTree tree_from_json(const Json& j, bool normalize = false);
OrderedForest forest_from_json(const Json& j, bool normalize = false);
/// Values are renumbered along with dom and cod when normalizing.
TreeMap map_from_json(const Json& j, bool normalize = false);

struct LoadedColoring {
    int colors = 0;
    std::vector<int> values;
};
LoadedColoring coloring_from_json(const Json& j);

Json verdict_json(Verdict v);
Verdict verdict_from_json(const Json& j);

/// Empty fixtures document.
Json empty_fixtures();
/// Reads the file, or an empty document when it does not exist.
Json load_fixtures(const std::string& path);
const Json* find_fixture(const Json& doc, const std::string& id);
/// Append-only: a new id is appended; an existing id must hold an equal
/// entry. Returns false on a conflicting entry and leaves doc unchanged.
bool append_fixture(Json& doc, const Json& entry);

}  // namespace ramsey
