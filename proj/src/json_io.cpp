#include "ramsey/json_io.hpp"

#include <fstream>
#include <sstream>

#include "ramsey/error.hpp"

namespace ramsey {

namespace {

std::vector<Vertex> parents_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("parent") || !j.at("parent").is_array())
        throw Error(Errc::InvalidArgument, "tree document needs a \"parent\" array");
    std::vector<Vertex> out;
    for (const auto& x : j.at("parent")) {
        if (x.is_null())
            out.push_back(kNone);
        else if (x.is_number_integer())
            out.push_back(x.get<Vertex>());
        else
            throw Error(Errc::InvalidArgument, "parent entries must be null or integers");
    }
    return out;
}

std::string kind_of(const Json& j)
{
    if (!j.contains("kind"))
        return "tree";
    if (!j.at("kind").is_string())
        throw Error(Errc::InvalidArgument, "\"kind\" must be a string");
    return j.at("kind").get<std::string>();
}

Json parents_json(const std::vector<Vertex>& parents)
{
    Json arr = Json::array();
    for (Vertex p : parents)
        arr.push_back(p == kNone ? Json(nullptr) : Json(p));
    return arr;
}

}  // namespace

Json schema_versions()
{
    return Json{{"tree", kTreeSchema},
                {"map", kMapSchema},
                {"coloring", kColoringSchema},
                {"report", kReportSchema},
                {"fixtures", kFixturesSchema}};
}

Json parse_json(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::InvalidArgument, std::string("malformed JSON: ") + e.what());
    }
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::InvalidArgument, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_json(ss.str());
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out)
        throw Error(Errc::InvalidArgument, "cannot write " + path);
    out << dump_json(j);
}

void check_schema(const Json& j, const std::string& kind, int version, bool required)
{
    if (!j.is_object())
        throw Error(Errc::InvalidArgument, kind + " document must be a JSON object");
    if (j.contains("kind") && j.at("kind") != kind)
        throw Error(Errc::SchemaMismatch, "expected a " + kind + " document, got kind " + j.at("kind").dump());
    if (!j.contains("schema_version")) {
        if (required)
            throw Error(Errc::SchemaMismatch, kind + " document has no schema_version");
        return;
    }
    const Json& v = j.at("schema_version");
    if (!v.is_number_integer() || v.get<int>() != version)
        throw Error(Errc::SchemaMismatch, kind + " schema_version " + v.dump() + " is not supported (this build reads " +
                                              std::to_string(version) + ")");
}

Json to_json(const OrderedTree& t) { return Json{{"kind", "tree"}, {"parent", parents_json(t.parents())}}; }

Json to_json(const OrderedForest& f) { return Json{{"kind", "forest"}, {"parent", parents_json(f.parents())}}; }

Json to_json(const TreeMap& m) { return Json{{"dom", to_json(m.dom())}, {"cod", to_json(m.cod())}, {"values", m.values()}}; }

Json coloring_to_json(const std::vector<int>& values, int colors)
{
    return Json{{"schema_version", kColoringSchema}, {"kind", "coloring"}, {"colors", colors}, {"values", values}};
}

OrderedTree tree_from_json(const Json& j, bool normalize)
{
    const std::string kind = kind_of(j);
    if (kind == "forest")
        return forest_from_json(j, normalize).closure();
    if (kind != "tree")
        throw Error(Errc::InvalidArgument, "unknown tree kind \"" + kind + "\"");
    check_schema(j, "tree", kTreeSchema, false);
    auto parents = parents_from_json(j);
    if (parents.empty())
        throw Error(Errc::NotATree, "a tree needs at least one vertex");
    if (normalize)
        return canonicalize(parents).tree;
    return OrderedTree::from_parents(std::move(parents));
}

OrderedForest forest_from_json(const Json& j, bool normalize)
{
    const std::string kind = kind_of(j);
    if (kind == "tree")
        return remove_root(tree_from_json(j, normalize));
    if (kind != "forest")
        throw Error(Errc::InvalidArgument, "unknown tree kind \"" + kind + "\"");
    check_schema(j, "forest", kTreeSchema, false);
    auto parents = parents_from_json(j);
    if (normalize)
        return canonicalize_forest(parents).forest;
    return OrderedForest::from_parents(parents);
}

TreeMap map_from_json(const Json& j, bool normalize)
{
    if (!j.is_object() || !j.contains("dom") || !j.contains("cod") || !j.contains("values"))
        throw Error(Errc::InvalidArgument, "map document needs \"dom\", \"cod\" and \"values\"");
    check_schema(j, "map", kMapSchema, false);
    if (!j.at("values").is_array())
        throw Error(Errc::InvalidArgument, "map values must be an array");
    std::vector<Vertex> values;
    for (const auto& x : j.at("values")) {
        if (!x.is_number_integer())
            throw Error(Errc::InvalidArgument, "map values must be integers");
        values.push_back(x.get<Vertex>());
    }
    if (!normalize)
        return TreeMap(tree_from_json(j.at("dom")), tree_from_json(j.at("cod")), std::move(values));

    auto dom = canonicalize(parents_from_json(j.at("dom")));
    auto cod = canonicalize(parents_from_json(j.at("cod")));
    if (values.size() != dom.old_to_new.size())
        throw Error(Errc::InvalidArgument, "map has " + std::to_string(values.size()) + " values for " +
                                               std::to_string(dom.old_to_new.size()) + " domain vertices");
    std::vector<Vertex> renamed(values.size(), kNone);
    for (std::size_t v = 0; v < values.size(); ++v) {
        if (values[v] < 0 || static_cast<std::size_t>(values[v]) >= cod.old_to_new.size())
            throw Error(Errc::VertexOutOfRange, "map value " + std::to_string(values[v]) + " is not a codomain vertex");
        renamed[static_cast<std::size_t>(dom.old_to_new[v])] = cod.old_to_new[static_cast<std::size_t>(values[v])];
    }
    return TreeMap(dom.tree, cod.tree, std::move(renamed));
}

LoadedColoring coloring_from_json(const Json& j)
{
    check_schema(j, "coloring", kColoringSchema);
    LoadedColoring out;
    if (!j.contains("colors") || !j.at("colors").is_number_integer() || !j.contains("values") || !j.at("values").is_array())
        throw Error(Errc::InvalidArgument, "coloring needs integer \"colors\" and a \"values\" array");
    out.colors = j.at("colors").get<int>();
    for (const auto& x : j.at("values")) {
        if (!x.is_number_integer())
            throw Error(Errc::InvalidArgument, "coloring values must be integers");
        int c = x.get<int>();
        if (c < 0 || c >= out.colors)
            throw Error(Errc::InvalidArgument, "colour " + std::to_string(c) + " out of range");
        out.values.push_back(c);
    }
    return out;
}

Json verdict_json(Verdict v)
{
    switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::CapExceeded: return "cap_exceeded";
    }
    return "holds";
}

Verdict verdict_from_json(const Json& j)
{
    if (j == "holds")
        return Verdict::Holds;
    if (j == "fails")
        return Verdict::Fails;
    if (j == "cap_exceeded")
        return Verdict::CapExceeded;
    throw Error(Errc::InvalidArgument, "unknown verdict " + j.dump());
}

Json empty_fixtures() { return Json{{"schema_version", kFixturesSchema}, {"kind", "fixtures"}, {"entries", Json::array()}}; }

Json load_fixtures(const std::string& path)
{
    std::ifstream probe(path);
    if (!probe)
        return empty_fixtures();
    Json doc = read_json_file(path);
    check_schema(doc, "fixtures", kFixturesSchema);
    if (!doc.contains("entries") || !doc.at("entries").is_array())
        throw Error(Errc::InvalidArgument, path + ": fixtures need an \"entries\" array");
    return doc;
}

const Json* find_fixture(const Json& doc, const std::string& id)
{
    for (const auto& e : doc.at("entries"))
        if (e.contains("id") && e.at("id") == id)
            return &e;
    return nullptr;
}

bool append_fixture(Json& doc, const Json& entry)
{
    if (const Json* old = find_fixture(doc, entry.at("id").get<std::string>()))
        return *old == entry;
    doc.at("entries").push_back(entry);
    return true;
}

}  // namespace ramsey
