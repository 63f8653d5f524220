#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ramsey/cli.hpp"
#include "ramsey/enumeration.hpp"
#include "ramsey/error.hpp"
#include "ramsey/json_io.hpp"
#include "ramsey/reports.hpp"

using namespace ramsey;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = parse_and_dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("ramsey_test_" + name)).string();
}

Errc code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no ramsey::Error thrown");
    return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("tree documents round trip")
{
    for (int n = 1; n <= 5; ++n)
        for (const auto& t : enum_trees(n))
            CHECK(tree_from_json(parse_json(dump_json(to_json(t)))) == t);
    for (const auto& f : enum_forests(3))
        CHECK(forest_from_json(to_json(f)) == f);
    CHECK(to_json(OrderedTree::chain(2)).dump() == R"({"kind":"tree","parent":[null,0]})");
    CHECK(forest_from_json(parse_json(R"({"kind":"forest","parent":[]})")).empty());
}

TEST_CASE("non-canonical trees need --normalize")
{
    auto doc = parse_json(R"({"kind":"tree","parent":[null,0,0,1]})");
    CHECK(code_of([&] { tree_from_json(doc); }) == Errc::NonCanonical);
    CHECK(tree_from_json(doc, true).parents() == std::vector<Vertex>{kNone, 0, 1, 0});
    CHECK(code_of([] { parse_json("{\"kind\":"); }) == Errc::InvalidArgument);
    CHECK(code_of([] { tree_from_json(parse_json(R"({"parent":[0,0]})")); }) == Errc::NotATree);
}

TEST_CASE("map documents")
{
    TreeMap f(OrderedTree::chain(3), OrderedTree::chain(2), {0, 0, 1});
    CHECK(map_from_json(parse_json(to_json(f).dump())) == f);
    // Y with its leaves listed in the other order.
    auto doc = parse_json(R"({"dom":{"kind":"tree","parent":[null,0,0,1]},"cod":{"kind":"tree","parent":[null,0]},"values":[0,1,0,1]})");
    CHECK(code_of([&] { map_from_json(doc); }) == Errc::NonCanonical);
    auto m = map_from_json(doc, true);
    CHECK(m.values() == std::vector<Vertex>{0, 1, 1, 0});
}

TEST_CASE("schema versions are enforced")
{
    auto c = coloring_to_json({0, 1, 1}, 2);
    CHECK(coloring_from_json(c).values == std::vector<int>{0, 1, 1});
    c["schema_version"] = 99;
    CHECK(code_of([&] { coloring_from_json(c); }) == Errc::SchemaMismatch);

    auto rep = run_command("witness check", parse_json(R"({"mode":"mn","b":2,"s":[null,0],"t":[null,0,1],"u":[null,0,1]})")).report;
    rep["schema_version"] = 2;
    CHECK(code_of([&] { replay_report(rep); }) == Errc::SchemaMismatch);

    const auto path = temp_path("bad_fixtures.json");
    write_json_file(path, Json{{"schema_version", 7}, {"kind", "fixtures"}, {"entries", Json::array()}});
    CHECK(code_of([&] { load_fixtures(path); }) == Errc::SchemaMismatch);
    auto r = cli({"fixtures", "check", "--file", path});
    CHECK(r.code == 2);
    CHECK(r.err.find("schema_version") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("fixtures are append-only")
{
    Json doc = empty_fixtures();
    Json e{{"id", "x"}, {"result", 1}};
    CHECK(append_fixture(doc, e));
    CHECK(append_fixture(doc, e));
    CHECK(doc["entries"].size() == 1);
    Json changed{{"id", "x"}, {"result", 2}};
    CHECK_FALSE(append_fixture(doc, changed));
    CHECK(doc["entries"][0]["result"] == 1);
}

TEST_CASE("cli exit codes")
{
    CHECK(cli({"witness", "check", "--s", "chain:2", "--t", "chain:2", "--u", "chain:2"}).code == 0);
    CHECK(cli({"witness", "check", "--s", "chain:2", "--t", "chain:3", "--u", "chain:3"}).code == 1);
    auto bad = cli({"trees", "info", R"({"kind":"tree","parent":[null,)"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("malformed JSON") != std::string::npos);
    CHECK(cli({"witness", "search", "--mode", "chain", "--s", "chain:2", "--t", "chain:3", "--max-vertices", "8", "--max-nodes", "1"}).code == 3);
    CHECK(cli({"witness", "search", "--mode", "chain", "--s", "chain:2", "--t", "chain:3", "--max-vertices", "4"}).code == 1);
    CHECK(cli({"no-such-command"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"rs", "injection", R"({"dom":{"parent":[null,0,0]},"cod":{"parent":[null,0]},"values":[0,1,1]})"}).code == 2);
    auto v = cli({"--version", "--json"});
    CHECK(v.code == 0);
    CHECK(parse_json(v.out)["schemas"] == schema_versions());
}

TEST_CASE("cli output is deterministic across jobs")
{
    std::vector<std::string> args{"--json", "witness", "search", "--mode", "mn", "--b", "2", "--s", "chain:2", "--t", "chain:2", "--max-vertices", "4"};
    auto one = cli(args);
    args.insert(args.begin(), {"--jobs", "3"});
    auto three = cli(args);
    CHECK(one.code == 0);
    CHECK(one.out == three.out);
    CHECK(one.out == cli({"--json", "witness", "search", "--mode", "mn", "--b", "2", "--s", "chain:2", "--t", "chain:2", "--max-vertices", "4"}).out);
}

TEST_CASE("config file supplies option defaults")
{
    const auto path = temp_path("config.ini");
    {
        std::ofstream(path) << "json=true\nmax-nodes=1\n";
    }
    auto r = cli({"--config", path, "witness", "search", "--mode", "chain", "--s", "chain:2", "--t", "chain:3", "--max-vertices", "8"});
    CHECK(r.code == 3);
    CHECK(parse_json(r.out)["verdict"] == "cap_exceeded");
    std::remove(path.c_str());
}

TEST_CASE("saved reports replay to the same verdict")
{
    const auto path = temp_path("report.json");
    auto r = cli({"--out", path, "witness", "check", "--b", "2", "--s", "chain:2", "--t", "chain:3", "--u", "chain:3"});
    CHECK(r.code == 1);
    auto replay = cli({"--json", "replay", path});
    CHECK(replay.code == 0);
    auto j = parse_json(replay.out);
    CHECK(j["method"] == "counterexample");
    CHECK(j["replayed_verdict"] == "fails");

    // A tampered counterexample no longer avoids the edge.
    auto rep = read_json_file(path);
    rep["report"]["counterexample"]["coloring"] = {0, 0, 0};
    CHECK(replay_report(rep).exit_code == 1);

    auto hj = run_command("hj search", parse_json(R"({"a":1,"l":2,"b":2,"max_k":2,"certificate":true})")).report;
    CHECK(hj["certificate_verified"] == true);
    auto hr = replay_report(hj);
    CHECK(hr.exit_code == 0);
    CHECK(hr.report["method"] == "certificate");

    auto cr = run_command("framework check-r", parse_json(R"({"bound":2,"b":2})")).report;
    CHECK(replay_report(cr).exit_code == 0);
    std::remove(path.c_str());
}

TEST_CASE("every command runs on a small instance")
{
    const char* cases[][2] = {
        {"trees info", R"({"tree":[null,0,0]})"},
        {"trees plus", R"({"tree":[null,0]})"},
        {"trees assemble-v", R"({"tree":[null,0,0]})"},
        {"enum trees", R"({"n":4})"},
        {"enum forests", R"({"n":3,"count_only":true})"},
        {"enum maps", R"({"kind":"sealed","dom":[null,0,1],"cod":[null,0]})"},
        {"rs classify", R"({"map":{"dom":{"parent":[null,0,1]},"cod":{"parent":[null,0]},"values":[0,0,1]}})"},
        {"rs injection", R"({"map":{"dom":{"parent":[null,0,1]},"cod":{"parent":[null,0]},"values":[0,0,1]}})"},
        {"rs compose", R"({"f":{"dom":{"parent":[null,0,1]},"cod":{"parent":[null,0]},"values":[0,1,1]},
                           "g":{"dom":{"parent":[null,0,1,2]},"cod":{"parent":[null,0,1]},"values":[0,1,1,2]}})"},
        {"framework check-axioms", R"({"bound":3})"},
        {"framework check-lp", R"({"bound":3,"b":2})"},
        {"hj pro", R"({"as":[1,1],"ls":[1,1],"b":2,"max_k":2,"mode":"reduced"})"},
        {"hj frco", R"({"s":{"kind":"forest","parent":[null]},"b":2})"},
        {"hj pipeline", R"({"as":[1],"ts":[[null]],"b":1})"},
        {"hj verify-trtr", R"({"max_vertices":2,"max_k":2,"max_a":1})"},
        {"witness derive", R"({"b":1,"s":[null],"t":[null],"v":[null,0]})"},
        {"bridge prvo", R"({"values":[0,0,1],"k":2})"},
        {"bridge leeb", R"({"s":[null,0],"t":[null,0],"u":[null,0,1]})"},
        {"bridge gr", R"({"max_u":3,"max_l":2})"},
    };
    for (const auto& c : cases) {
        CAPTURE(c[0]);
        auto out = run_command(c[0], parse_json(c[1]));
        CHECK(out.exit_code == 0);
        CHECK(out.report["verdict"] == "holds");
    }
    auto rs = run_command("rs compose", parse_json(cases[8][1])).report;
    CHECK(rs["result"]["values"] == Json{0, 1, 1, 1});
    CHECK(run_command("bridge prvo", parse_json(R"({"values":[0,2,1],"k":3})")).report["prvo"] == false);
    CHECK(run_command("witness derive", parse_json(R"({"b":2,"s":[null,0],"t":[null,0,1],"v":[null,0]})")).exit_code == 1);
    CHECK(command_names().size() == 23);
}
