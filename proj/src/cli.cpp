#include "ramsey/cli.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "ramsey/reports.hpp"

namespace ramsey {

namespace {

// A tree argument: a JSON file, inline JSON (object or parent array), or
// one of the shorthands pt, chain:N, antichain:N.
Json tree_arg(const std::string& arg, bool forest)
{
    auto shorthand = [&](const std::string& prefix) -> std::optional<int> {
        if (arg.rfind(prefix, 0) != 0)
            return std::nullopt;
        try {
            std::size_t used = 0;
            int n = std::stoi(arg.substr(prefix.size()), &used);
            if (used + prefix.size() == arg.size() && n >= 0)
                return n;
        } catch (const std::exception&) {
        }
        throw Error(Errc::InvalidArgument, "bad tree shorthand \"" + arg + "\"");
    };
    if (arg == "pt")
        return forest ? to_json(OrderedForest::antichain(1)) : to_json(OrderedTree::chain(1));
    if (auto n = shorthand("chain:"))
        return forest ? to_json(OrderedForest::chain(*n)) : to_json(OrderedTree::chain(*n));
    if (auto n = shorthand("antichain:"))
        return forest ? to_json(OrderedForest::antichain(*n)) : to_json(one_plus(OrderedForest::antichain(*n)));
    Json j = (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) ? parse_json(arg) : read_json_file(arg);
    if (j.is_array())
        j = Json{{"kind", forest ? "forest" : "tree"}, {"parent", j}};
    return j;
}

Json doc_arg(const std::string& arg)
{
    return (!arg.empty() && arg[0] == '{') ? parse_json(arg) : read_json_file(arg);
}

void render_text(const Json& r, std::ostream& out)
{
    for (const auto& [key, value] : r.items()) {
        if (key == "schema_version" || key == "kind" || key == "params")
            continue;
        std::string s = value.dump();
        if (value.is_string())
            s = value.get<std::string>();
        else if (s.size() > 160)
            s = "<" + std::to_string(value.size()) + " entries; use --json>";
        out << key << ": " << s << "\n";
    }
}

struct Globals {
    bool json = false;
    bool timing = false;
    bool version = false;
    std::string out_file;
    RunOptions run;
};

struct Pending {
    std::string command;
    Json params = Json::object();
    CLI::App* leaf = nullptr;
};

Outcome fixtures_cmd(bool record, const std::string& file, const std::string& only, const RunOptions& run)
{
    Json doc = load_fixtures(file);
    Json r{{"schema_version", kReportSchema},
           {"kind", "report"},
           {"command", record ? "fixtures record" : "fixtures check"},
           {"params", Json{{"file", file}, {"only", only}}}};
    Json entries = Json::array();
    bool ok = true;
    for (const auto& spec : standard_fixtures()) {
        if (!only.empty() && spec.id.rfind(only, 0) != 0)
            continue;
        Json fresh = compute_fixture(spec, run);
        const Json* stored = find_fixture(doc, spec.id);
        std::string status;
        if (!stored)
            status = record ? "added" : "missing";
        else
            status = *stored == fresh ? "equal" : "conflict";
        if (record && !stored)
            append_fixture(doc, fresh);
        ok = ok && (status == "equal" || status == "added");
        entries.push_back(Json{{"id", spec.id}, {"status", status}});
    }
    if (record)
        write_json_file(file, doc);
    r["verdict"] = verdict_json(ok ? Verdict::Holds : Verdict::Fails);
    r["entries"] = std::move(entries);
    return {std::move(r), ok ? 0 : 1};
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Ramsey witnesses, rigid surjections and Hales-Jewett searches on finite ordered trees", "ramsey"};
    app.fallthrough();
    app.set_config("--config", "", "key=value file supplying option defaults");

    Globals g;
    g.run.max_nodes = default_max_nodes();
    app.add_flag("--json", g.json, "machine-readable JSON output");
    app.add_flag("--timing", g.timing, "include elapsed_ms in the report");
    app.add_flag("--version", g.version, "print the tool and schema versions");
    app.add_flag("--normalize", g.run.normalize, "canonicalize non-canonical input trees");
    app.add_option("--jobs", g.run.jobs, "worker threads (output does not depend on it)")->check(CLI::PositiveNumber);
    app.add_option("--max-nodes", g.run.max_nodes, "search node cap (default RAMSEY_MAX_NODES or 2e8)");
    app.add_option("--max-colorings", g.run.max_colorings, "exhaustive colouring cap for certificates and pipelines");
    app.add_option("--out", g.out_file, "also write the JSON report to this file");

    Pending job;
    // Per subcommand, steps that turn raw argument strings into params. They
    // run after parsing so that bad input is reported as an input error.
    std::map<CLI::App*, std::vector<std::function<void()>>> preps;
    auto prep = [&preps](CLI::App* sub, std::function<void()> f) { preps[sub].push_back(std::move(f)); };

    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
        auto* sub = parent->add_subcommand(name, help);
        std::string full = parent->get_name() + " " + name;
        sub->callback([&job, full, sub] {
            job.command = full;
            job.leaf = sub;
        });
        return sub;
    };
    struct TreeOpt {
        std::string key;
        std::string raw;
        bool forest = false;
    };
    std::vector<std::unique_ptr<TreeOpt>> tree_opts;
    auto tree_option = [&](CLI::App* sub, const std::string& flag, const std::string& key, bool required, bool forest = false) {
        tree_opts.push_back(std::make_unique<TreeOpt>(TreeOpt{key, "", forest}));
        TreeOpt* t = tree_opts.back().get();
        auto* opt = sub->add_option(flag, t->raw, "tree: JSON file, inline JSON, pt, chain:N or antichain:N");
        if (required)
            opt->required();
        prep(sub, [&job, t] {
            if (!t->raw.empty())
                job.params[t->key] = tree_arg(t->raw, t->forest);
        });
    };
    std::vector<std::unique_ptr<int>> ints;
    auto int_option = [&](CLI::App* sub, const std::string& flag, const std::string& key, std::optional<int> def) {
        ints.push_back(std::make_unique<int>(def.value_or(0)));
        int* v = ints.back().get();
        auto* opt = sub->add_option(flag, *v);
        if (!def)
            opt->required();
        prep(sub, [&job, v, key, opt] {
            if (opt->count() > 0 || opt->get_required() == false)
                job.params[key] = *v;
        });
    };
    auto optional_int = [&](CLI::App* sub, const std::string& flag, const std::string& key) {
        ints.push_back(std::make_unique<int>(0));
        int* v = ints.back().get();
        auto* opt = sub->add_option(flag, *v);
        prep(sub, [&job, v, key, opt] {
            if (opt->count() > 0)
                job.params[key] = *v;
        });
    };
    std::vector<std::unique_ptr<std::vector<int>>> lists;
    auto list_option = [&](CLI::App* sub, const std::string& flag, const std::string& key) {
        lists.push_back(std::make_unique<std::vector<int>>());
        auto* v = lists.back().get();
        sub->add_option(flag, *v, "comma-separated integers")->delimiter(',')->required();
        prep(sub, [&job, v, key] { job.params[key] = *v; });
    };
    std::vector<std::unique_ptr<std::string>> strs;
    auto str_option = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& def,
                          std::vector<std::string> choices) {
        strs.push_back(std::make_unique<std::string>(def));
        auto* v = strs.back().get();
        auto* opt = sub->add_option(flag, *v)->capture_default_str();
        if (!choices.empty())
            opt->check(CLI::IsMember(choices));
        prep(sub, [&job, v, key] { job.params[key] = *v; });
    };
    std::vector<std::unique_ptr<bool>> bools;
    auto bool_flag = [&](CLI::App* sub, const std::string& flag, const std::string& key) {
        bools.push_back(std::make_unique<bool>(false));
        auto* v = bools.back().get();
        sub->add_flag(flag, *v);
        prep(sub, [&job, v, key] { job.params[key] = *v; });
    };

    // trees
    auto* trees = app.add_subcommand("trees", "inspect ordered trees");
    for (auto [name, help] : {std::pair{"info", "canonical form, size, height, leaves"},
                              std::pair{"plus", "S with one extra last successor of the root"},
                              std::pair{"assemble-v", "the tree V built from the leaves of U"}}) {
        auto* s = leaf(trees, name, help);
        tree_option(s, "tree", "tree", true);
    }

    // rs
    auto* rs = app.add_subcommand("rs", "maps between trees");
    auto map_option = [&](CLI::App* sub, const std::string& flag, const std::string& key) {
        strs.push_back(std::make_unique<std::string>());
        auto* v = strs.back().get();
        sub->add_option(flag, *v, "map: JSON file or inline JSON")->required();
        prep(sub, [&job, v, key] { job.params[key] = doc_arg(*v); });
    };
    {
        auto* s = leaf(rs, "classify", "morphism / embedding / rigid / sealed flags");
        map_option(s, "map", "map");
        int_option(s, "--a-prefix", "a_prefix", 0);
        s = leaf(rs, "injection", "the injection of a rigid surjection");
        map_option(s, "map", "map");
        s = leaf(rs, "compose", "f∘g");
        map_option(s, "--f", "f");
        map_option(s, "--g", "g");
    }

    // enum
    auto* en = app.add_subcommand("enum", "enumerate trees, forests and maps");
    {
        auto* s = leaf(en, "trees", "all trees with n vertices");
        int_option(s, "--n", "n", std::nullopt);
        bool_flag(s, "--count-only", "count_only");
        s = leaf(en, "forests", "all forests with n vertices");
        int_option(s, "--n", "n", std::nullopt);
        bool_flag(s, "--count-only", "count_only");
        s = leaf(en, "maps", "embeddings dom -> cod or rigid surjections dom -> cod");
        str_option(s, "--kind", "kind", "rigid", {"embedding", "rigid", "sealed"});
        tree_option(s, "--dom", "dom", true);
        tree_option(s, "--cod", "cod", true);
        bool_flag(s, "--count-only", "count_only");
    }

    // framework
    auto* fw = app.add_subcommand("framework", "the composition space of sealed rigid surjections");
    {
        auto* s = leaf(fw, "check-axioms", "space and domain axioms over trees with at most N vertices");
        int_option(s, "--bound", "bound", 3);
        s = leaf(fw, "check-r", "condition (R) for one sampled pair, or all of them");
        int_option(s, "--bound", "bound", 3);
        int_option(s, "--b", "b", 2);
        optional_int(s, "--f", "f");
        optional_int(s, "--p", "p");
        s = leaf(fw, "check-lp", "condition (LP) for one instance, or the (LP)/(R) comparison");
        int_option(s, "--bound", "bound", 3);
        int_option(s, "--b", "b", 2);
        optional_int(s, "--f", "f");
        optional_int(s, "--p", "p");
        optional_int(s, "--y", "y");
        optional_int(s, "--a", "a");
    }

    // hj
    auto* hj = app.add_subcommand("hj", "Hales-Jewett type searches");
    {
        auto* s = leaf(hj, "search", "least |I| for sealed A-rigid maps");
        int_option(s, "--a", "a", std::nullopt);
        int_option(s, "--l", "l", std::nullopt);
        int_option(s, "--b", "b", 2);
        int_option(s, "--max-k", "max_k", 3);
        bool_flag(s, "--certificate", "certificate");
        s = leaf(hj, "pro", "least |I| for the product form");
        list_option(s, "--as", "as");
        list_option(s, "--ls", "ls");
        int_option(s, "--b", "b", 2);
        int_option(s, "--max-k", "max_k", 3);
        str_option(s, "--mode", "mode", "direct", {"direct", "reduced"});
        s = leaf(hj, "frco", "least forest whose vertex colourings contain a monochromatic copy");
        tree_option(s, "--s", "s", true, true);
        int_option(s, "--b", "b", 2);
        int_option(s, "--max-size", "max_size", 6);
        s = leaf(hj, "pipeline", "V_i and t_i for the (LP) statement, verified per colouring");
        list_option(s, "--as", "as");
        auto ts_raw = std::make_shared<std::vector<std::string>>();
        s->add_option("--t", *ts_raw, "forest T_i (repeat)")->required();
        prep(s, [&job, ts_raw] {
            Json ts = Json::array();
            for (const auto& t : *ts_raw)
                ts.push_back(tree_arg(t, true));
            job.params["ts"] = ts;
        });
        int_option(s, "--b", "b", 2);
        int_option(s, "--max-frco-size", "max_frco_size", 6);
        int_option(s, "--max-k", "max_k", 4);
        s = leaf(hj, "verify-trtr", "transfer identity over all small forests and maps");
        int_option(s, "--max-vertices", "max_vertices", 3);
        int_option(s, "--max-k", "max_k", 2);
        int_option(s, "--max-a", "max_a", 2);
        int_option(s, "--literal-limit", "literal_limit", 2'000'000);
    }

    // witness
    auto* wi = app.add_subcommand("witness", "Ramsey witnesses");
    {
        auto* s = leaf(wi, "check", "is U a witness for (b, S, T)");
        str_option(s, "--mode", "mode", "mn", {"mn", "sealed"});
        int_option(s, "--b", "b", 2);
        tree_option(s, "--s", "s", true);
        tree_option(s, "--t", "t", true);
        tree_option(s, "--u", "u", true);
        s = leaf(wi, "search", "first witness in enumeration order");
        str_option(s, "--mode", "mode", "mn", {"mn", "sealed", "chain"});
        int_option(s, "--b", "b", 2);
        tree_option(s, "--s", "s", true);
        tree_option(s, "--t", "t", true);
        int_option(s, "--max-vertices", "max_vertices", 6);
        s = leaf(wi, "derive", "assemble a witness from a sealed witness V for (S+, T+)");
        int_option(s, "--b", "b", 2);
        tree_option(s, "--s", "s", true);
        tree_option(s, "--t", "t", true);
        tree_option(s, "--v", "v", true);
    }

    // bridge
    auto* br = app.add_subcommand("bridge", "classical specializations");
    {
        auto* s = leaf(br, "prvo", "rigid surjections of chains: two definitions, or all maps up to --max-n");
        auto vals = std::make_shared<std::vector<int>>();
        auto* vopt = s->add_option("--values", *vals, "f as comma-separated values")->delimiter(',');
        optional_int(s, "--k", "k");
        optional_int(s, "--max-n", "max_n");
        prep(s, [&job, vals, vopt] {
            if (vopt->count() > 0)
                job.params["values"] = *vals;
        });
        s = leaf(br, "leeb", "colourings of embeddings transported to rigid surjections");
        tree_option(s, "--s", "s", true);
        tree_option(s, "--t", "t", true);
        tree_option(s, "--u", "u", true);
        auto col = std::make_shared<std::string>();
        s->add_option("--coloring", *col, "coloring JSON indexed like enum maps --kind embedding");
        prep(s, [&job, col] {
            if (!col->empty())
                job.params["coloring"] = doc_arg(*col);
        });
        s = leaf(br, "gr", "rigid surjections onto chains are rigid for the lexicographic order");
        int_option(s, "--max-u", "max_u", 5);
        int_option(s, "--max-l", "max_l", 3);
    }

    // replay, fixtures
    auto* rp = app.add_subcommand("replay", "re-derive the verdict of a saved report");
    std::string replay_file;
    rp->add_option("report", replay_file)->required();
    rp->callback([&job] { job.command = "replay"; });

    auto* fx = app.add_subcommand("fixtures", "regression fixtures");
    std::string fixtures_file = "fixtures/witnesses.json";
    std::string only;
    for (auto name : {"check", "record"}) {
        auto* s = leaf(fx, name, std::string(name) == "check" ? "recompute and compare" : "append missing entries");
        s->add_option("--file", fixtures_file)->capture_default_str();
        s->add_option("--only", only, "id prefix");
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (g.version) {
        Json v{{"version", kToolVersion}, {"schemas", schema_versions()}};
        if (g.json)
            out << dump_json(v);
        else {
            out << "ramsey " << kToolVersion << "\n";
            for (const auto& [k, n] : v["schemas"].items())
                out << "schema " << k << " " << n.dump() << "\n";
        }
        return 0;
    }
    if (job.command.empty()) {
        err << app.help();
        return 2;
    }

    try {
        if (job.leaf)
            for (auto& f : preps[job.leaf])
                f();
        const auto start = std::chrono::steady_clock::now();
        Outcome res;
        if (job.command == "replay")
            res = replay_report(read_json_file(replay_file), g.run);
        else if (job.command == "fixtures check" || job.command == "fixtures record")
            res = fixtures_cmd(job.command == "fixtures record", fixtures_file, only, g.run);
        else
            res = run_command(job.command, job.params, g.run);
        if (g.timing)
            res.report["elapsed_ms"] =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (!g.out_file.empty())
            write_json_file(g.out_file, res.report);
        if (g.json)
            out << dump_json(res.report);
        else
            render_text(res.report, out);
        return res.exit_code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace ramsey
