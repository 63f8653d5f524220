// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ramsey/cli.hpp"
#include "ramsey/enumeration.hpp"
#include "ramsey/framework.hpp"
#include "ramsey/hales_jewett.hpp"
#include "ramsey/json_io.hpp"
#include "ramsey/properties.hpp"
#include "ramsey/reports.hpp"
#include "ramsey/witness.hpp"

using namespace ramsey;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& detail)
{
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << detail << std::endl;
    if (!ok)
        ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", s);
    return buf;
}

void lemma_suite()
{
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream d;
    for (const auto& r : check_lemma_suite(5, 6)) {
        ok = ok && r.ok();
        d << r.name << " " << r.checked << "/" << r.violations << "; ";
        if (!r.ok())
            d << "[" << r.first_violation << "] ";
    }
    d << "(checked/violations) " << fmt_seconds(seconds_since(t0));
    report(1, ok, d.str());
}

void axiom_suite()
{
    Space space(4);
    auto fs = sample_F(space);
    auto ps = sample_P(space);
    bool ok = true;
    std::uint64_t checked = 0;
    std::ostringstream bad;
    auto take = [&](const std::vector<AxiomReport>& rs) {
        for (const auto& r : rs) {
            checked += r.checked;
            if (!r.ok() || r.checked == 0) {
                ok = false;
                bad << " " << r.axiom;
            }
        }
    };
    auto sa = check_space_axioms(space);
    auto da = check_domain_axioms(space, fs, ps);
    take(sa);
    take(da);
    std::ostringstream d;
    d << sa.size() + da.size() << " axioms, " << checked << " instances over " << space.size() << " elements, F "
      << fs.size() << ", P " << ps.size();
    if (!ok)
        d << "; failing:" << bad.str();
    report(2, ok, d.str());
}

void bridge_suite()
{
    auto chains = check_chain_counts(6);
    auto prvo = check_prvo_agreement(6);
    auto gr = check_gr(5, 3);
    // Maps [n] -> [k] that are rigid by the chain definition, counted directly.
    bool counts_ok = true;
    for (int n = 1; n <= 6; ++n)
        for (int k = 1; k <= n; ++k) {
            std::uint64_t rigid = 0;
            for_each_coloring(n, k, false, [&](const std::vector<int>& f) {
                rigid += bridge_prvo(std::vector<Vertex>(f.begin(), f.end()), k).prvo ? 1 : 0;
            });
            counts_ok = counts_ok && rigid == stirling2(n, k);
        }
    std::ostringstream d;
    d << "stirling " << chains.checked << "/" << chains.violations << ", prvo " << prvo.checked << "/"
      << prvo.violations << ", gr " << gr.checked << "/" << gr.violations << " (checked/violations), rigid chain maps "
      << (counts_ok ? "match" : "DO NOT match") << " S(n,k) for n <= 6";
    report(3, counts_ok && chains.ok() && prvo.ok() && gr.ok(), d.str());
}

void transfer_suite()
{
    auto t0 = std::chrono::steady_clock::now();
    auto cases = verify_transfer_all(4, 2, 2, 2'000'000);
    std::uint64_t maps = 0, rho = 0, violations = 0, patterned = 0;
    std::string first;
    for (const auto& c : cases) {
        maps += c.maps;
        rho += c.rho_checks;
        violations += c.violations;
        patterned += c.literal ? 0 : 1;
        if (first.empty() && c.violations)
            first = c.first_violation;
    }
    std::ostringstream d;
    d << cases.size() << " (S, |I|, |A|) cases, " << maps << " maps p (" << patterned
      << " cases by hit pattern), " << rho << " rho checks, " << violations << " violations "
      << fmt_seconds(seconds_since(t0));
    if (!first.empty())
        d << " [" << first << "]";
    report(4, violations == 0 && !cases.empty(), d.str());
}

const Json* stored_fixture(const Json& doc, const std::string& id)
{
    for (const auto& e : doc.at("entries"))
        if (e.at("id") == id)
            return &e;
    return nullptr;
}

void witness_fixtures()
{
    bool ok = true;
    std::ostringstream d;

    // (a) trivial cases: S = T, S a point, b = 1.
    int trivial = 0;
    auto trees = enum_trees_up_to(4);
    const auto pt = OrderedTree::chain(1);
    for (const auto& t : trees) {
        ok = ok && check_witness_mn(2, t, t, t).verdict == Verdict::Holds;
        ok = ok && check_witness_mn(3, pt, t, t).verdict == Verdict::Holds;
        for (const auto& s : trees)
            if (s.size() <= t.size() && count_rigid_surjections(t, s) > 0) {
                ok = ok && check_witness_mn(1, s, t, t).verdict == Verdict::Holds;
                ++trivial;
            }
        trivial += 2;
    }
    auto k1 = search_witness(2, pt, OrderedTree::chain(3), SearchMode::Chain, 6);
    ok = ok && k1.witness && *k1.witness == OrderedTree::chain(3);
    d << "(a) " << trivial << " trivial instances hold";

    // (b) the counterexample replays, through the saved report as well.
    auto c2 = OrderedTree::chain(2), c3 = OrderedTree::chain(3);
    auto inst = mn_instance(c2, c3, c3);
    auto wr = check_witness_mn(2, c2, c3, c3);
    bool b_ok = wr.verdict == Verdict::Fails && replay_counterexample(inst, wr);
    Json params{{"mode", "mn"}, {"b", 2}, {"s", to_json(c2)}, {"t", to_json(c3)}, {"u", to_json(c3)}};
    auto saved = run_command("witness check", params).report;
    auto replayed = replay_report(parse_json(dump_json(saved)));
    b_ok = b_ok && replayed.exit_code == 0 && replayed.report.at("method") == "counterexample";
    ok = ok && b_ok;
    d << "; (b) C2,C3,C3 fails, coloring " << Json(wr.coloring).dump() << (b_ok ? " replays" : " does NOT replay");

    // (c) minimal chain witness, twice, against the fixtures file.
    const FixtureSpec* spec = nullptr;
    for (const auto& s : standard_fixtures())
        if (s.id == "witness/chain-b2-k2-l3")
            spec = &s;
    auto doc = load_fixtures(RAMSEY_FIXTURES_FILE);
    const Json* stored = stored_fixture(doc, "witness/chain-b2-k2-l3");
    bool c_ok = spec && stored;
    if (c_ok) {
        auto first = compute_fixture(*spec);
        auto second = compute_fixture(*spec);
        RunOptions three;
        three.jobs = 3;
        auto third = compute_fixture(*spec, three);
        c_ok = first == second && first == third && first == *stored &&
               first.at("result").at("reverified") == "holds";
        auto w = tree_from_json(first.at("result").at("witness"));
        // Smaller chains fail, checked without the solver.
        for (int m = 1; m < w.size(); ++m)
            c_ok = c_ok && unpruned_check(mn_instance(c2, c3, OrderedTree::chain(m)).system, 2).verdict != Verdict::Holds;
        c_ok = c_ok && unpruned_check(mn_instance(c2, c3, w).system, 2).verdict == Verdict::Holds;
        d << "; (c) minimal m = " << w.size() << ", stable over 3 runs, matches fixture";
    } else {
        d << "; (c) fixture missing";
    }
    ok = ok && c_ok;
    report(5, ok, d.str());
}

void assembly_end_to_end()
{
    std::ostringstream d;
    bool ok = true;
    auto run = [&](const OrderedTree& s, const OrderedTree& t, int max_vertices) {
        auto sp = assemble_plus(s).tree, tp = assemble_plus(t).tree;
        auto ws = search_witness(2, sp, tp, SearchMode::Sealed, max_vertices);
        if (!ws.witness) {
            ok = false;
            d << "no sealed witness for |S|=" << s.size() << ",|T|=" << t.size() << " within caps; ";
            return;
        }
        auto dw = derive_mn_from_sealed(2, s, t, *ws.witness);
        auto check = check_witness_mn(2, s, t, dw.assembled);
        bool one = dw.mn_report.verdict == Verdict::Holds && check.verdict == Verdict::Holds &&
                   unpruned_check(mn_instance(s, t, dw.assembled).system, 2).verdict == Verdict::Holds;
        ok = ok && one;
        d << "b=2 S=C" << s.size() << " T=C" << t.size() << ": sealed V " << ws.witness->size()
          << " vertices, assembled U " << dw.assembled.size() << " vertices, mn " << to_string(check.verdict)
          << " (" << check.items << " items, " << dw.identities_checked << " identities)";
    };
    run(OrderedTree::chain(2), OrderedTree::chain(2), 5);
    d << "; ";
    run(OrderedTree::chain(2), OrderedTree::chain(3), 7);
    report(6, ok, d.str());
}

struct CliRun {
    int code;
    std::string out;
};

CliRun cli(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    int code = parse_and_dispatch(args, out, err);
    return {code, out.str() + "\n--stderr--\n" + err.str()};
}

void determinism()
{
    const std::string report_file = (std::filesystem::temp_directory_path() / "ramsey_acceptance_report.json").string();
    const std::vector<std::vector<std::string>> commands = {
        {"trees", "info", "[null,0,0,1]"},
        {"trees", "plus", "chain:3"},
        {"trees", "assemble-v", "[null,0,0,1]"},
        {"enum", "trees", "--n", "5"},
        {"enum", "forests", "--n", "4"},
        {"enum", "maps", "--kind", "rigid", "--dom", "[null,0,1,1]", "--cod", "[null,0,0]"},
        {"enum", "maps", "--kind", "embedding", "--dom", "chain:2", "--cod", "[null,0,1,1]"},
        {"rs", "classify", R"({"dom":{"parent":[null,0,1]},"cod":{"parent":[null,0]},"values":[0,0,1]})"},
        {"rs", "injection", R"({"dom":{"parent":[null,0,1]},"cod":{"parent":[null,0]},"values":[0,0,1]})"},
        {"rs", "compose", "--f", R"({"dom":{"parent":[null,0,1]},"cod":{"parent":[null,0]},"values":[0,1,1]})", "--g",
         R"({"dom":{"parent":[null,0,1,2]},"cod":{"parent":[null,0,1]},"values":[0,1,1,2]})"},
        {"framework", "check-axioms", "--bound", "3"},
        {"framework", "check-r", "--bound", "3"},
        {"framework", "check-r", "--bound", "3", "--f", "0", "--p", "1"},
        {"framework", "check-lp", "--bound", "3"},
        {"hj", "search", "--a", "2", "--l", "2", "--certificate"},
        {"hj", "pro", "--as", "2,1", "--ls", "2,1", "--mode", "reduced"},
        {"hj", "frco", "--s", "antichain:2"},
        {"hj", "pipeline", "--as", "1,2", "--t", "pt", "--t", "pt"},
        {"hj", "verify-trtr", "--max-vertices", "2"},
        {"witness", "check", "--s", "chain:2", "--t", "chain:3", "--u", "chain:3"},
        {"witness", "check", "--mode", "sealed", "--s", "[null,0,0]", "--t", "[null,0,0]", "--u", "[null,0,0]"},
        {"witness", "search", "--mode", "chain", "--s", "chain:2", "--t", "chain:3", "--max-vertices", "8"},
        {"witness", "search", "--mode", "sealed", "--s", "[null,0,0]", "--t", "[null,0,1,0]", "--max-vertices", "7"},
        {"witness", "search", "--s", "chain:2", "--t", "chain:2", "--max-vertices", "4"},
        {"witness", "derive", "--s", "chain:2", "--t", "chain:3", "--v", "[null,0,1,1,3,3,0]"},
        {"bridge", "prvo", "--values", "0,1,0,2", "--k", "3"},
        {"bridge", "prvo", "--max-n", "5"},
        {"bridge", "leeb", "--s", "chain:2", "--t", "chain:2", "--u", "[null,0,1,1]"},
        {"bridge", "gr", "--max-u", "4"},
        {"--out", report_file, "witness", "check", "--s", "chain:2", "--t", "chain:3", "--u", "chain:3"},
        {"replay", report_file},
        {"fixtures", "check", "--file", RAMSEY_FIXTURES_FILE, "--only", "witness/"},
        {"witness", "search", "--mode", "chain", "--s", "chain:2", "--t", "chain:3", "--max-nodes", "1"},
        {"trees", "info", "[null,0,0,1]", "--normalize"},
        {"trees", "info", "{not json"},
    };
    std::vector<std::string> covered;
    int compared = 0;
    bool ok = true;
    std::ostringstream bad;
    for (const auto& base : commands) {
        for (bool json : {false, true}) {
            auto args = base;
            if (json)
                args.insert(args.begin(), "--json");
            auto first = cli(args);
            auto second = cli(args);
            for (const char* jobs : {"1", "2", "4"}) {
                auto with_jobs = args;
                with_jobs.insert(with_jobs.begin(), {"--jobs", jobs});
                auto again = cli(with_jobs);
                if (again.out != first.out || again.code != first.code) {
                    ok = false;
                    bad << " [" << base[0] << " " << base[1] << " --jobs " << jobs << "]";
                }
                ++compared;
            }
            if (second.out != first.out || second.code != first.code) {
                ok = false;
                bad << " [" << base[0] << " " << base[1] << " rerun]";
            }
            ++compared;
        }
    }
    // Every leaf command is exercised at least once.
    std::vector<std::string> missing;
    for (const auto& name : command_names()) {
        bool seen = false;
        for (const auto& c : commands)
            for (std::size_t i = 0; i + 1 < c.size(); ++i)
                seen = seen || c[i] + " " + c[i + 1] == name || c[i] == name;
        if (!seen)
            missing.push_back(name);
    }
    std::remove(report_file.c_str());
    std::ostringstream d;
    d << commands.size() << " invocations, text and JSON, " << compared
      << " comparisons across reruns and --jobs 1/2/4, byte-identical";
    if (!missing.empty()) {
        ok = false;
        d << "; not covered:";
        for (const auto& m : missing)
            d << " " << m;
    }
    if (!ok)
        d << "; differing:" << bad.str();
    report(7, ok, d.str());
}

}  // namespace

int main()
{
    auto guard = [](int n, void (*fn)()) {
        try {
            fn();
        } catch (const std::exception& e) {
            report(n, false, std::string("exception: ") + e.what());
        }
    };
    guard(1, lemma_suite);
    guard(2, axiom_suite);
    guard(3, bridge_suite);
    guard(4, transfer_suite);
    guard(5, witness_fixtures);
    guard(6, assembly_end_to_end);
    guard(7, determinism);
    std::cout << (failures ? "acceptance: FAILED" : "acceptance: all criteria passed") << std::endl;
    return failures ? 1 : 0;
}
