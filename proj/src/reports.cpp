#include "ramsey/reports.hpp"

#include <functional>
#include <map>
#include <optional>

#include "ramsey/enumeration.hpp"
#include "ramsey/framework.hpp"
#include "ramsey/hales_jewett.hpp"
#include "ramsey/witness.hpp"

namespace ramsey {

namespace {

const Json& need(const Json& p, const std::string& key)
{
    if (!p.is_object() || !p.contains(key) || p.at(key).is_null())
        throw Error(Errc::InvalidArgument, "missing parameter \"" + key + "\"");
    return p.at(key);
}

bool has(const Json& p, const std::string& key) { return p.is_object() && p.contains(key) && !p.at(key).is_null(); }

int get_int(const Json& p, const std::string& key, std::optional<int> def = {})
{
    if (!has(p, key)) {
        if (def)
            return *def;
        need(p, key);
    }
    const Json& v = p.at(key);
    if (!v.is_number_integer())
        throw Error(Errc::InvalidArgument, "parameter \"" + key + "\" must be an integer");
    return v.get<int>();
}

std::uint64_t get_u64(const Json& p, const std::string& key, std::uint64_t def)
{
    if (!has(p, key))
        return def;
    const Json& v = p.at(key);
    if (!v.is_number_unsigned())
        throw Error(Errc::InvalidArgument, "parameter \"" + key + "\" must be a non-negative integer");
    return v.get<std::uint64_t>();
}

bool get_bool(const Json& p, const std::string& key, bool def)
{
    if (!has(p, key))
        return def;
    if (!p.at(key).is_boolean())
        throw Error(Errc::InvalidArgument, "parameter \"" + key + "\" must be a boolean");
    return p.at(key).get<bool>();
}

std::string get_str(const Json& p, const std::string& key, std::optional<std::string> def = {})
{
    if (!has(p, key)) {
        if (def)
            return *def;
        need(p, key);
    }
    if (!p.at(key).is_string())
        throw Error(Errc::InvalidArgument, "parameter \"" + key + "\" must be a string");
    return p.at(key).get<std::string>();
}

std::vector<int> get_ints(const Json& p, const std::string& key)
{
    const Json& v = need(p, key);
    if (!v.is_array())
        throw Error(Errc::InvalidArgument, "parameter \"" + key + "\" must be an array");
    std::vector<int> out;
    for (const auto& x : v) {
        if (!x.is_number_integer())
            throw Error(Errc::InvalidArgument, "parameter \"" + key + "\" must hold integers");
        out.push_back(x.get<int>());
    }
    return out;
}

// A bare array is read as a parent array.
Json as_tree_doc(const Json& v, const char* kind)
{
    if (v.is_array())
        return Json{{"kind", kind}, {"parent", v}};
    return v;
}

OrderedTree get_tree(const Json& p, const std::string& key, const RunOptions& o)
{
    return tree_from_json(as_tree_doc(need(p, key), "tree"), o.normalize);
}

OrderedForest forest_of(const Json& v, const RunOptions& o) { return forest_from_json(as_tree_doc(v, "forest"), o.normalize); }

Json head(const std::string& command, const Json& params)
{
    return Json{{"schema_version", kReportSchema}, {"kind", "report"}, {"command", command}, {"params", params}};
}

Outcome finish(Json r, Verdict v)
{
    r["verdict"] = verdict_json(v);
    return {std::move(r), exit_code_for(v)};
}

Json verdict_list(const std::vector<Verdict>& vs)
{
    Json out = Json::array();
    for (Verdict v : vs)
        out.push_back(verdict_json(v));
    return out;
}

Json values_list(const std::vector<TreeMap>& maps)
{
    Json out = Json::array();
    for (const auto& m : maps)
        out.push_back(m.values());
    return out;
}

Json element_json(const DomainElement& e)
{
    return Json{{"dom", {e.dom_ambient, e.dom_cut}}, {"cod", {e.cod_ambient, e.cod_cut}}, {"values", e.values}};
}

// ------------------------------------------------------------ trees, maps

Outcome trees_info(const Json& p, const RunOptions& o)
{
    auto t = get_tree(p, "tree", o);
    Json r = head("trees info", p);
    r["tree"] = to_json(t);
    r["size"] = t.size();
    r["height"] = t.height();
    r["leaves"] = t.leaves();
    r["is_chain"] = t.is_chain();
    return finish(std::move(r), Verdict::Holds);
}

Outcome trees_plus(const Json& p, const RunOptions& o)
{
    auto pt = assemble_plus(get_tree(p, "tree", o));
    Json r = head("trees plus", p);
    r["plus_tree"] = to_json(pt.tree);
    r["plus"] = pt.plus;
    return finish(std::move(r), Verdict::Holds);
}

Outcome trees_assemble_v(const Json& p, const RunOptions& o)
{
    auto av = assemble_V(get_tree(p, "tree", o));
    Json r = head("trees assemble-v", p);
    r["v"] = to_json(av.tree);
    r["leaves"] = av.leaves;
    r["projections"] = values_list(av.projections);
    bool rigid = true;
    for (const auto& pr : av.projections)
        rigid = rigid && is_rigid(pr) && injection_of(pr).values() == av.inclusion[&pr - av.projections.data()];
    r["projections_rigid"] = rigid;
    return finish(std::move(r), rigid ? Verdict::Holds : Verdict::Fails);
}

Outcome enum_trees_cmd(const Json& p, const RunOptions&)
{
    const int n = get_int(p, "n");
    if (n < 1)
        throw Error(Errc::InvalidArgument, "n must be at least 1");
    auto trees = enum_trees(n);
    Json r = head("enum trees", p);
    r["count"] = trees.size();
    r["catalan"] = catalan(n - 1);
    if (!get_bool(p, "count_only", false)) {
        Json list = Json::array();
        for (const auto& t : trees)
            list.push_back(to_json(t));
        r["trees"] = std::move(list);
    }
    return finish(std::move(r), Verdict::Holds);
}

Outcome enum_forests_cmd(const Json& p, const RunOptions&)
{
    const int n = get_int(p, "n");
    if (n < 0)
        throw Error(Errc::InvalidArgument, "n must be non-negative");
    auto forests = enum_forests(n);
    Json r = head("enum forests", p);
    r["count"] = forests.size();
    r["catalan"] = catalan(n);
    if (!get_bool(p, "count_only", false)) {
        Json list = Json::array();
        for (const auto& f : forests)
            list.push_back(to_json(f));
        r["forests"] = std::move(list);
    }
    return finish(std::move(r), Verdict::Holds);
}

Outcome enum_maps_cmd(const Json& p, const RunOptions& o)
{
    const std::string kind = get_str(p, "kind");
    auto dom = get_tree(p, "dom", o);
    auto cod = get_tree(p, "cod", o);
    const bool count_only = get_bool(p, "count_only", false);
    Json r = head("enum maps", p);
    if (kind == "embedding") {
        r["count"] = count_embeddings(dom, cod);
        if (!count_only)
            r["maps"] = values_list(enum_embeddings(dom, cod));
    } else if (kind == "rigid" || kind == "sealed") {
        RigidOptions ro;
        ro.sealed = kind == "sealed";
        r["count"] = count_rigid_surjections(dom, cod, ro);
        if (!count_only)
            r["maps"] = values_list(enum_rigid_surjections(dom, cod, ro));
    } else {
        throw Error(Errc::InvalidArgument, "kind must be embedding, rigid or sealed");
    }
    return finish(std::move(r), Verdict::Holds);
}

Outcome rs_classify(const Json& p, const RunOptions& o)
{
    auto m = map_from_json(need(p, "map"), o.normalize);
    auto flags = classify(m, get_int(p, "a_prefix", 0));
    Json r = head("rs classify", p);
    r["map"] = to_json(m);
    r["morphism"] = flags.morphism;
    r["embedding"] = flags.embedding;
    r["rigid"] = flags.rigid;
    r["sealed"] = flags.sealed;
    r["a_prefix"] = flags.a_prefix;
    r["a_rigid"] = flags.a_rigid;
    auto inj = rigid_injection_values(m);
    r["injection"] = inj.empty() ? Json(nullptr) : Json(inj);
    return finish(std::move(r), Verdict::Holds);
}

Outcome rs_injection(const Json& p, const RunOptions& o)
{
    auto m = map_from_json(need(p, "map"), o.normalize);
    Json r = head("rs injection", p);
    r["injection"] = to_json(injection_of(m));
    return finish(std::move(r), Verdict::Holds);
}

Outcome rs_compose(const Json& p, const RunOptions& o)
{
    auto f = map_from_json(need(p, "f"), o.normalize);
    auto g = map_from_json(need(p, "g"), o.normalize);
    auto h = compose(f, g);
    Json r = head("rs compose", p);
    r["result"] = to_json(h);
    r["rigid"] = is_rigid(h);
    return finish(std::move(r), Verdict::Holds);
}

// ------------------------------------------------------------ framework

Json axiom_json(const AxiomReport& a)
{
    Json ex = Json::array();
    for (const auto& v : a.examples) {
        Json els = Json::array();
        for (const auto& e : v.elements)
            els.push_back(element_json(e));
        ex.push_back(Json{{"elements", els}, {"detail", v.detail}});
    }
    return Json{{"axiom", a.axiom}, {"checked", a.checked}, {"violations", a.violations}, {"examples", ex}};
}

Json condition_json(const Space& space, const ConditionReport& c)
{
    Json j{{"verdict", verdict_json(c.verdict)}, {"item_indices", c.items}, {"family", c.family}, {"nodes", c.stats.nodes}};
    if (c.verdict == Verdict::Fails) {
        Json items = Json::array();
        for (int i : c.items)
            items.push_back(element_json(space.element(i)));
        j["counterexample"] = Json{{"coloring", c.coloring}, {"items", items}};
    }
    return j;
}

Outcome framework_axioms(const Json& p, const RunOptions&)
{
    Space space(get_int(p, "bound"));
    auto fs = sample_F(space);
    auto ps = sample_P(space);
    auto reports = check_space_axioms(space);
    auto dom = check_domain_axioms(space, fs, ps);
    reports.insert(reports.end(), dom.begin(), dom.end());
    Json r = head("framework check-axioms", p);
    r["elements"] = space.size();
    r["families"] = Json{{"F", fs.size()}, {"P", ps.size()}};
    Json list = Json::array();
    bool ok = true;
    for (const auto& a : reports) {
        list.push_back(axiom_json(a));
        ok = ok && a.ok();
    }
    r["axioms"] = std::move(list);
    return finish(std::move(r), ok ? Verdict::Holds : Verdict::Fails);
}

Outcome framework_check_r(const Json& p, const RunOptions& o)
{
    Space space(get_int(p, "bound"));
    const int b = get_int(p, "b");
    auto fs = sample_F(space);
    auto ps = sample_P(space);
    Json r = head("framework check-r", p);
    r["families"] = Json{{"F", fs.size()}, {"P", ps.size()}};
    auto pick = [](const auto& v, int i, const char* what) -> const FamilySet& {
        if (i < 0 || static_cast<std::size_t>(i) >= v.size())
            throw Error(Errc::InvalidArgument, std::string(what) + " index out of range");
        return v[static_cast<std::size_t>(i)];
    };
    if (has(p, "f") || has(p, "p")) {
        auto c = check_R(space, pick(fs, get_int(p, "f"), "F"), pick(ps, get_int(p, "p"), "P"), b, o.max_nodes);
        r["result"] = condition_json(space, c);
        return finish(std::move(r), c.verdict);
    }
    std::uint64_t pairs = 0, holds = 0, fails = 0, capped = 0;
    Json first_fail;
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = 0; j < ps.size(); ++j) {
            if (!act(space, fs[i], ps[j]))
                continue;
            ++pairs;
            auto c = check_R(space, fs[i], ps[j], b, o.max_nodes);
            if (c.verdict == Verdict::Holds)
                ++holds;
            else if (c.verdict == Verdict::Fails) {
                if (fails++ == 0)
                    first_fail = Json{{"f", i}, {"p", j}, {"result", condition_json(space, c)}};
            } else
                ++capped;
        }
    r["pairs"] = pairs;
    r["holds"] = holds;
    r["fails"] = fails;
    r["capped"] = capped;
    r["first_fail"] = first_fail;
    return finish(std::move(r), fails ? Verdict::Fails : capped ? Verdict::CapExceeded : Verdict::Holds);
}

Outcome framework_check_lp(const Json& p, const RunOptions& o)
{
    Space space(get_int(p, "bound"));
    const int b = get_int(p, "b");
    auto fs = sample_F(space);
    auto ps = sample_P(space);
    Json r = head("framework check-lp", p);
    if (has(p, "p") || has(p, "f")) {
        const int fi = get_int(p, "f"), pi = get_int(p, "p");
        if (fi < 0 || static_cast<std::size_t>(fi) >= fs.size() || pi < 0 || static_cast<std::size_t>(pi) >= ps.size())
            throw Error(Errc::InvalidArgument, "family index out of range");
        auto c = check_LP(space, ps[static_cast<std::size_t>(pi)], get_int(p, "y"), fs[static_cast<std::size_t>(fi)],
                          get_int(p, "a"), b, o.max_nodes);
        r["result"] = condition_json(space, c);
        return finish(std::move(r), c.verdict);
    }
    auto rc = ram_consistency(space, fs, ps, b, o.max_nodes);
    r["families"] = rc.families;
    r["lp_found"] = rc.lp_found;
    r["r_found"] = rc.r_found;
    r["gaps"] = rc.gaps;
    r["red_flag"] = rc.red_flag();
    return finish(std::move(r), rc.red_flag() ? Verdict::Fails : Verdict::Holds);
}

// ------------------------------------------------------------ hj

Json certificate_json(int b, int k, const HjCertificate& cert)
{
    // Colourings are in counting order, so the key recovers the colouring.
    Json w = Json::object();
    for (std::size_t i = 0; i < cert.witnesses.size(); ++i)
        w[std::to_string(i)] = cert.witnesses[i];
    return Json{{"complete", cert.complete}, {"colors", b}, {"k", k}, {"witnesses", std::move(w)}};
}

HjCertificate certificate_from_json(const Json& j, int items)
{
    HjCertificate cert;
    cert.complete = j.at("complete").get<bool>();
    const int b = j.at("colors").get<int>();
    const Json& w = j.at("witnesses");
    std::size_t i = 0;
    for_each_coloring(items, b, false, [&](const std::vector<int>& c) {
        auto key = std::to_string(i++);
        if (!w.contains(key))
            return false;
        cert.colorings.push_back(c);
        cert.witnesses.push_back(w.at(key).get<std::vector<Vertex>>());
        return true;
    });
    return cert;
}

Outcome hj_search_cmd(const Json& p, const RunOptions& o)
{
    const int a = get_int(p, "a"), l = get_int(p, "l"), b = get_int(p, "b"), max_k = get_int(p, "max_k", 3);
    const bool want_cert = get_bool(p, "certificate", false);
    auto res = hj_search(a, l, b, max_k, want_cert, o.max_nodes, o.max_colorings);
    Json r = head("hj search", p);
    r["k"] = res.k ? Json(*res.k) : Json(nullptr);
    r["verdicts"] = verdict_list(res.verdicts);
    r["items"] = res.items;
    r["constraints"] = res.constraints;
    r["nodes"] = res.stats.nodes;
    Verdict v = res.k ? Verdict::Holds : Verdict::Fails;
    if (!res.k && !res.verdicts.empty() && res.verdicts.back() == Verdict::CapExceeded)
        v = Verdict::CapExceeded;
    if (want_cert && res.k) {
        r["certificate_verified"] = verify_hj_certificate(a, l, b, *res.k, res.certificate);
        r["certificate"] = certificate_json(b, *res.k, res.certificate);
    }
    return finish(std::move(r), v);
}

Outcome hj_pro_cmd(const Json& p, const RunOptions& o)
{
    auto as = get_ints(p, "as");
    auto ls = get_ints(p, "ls");
    const auto mode = parse_hjpro_mode(get_str(p, "mode", "direct"));
    auto res = hjpro_search(as, ls, get_int(p, "b"), get_int(p, "max_k", 3), mode, o.max_nodes);
    Json r = head("hj pro", p);
    r["k"] = res.k ? Json(*res.k) : Json(nullptr);
    r["verdicts"] = verdict_list(res.verdicts);
    r["items"] = res.items;
    r["constraints"] = res.constraints;
    r["nodes"] = res.stats.nodes;
    Verdict v = res.k ? Verdict::Holds : Verdict::Fails;
    if (!res.k && !res.verdicts.empty() && res.verdicts.back() == Verdict::CapExceeded)
        v = Verdict::CapExceeded;
    return finish(std::move(r), v);
}

// Search outcomes that surface as exceptions become verdicts.
template <class F>
Outcome bounded(Json r, F&& body)
{
    try {
        return body(r);
    } catch (const Error& e) {
        if (e.code() == Errc::NotFoundWithinBound || e.code() == Errc::ResourceCapExceeded) {
            r["error"] = e.what();
            return finish(std::move(r), e.code() == Errc::NotFoundWithinBound ? Verdict::Fails : Verdict::CapExceeded);
        }
        throw;
    }
}

Outcome hj_frco_cmd(const Json& p, const RunOptions& o)
{
    auto s = forest_of(need(p, "s"), o);
    return bounded(head("hj frco", p), [&](Json& r) {
        auto res = frco_search(s, get_int(p, "b"), get_int(p, "max_size", 6), o.max_nodes);
        r["forest"] = to_json(res.forest);
        r["candidates"] = res.candidates;
        return finish(std::move(r), Verdict::Holds);
    });
}

Outcome hj_pipeline_cmd(const Json& p, const RunOptions& o)
{
    auto as = get_ints(p, "as");
    std::vector<OrderedForest> ts;
    for (const auto& t : need(p, "ts"))
        ts.push_back(forest_of(t, o));
    LpPipelineLimits lim;
    lim.max_frco_size = get_int(p, "max_frco_size", lim.max_frco_size);
    lim.max_k = get_int(p, "max_k", lim.max_k);
    lim.max_colorings = o.max_colorings;
    lim.max_nodes = o.max_nodes;
    const int b = get_int(p, "b");
    return bounded(head("hj pipeline", p), [&](Json& r) {
        auto res = lp_pipeline(as, ts, b, lim);
        r["t1_prime"] = to_json(res.t1_prime);
        r["k"] = res.k;
        Json vs = Json::array();
        for (const auto& v : res.vs)
            vs.push_back(to_json(v));
        r["vs"] = std::move(vs);
        r["items"] = res.items;
        r["colorings"] = res.colorings;
        r["exhaustive"] = res.exhaustive;
        r["verified"] = res.verified;
        Json ts_json = Json::array();
        for (const auto& t : res.first_t)
            ts_json.push_back(to_json(t));
        r["first_t"] = std::move(ts_json);
        return finish(std::move(r), res.verified == res.colorings ? Verdict::Holds : Verdict::Fails);
    });
}

Outcome hj_verify_trtr(const Json& p, const RunOptions&)
{
    auto cases = verify_transfer_all(get_int(p, "max_vertices", 3), get_int(p, "max_k", 2), get_int(p, "max_a", 2),
                                     get_u64(p, "literal_limit", 2'000'000));
    Json r = head("hj verify-trtr", p);
    std::uint64_t maps = 0, checks = 0, violations = 0, pattern = 0;
    Json list = Json::array();
    for (const auto& c : cases) {
        maps += c.maps;
        checks += c.rho_checks;
        violations += c.violations;
        pattern += c.literal ? 0 : 1;
        list.push_back(Json{{"s", to_json(c.s)},
                            {"k", c.k},
                            {"a", c.a},
                            {"literal", c.literal},
                            {"maps", c.maps},
                            {"rho_checks", c.rho_checks},
                            {"violations", c.violations},
                            {"first_violation", c.first_violation}});
    }
    r["cases"] = cases.size();
    r["pattern_cases"] = pattern;
    r["maps"] = maps;
    r["rho_checks"] = checks;
    r["violations"] = violations;
    r["details"] = std::move(list);
    return finish(std::move(r), violations == 0 ? Verdict::Holds : Verdict::Fails);
}

// ------------------------------------------------------------ witness

WitnessInstance witness_instance(const std::string& mode, const OrderedTree& s, const OrderedTree& t, const OrderedTree& u)
{
    if (mode == "sealed")
        return sealed_instance(s, t, u);
    if (mode == "mn" || mode == "chain")
        return mn_instance(s, t, u);
    throw Error(Errc::InvalidArgument, "mode must be mn, sealed or chain");
}

Json witness_json(const WitnessReport& w, const WitnessInstance* inst)
{
    Json j{{"mode", w.mode},
           {"colors", w.colors},
           {"verdict", verdict_json(w.verdict)},
           {"items", w.items},
           {"edges", w.edges},
           {"distinct_edges", w.stats.constraints},
           {"nodes", w.stats.nodes}};
    if (w.verdict == Verdict::Fails) {
        Json ce{{"coloring", w.coloring}};
        if (inst)
            ce["items"] = values_list(inst->items);
        j["counterexample"] = std::move(ce);
    }
    return j;
}

Outcome witness_check(const Json& p, const RunOptions& o)
{
    const std::string mode = get_str(p, "mode", "mn");
    auto inst = witness_instance(mode, get_tree(p, "s", o), get_tree(p, "t", o), get_tree(p, "u", o));
    auto w = decide(inst, mode == "sealed" ? "sealed" : "mn", get_int(p, "b"), o.max_nodes);
    Json r = head("witness check", p);
    r["report"] = witness_json(w, &inst);
    return finish(std::move(r), w.verdict);
}

Outcome witness_search_cmd(const Json& p, const RunOptions& o)
{
    const std::string mode = get_str(p, "mode", "mn");
    auto s = get_tree(p, "s", o);
    auto t = get_tree(p, "t", o);
    auto res = search_witness(get_int(p, "b"), s, t, parse_search_mode(mode), get_int(p, "max_vertices", 6), o.max_nodes, o.jobs);
    Json r = head("witness search", p);
    r["witness"] = res.witness ? to_json(*res.witness) : Json(nullptr);
    r["candidates"] = res.candidates;
    r["capped"] = res.capped;
    r["report"] = witness_json(res.report, nullptr);
    if (res.witness) {
        auto inst = witness_instance(mode, s, t, *res.witness);
        r["reverified"] = verdict_json(unpruned_check(inst.system, get_int(p, "b"), o.max_nodes).verdict);
    }
    return finish(std::move(r), res.witness ? Verdict::Holds : res.capped ? Verdict::CapExceeded : Verdict::Fails);
}

Outcome witness_derive(const Json& p, const RunOptions& o)
{
    Json r = head("witness derive", p);
    try {
        auto d = derive_mn_from_sealed(get_int(p, "b"), get_tree(p, "s", o), get_tree(p, "t", o), get_tree(p, "v", o), o.max_nodes);
        r["assembled"] = to_json(d.assembled);
        r["sealed_report"] = witness_json(d.sealed_report, nullptr);
        r["leaf_report"] = witness_json(d.leaf_report, nullptr);
        r["mn_report"] = witness_json(d.mn_report, nullptr);
        r["identities_checked"] = d.identities_checked;
        return finish(std::move(r), d.mn_report.verdict);
    } catch (const Error& e) {
        if (e.code() != Errc::PrerequisiteFailed)
            throw;
        r["error"] = e.what();
        return finish(std::move(r), Verdict::Fails);
    }
}

// ------------------------------------------------------------ bridges

Outcome bridge_prvo_cmd(const Json& p, const RunOptions&)
{
    Json r = head("bridge prvo", p);
    if (has(p, "values")) {
        auto v = bridge_prvo(get_ints(p, "values"), get_int(p, "k"));
        r["prvo"] = v.prvo;
        r["tree"] = v.tree;
        r["agree"] = v.prvo == v.tree;
        return finish(std::move(r), v.prvo == v.tree ? Verdict::Holds : Verdict::Fails);
    }
    const int max_n = get_int(p, "max_n", 6);
    std::uint64_t maps = 0, disagreements = 0;
    bool counts_ok = true;
    Json rows = Json::array();
    for (int n = 1; n <= max_n; ++n)
        for (int k = 1; k <= n; ++k) {
            std::uint64_t rigid = 0;
            for_each_coloring(n, k, false, [&](const std::vector<int>& f) {
                auto v = bridge_prvo(f, k);
                ++maps;
                disagreements += v.prvo != v.tree;
                rigid += v.tree;
            });
            const auto st = stirling2(n, k);
            counts_ok = counts_ok && st == rigid;
            rows.push_back(Json{{"n", n}, {"k", k}, {"rigid", rigid}, {"stirling2", st}});
        }
    r["maps"] = maps;
    r["disagreements"] = disagreements;
    r["counts"] = std::move(rows);
    const bool ok = disagreements == 0 && counts_ok;
    return finish(std::move(r), ok ? Verdict::Holds : Verdict::Fails);
}

Outcome bridge_leeb_cmd(const Json& p, const RunOptions& o)
{
    auto s = get_tree(p, "s", o);
    auto t = get_tree(p, "t", o);
    auto u = get_tree(p, "u", o);
    std::vector<int> col;
    if (has(p, "coloring"))
        col = coloring_from_json(p.at("coloring")).values;
    else
        for (const auto& e : enum_embeddings(s, u))
            col.push_back(e(s.size() - 1) % 2);
    Json r = head("bridge leeb", p);
    r["embedding_coloring"] = col;
    r["transported"] = leeb_transport(s, u, col);
    std::uint64_t checked = 0, mono = 0;
    bool ok = true;
    for (const auto& g0 : enum_rigid_surjections(u, t)) {
        auto c = leeb_contract(s, t, u, col, g0);
        ++checked;
        mono += c.transported_mono;
        ok = ok && c.holds();
    }
    r["g0_checked"] = checked;
    r["transported_mono"] = mono;
    r["contract_holds"] = ok;
    return finish(std::move(r), ok ? Verdict::Holds : Verdict::Fails);
}

Outcome bridge_gr_cmd(const Json& p, const RunOptions&)
{
    const int max_u = get_int(p, "max_u", 5), max_l = get_int(p, "max_l", 3);
    Json r = head("bridge gr", p);
    std::uint64_t maps = 0, trees = 0;
    try {
        for (const auto& u : enum_trees_up_to(max_u)) {
            ++trees;
            for (int l = 1; l <= max_l; ++l)
                maps += gr_compatibility(u, l);
        }
    } catch (const std::logic_error& e) {
        r["error"] = e.what();
        return finish(std::move(r), Verdict::Fails);
    }
    r["trees"] = trees;
    r["maps"] = maps;
    return finish(std::move(r), Verdict::Holds);
}

using Handler = Outcome (*)(const Json&, const RunOptions&);

const std::vector<std::pair<std::string, Handler>>& table()
{
    static const std::vector<std::pair<std::string, Handler>> t = {
        {"trees info", trees_info},
        {"trees plus", trees_plus},
        {"trees assemble-v", trees_assemble_v},
        {"enum trees", enum_trees_cmd},
        {"enum forests", enum_forests_cmd},
        {"enum maps", enum_maps_cmd},
        {"rs classify", rs_classify},
        {"rs injection", rs_injection},
        {"rs compose", rs_compose},
        {"framework check-axioms", framework_axioms},
        {"framework check-r", framework_check_r},
        {"framework check-lp", framework_check_lp},
        {"hj search", hj_search_cmd},
        {"hj pro", hj_pro_cmd},
        {"hj frco", hj_frco_cmd},
        {"hj pipeline", hj_pipeline_cmd},
        {"hj verify-trtr", hj_verify_trtr},
        {"witness check", witness_check},
        {"witness search", witness_search_cmd},
        {"witness derive", witness_derive},
        {"bridge prvo", bridge_prvo_cmd},
        {"bridge leeb", bridge_leeb_cmd},
        {"bridge gr", bridge_gr_cmd},
    };
    return t;
}

// ------------------------------------------------------------ replay

struct Replayed {
    std::string method;
    Verdict verdict;
    bool reproduced;
};

Replayed replay_witness_check(const Json& rep, const RunOptions& o, Verdict stored)
{
    const Json& p = rep.at("params");
    const std::string mode = get_str(p, "mode", "mn");
    auto inst = witness_instance(mode, get_tree(p, "s", o), get_tree(p, "t", o), get_tree(p, "u", o));
    const int b = get_int(p, "b");
    if (stored == Verdict::Fails) {
        WitnessReport w;
        w.colors = b;
        w.verdict = Verdict::Fails;
        w.coloring = rep.at("report").at("counterexample").at("coloring").get<std::vector<int>>();
        for (int c : w.coloring)
            if (c < 0 || c >= b)
                return {"counterexample", Verdict::Holds, false};
        const bool ok = replay_counterexample(inst, w);
        return {"counterexample", ok ? Verdict::Fails : Verdict::Holds, ok};
    }
    auto v = unpruned_check(inst.system, b, o.max_nodes).verdict;
    return {"unpruned", v, v == stored};
}

Replayed replay_witness_search(const Json& rep, const RunOptions& o, Verdict stored)
{
    const Json& p = rep.at("params");
    if (stored != Verdict::Holds) {
        auto v = run_command("witness search", p, o).report.at("verdict");
        auto rv = verdict_from_json(v);
        return {"recompute", rv, rv == stored};
    }
    const std::string mode = get_str(p, "mode", "mn");
    auto inst = witness_instance(mode, get_tree(p, "s", o), get_tree(p, "t", o), tree_from_json(rep.at("witness")));
    auto v = unpruned_check(inst.system, get_int(p, "b"), o.max_nodes).verdict;
    return {"unpruned", v, v == stored};
}

Replayed replay_hj(const Json& rep, const RunOptions& o, Verdict stored)
{
    const Json& p = rep.at("params");
    if (stored == Verdict::Holds && rep.contains("certificate") && rep.at("certificate").at("complete").get<bool>()) {
        const int a = get_int(p, "a"), l = get_int(p, "l"), b = get_int(p, "b");
        const int k = rep.at("certificate").at("k").get<int>();
        SealedChainMaps objs(a, l * k);
        auto cert = certificate_from_json(rep.at("certificate"), static_cast<int>(objs.size()));
        const bool ok = verify_hj_certificate(a, l, b, k, cert);
        return {"certificate", ok ? Verdict::Holds : Verdict::Fails, ok};
    }
    auto rv = verdict_from_json(run_command("hj search", p, o).report.at("verdict"));
    return {"recompute", rv, rv == stored};
}

// Checks that no f ∈ F makes f·P monochromatic under the stored colouring.
Replayed replay_check_r(const Json& rep, const RunOptions& o, Verdict stored)
{
    const Json& p = rep.at("params");
    if (stored != Verdict::Fails || !has(p, "f")) {
        auto rv = verdict_from_json(run_command("framework check-r", p, o).report.at("verdict"));
        return {"recompute", rv, rv == stored};
    }
    Space space(get_int(p, "bound"));
    auto fs = sample_F(space);
    auto ps = sample_P(space);
    const auto& fam = fs.at(static_cast<std::size_t>(get_int(p, "f")));
    const auto& pfam = ps.at(static_cast<std::size_t>(get_int(p, "p")));
    const Json& res = rep.at("result");
    auto items = res.at("item_indices").get<std::vector<int>>();
    auto col = res.at("counterexample").at("coloring").get<std::vector<int>>();
    std::map<int, int> colour;
    for (std::size_t i = 0; i < items.size() && i < col.size(); ++i)
        colour[items[i]] = col[i];
    bool avoided = true;
    for (int f : fam.elements) {
        std::optional<int> seen;
        bool mono = true;
        for (int x : pfam.elements) {
            int y = space.mul_index(f, x);
            if (y < 0)
                continue;
            auto it = colour.find(y);
            if (it == colour.end()) {
                mono = false;
                break;
            }
            if (seen && *seen != it->second)
                mono = false;
            seen = it->second;
        }
        if (mono && seen)
            avoided = false;
    }
    return {"counterexample", avoided ? Verdict::Fails : Verdict::Holds, avoided};
}

}  // namespace

int exit_code_for(Verdict v) noexcept
{
    switch (v) {
    case Verdict::Holds: return 0;
    case Verdict::Fails: return 1;
    case Verdict::CapExceeded: return 3;
    }
    return 2;
}

int exit_code_for(Errc e) noexcept
{
    switch (e) {
    case Errc::NotFoundWithinBound:
    case Errc::PrerequisiteFailed: return 1;
    case Errc::ResourceCapExceeded: return 3;
    default: return 2;
    }
}

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, h] : table())
            out.push_back(name);
        return out;
    }();
    return names;
}

Outcome run_command(const std::string& command, const Json& params, const RunOptions& opts)
{
    for (const auto& [name, h] : table())
        if (name == command)
            return h(params.is_null() ? Json::object() : params, opts);
    throw Error(Errc::InvalidArgument, "unknown command \"" + command + "\"");
}

Outcome replay_report(const Json& report, const RunOptions& opts)
{
    check_schema(report, "report", kReportSchema);
    const std::string command = get_str(report, "command");
    const Verdict stored = verdict_from_json(need(report, "verdict"));
    Replayed rp;
    if (command == "witness check")
        rp = replay_witness_check(report, opts, stored);
    else if (command == "witness search")
        rp = replay_witness_search(report, opts, stored);
    else if (command == "hj search")
        rp = replay_hj(report, opts, stored);
    else if (command == "framework check-r")
        rp = replay_check_r(report, opts, stored);
    else {
        auto rv = verdict_from_json(run_command(command, report.at("params"), opts).report.at("verdict"));
        rp = {"recompute", rv, rv == stored};
    }
    Json r{{"schema_version", kReportSchema},
           {"kind", "report"},
           {"command", "replay"},
           {"params", Json{{"command", command}}},
           {"verdict", verdict_json(rp.reproduced ? Verdict::Holds : Verdict::Fails)},
           {"method", rp.method},
           {"stored_verdict", verdict_json(stored)},
           {"replayed_verdict", verdict_json(rp.verdict)},
           {"reproduced", rp.reproduced}};
    return {std::move(r), rp.reproduced ? 0 : 1};
}

// ------------------------------------------------------------ fixtures

const std::vector<FixtureSpec>& standard_fixtures()
{
    auto chain = [](int n) { return to_json(OrderedTree::chain(n)); };
    const Json y = to_json(OrderedTree::from_parents({kNone, 0, 0}));
    const Json c3plus = to_json(assemble_plus(OrderedTree::chain(3)).tree);
    const Json pt = to_json(OrderedForest::antichain(1));
    static const std::vector<FixtureSpec> specs = {
        {"witness/mn-s-eq-t", "witness check", {{"mode", "mn"}, {"b", 3}, {"s", y}, {"t", y}, {"u", y}}, {"report"}},
        {"witness/mn-b1", "witness check", {{"mode", "mn"}, {"b", 1}, {"s", chain(2)}, {"t", chain(3)}, {"u", chain(3)}}, {"report"}},
        {"witness/mn-c2-c3-c3", "witness check", {{"mode", "mn"}, {"b", 2}, {"s", chain(2)}, {"t", chain(3)}, {"u", chain(3)}}, {"report"}},
        {"witness/sealed-c2-c2-c2", "witness check", {{"mode", "sealed"}, {"b", 2}, {"s", chain(2)}, {"t", chain(2)}, {"u", chain(2)}}, {"report"}},
        {"witness/chain-b2-k1-l3", "witness search", {{"mode", "chain"}, {"b", 2}, {"s", chain(1)}, {"t", chain(3)}, {"max_vertices", 6}},
         {"witness", "candidates", "reverified"}},
        {"witness/chain-b2-k2-l2", "witness search", {{"mode", "chain"}, {"b", 2}, {"s", chain(2)}, {"t", chain(2)}, {"max_vertices", 6}},
         {"witness", "candidates", "reverified"}},
        {"witness/chain-b2-k2-l3", "witness search", {{"mode", "chain"}, {"b", 2}, {"s", chain(2)}, {"t", chain(3)}, {"max_vertices", 8}},
         {"witness", "candidates", "reverified"}},
        {"witness/sealed-y-y", "witness search", {{"mode", "sealed"}, {"b", 2}, {"s", y}, {"t", y}, {"max_vertices", 4}},
         {"witness", "candidates", "reverified"}},
        {"witness/sealed-y-c3plus", "witness search", {{"mode", "sealed"}, {"b", 2}, {"s", y}, {"t", c3plus}, {"max_vertices", 7}},
         {"witness", "candidates", "reverified"}},
        {"witness/derive-c2-c2", "witness derive", {{"b", 2}, {"s", chain(2)}, {"t", chain(2)}, {"v", y}}, {"assembled", "mn_report"}},
        {"witness/derive-c2-c3", "witness derive",
         {{"b", 2}, {"s", chain(2)}, {"t", chain(3)}, {"v", to_json(OrderedTree::from_parents({kNone, 0, 1, 1, 3, 3, 0}))}},
         {"assembled", "mn_report"}},
        {"hj/a1-l1-b2", "hj search", {{"a", 1}, {"l", 1}, {"b", 2}, {"max_k", 3}}, {"k", "verdicts", "items"}},
        {"hj/a1-l2-b2", "hj search", {{"a", 1}, {"l", 2}, {"b", 2}, {"max_k", 3}}, {"k", "verdicts", "items"}},
        {"hj/a2-l1-b2", "hj search", {{"a", 2}, {"l", 1}, {"b", 2}, {"max_k", 3}}, {"k", "verdicts", "items"}},
        {"hj/a2-l2-b1", "hj search", {{"a", 2}, {"l", 2}, {"b", 1}, {"max_k", 3}}, {"k", "verdicts", "items"}},
        {"hj/a2-l2-b2", "hj search", {{"a", 2}, {"l", 2}, {"b", 2}, {"max_k", 3}}, {"k", "verdicts", "items"}},
        {"hjpro/a2-1-l2-1-direct", "hj pro", {{"as", {2, 1}}, {"ls", {2, 1}}, {"b", 2}, {"max_k", 3}, {"mode", "direct"}}, {"k", "verdicts"}},
        {"hjpro/a2-1-l2-1-reduced", "hj pro", {{"as", {2, 1}}, {"ls", {2, 1}}, {"b", 2}, {"max_k", 3}, {"mode", "reduced"}}, {"k", "verdicts"}},
        {"hjpro/a2-2-l1-1-direct", "hj pro", {{"as", {2, 2}}, {"ls", {1, 1}}, {"b", 2}, {"max_k", 3}, {"mode", "direct"}}, {"k", "verdicts"}},
        {"hjpro/a2-2-l1-1-reduced", "hj pro", {{"as", {2, 2}}, {"ls", {1, 1}}, {"b", 2}, {"max_k", 3}, {"mode", "reduced"}}, {"k", "verdicts"}},
        {"frco/antichain2-b2", "hj frco", {{"s", to_json(OrderedForest::antichain(2))}, {"b", 2}, {"max_size", 5}}, {"forest", "candidates"}},
        {"frco/chain2-b2", "hj frco", {{"s", to_json(OrderedForest::chain(2))}, {"b", 2}, {"max_size", 5}}, {"forest", "candidates"}},
        {"pipeline/a1-2-pt-pt-b2", "hj pipeline", {{"as", {1, 2}}, {"ts", {pt, pt}}, {"b", 2}}, {"k", "t1_prime", "items", "verified"}},
    };
    return specs;
}

Json compute_fixture(const FixtureSpec& spec, const RunOptions& opts)
{
    auto out = run_command(spec.command, spec.params, opts);
    Json result{{"verdict", out.report.at("verdict")}};
    for (const auto& key : spec.keep)
        result[key] = out.report.contains(key) ? out.report.at(key) : Json(nullptr);
    return Json{{"id", spec.id}, {"command", spec.command}, {"params", spec.params}, {"result", std::move(result)}};
}

}  // namespace ramsey
