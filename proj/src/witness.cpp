#include "ramsey/witness.hpp"

#include <chrono>
#include <map>
#include <stdexcept>
#include <thread>

#include "ramsey/enumeration.hpp"
#include "ramsey/error.hpp"

namespace ramsey {

namespace {

using Key = std::vector<Vertex>;

class ItemIndex {
public:
    int add(TreeMap m, WitnessInstance& inst)
    {
        auto [it, fresh] = index_.emplace(m.values(), static_cast<int>(inst.items.size()));
        if (fresh)
            inst.items.push_back(std::move(m));
        return it->second;
    }
    int at(const Key& k) const
    {
        auto it = index_.find(k);
        if (it == index_.end())
            throw std::logic_error("composite map is not among the coloured items");
        return it->second;
    }

private:
    std::map<Key, int> index_;
};

Key composite(const std::vector<Vertex>& f, const std::vector<Vertex>& g, std::size_t length)
{
    Key out(length);
    for (std::size_t x = 0; x < length; ++x)
        out[x] = f[static_cast<std::size_t>(g[x])];
    return out;
}

std::vector<std::vector<Vertex>> rs_values(const OrderedTree& t, const OrderedTree& s, RigidOptions opts = {})
{
    std::vector<std::vector<Vertex>> out;
    for_each_rigid_surjection(t, s, opts, [&](const std::vector<Vertex>& f, const std::vector<Vertex>&) { out.push_back(f); });
    return out;
}

}  // namespace

WitnessInstance mn_instance(const OrderedTree& s, const OrderedTree& t, const OrderedTree& u)
{
    WitnessInstance inst;
    ItemIndex index;
    for_each_rigid_surjection(u, s, {}, [&](const std::vector<Vertex>& f, const std::vector<Vertex>&) { index.add(TreeMap(u, s, f), inst); });
    inst.system.items = static_cast<int>(inst.items.size());
    auto fs = rs_values(t, s);
    for_each_rigid_surjection(u, t, {}, [&](const std::vector<Vertex>& g0, const std::vector<Vertex>&) {
        Group edge;
        for (const auto& f : fs)
            edge.push_back(index.at(composite(f, g0, g0.size())));
        inst.system.constraints.push_back({std::move(edge)});
    });
    return inst;
}

WitnessInstance sealed_instance(const OrderedTree& s, const OrderedTree& t, const OrderedTree& v)
{
    WitnessInstance inst;
    ItemIndex index;
    std::vector<OrderedTree> prefixes;
    for (Vertex w = 0; w < v.size(); ++w)
        prefixes.push_back(initial_subtree(v, w).tree);
    for (const auto& vw : prefixes)
        for_each_rigid_surjection(vw, s, {.sealed = true}, [&](const std::vector<Vertex>& f, const std::vector<Vertex>&) {
            index.add(TreeMap(vw, s, f), inst);
        });
    inst.system.items = static_cast<int>(inst.items.size());
    // Sealed f: T^t -> S for every t.
    std::vector<std::vector<std::vector<Vertex>>> fs;
    for (Vertex tt = 0; tt < t.size(); ++tt)
        fs.push_back(rs_values(initial_subtree(t, tt).tree, s, {.sealed = true}));
    for (const auto& vw : prefixes)
        for_each_rigid_surjection(vw, t, {.sealed = true}, [&](const std::vector<Vertex>& g, const std::vector<Vertex>& j) {
            Group edge;
            for (Vertex tt = 0; tt < t.size(); ++tt) {
                // g^t is g on V^{j(t)}.
                auto length = static_cast<std::size_t>(j[static_cast<std::size_t>(tt)]) + 1;
                for (const auto& f : fs[static_cast<std::size_t>(tt)])
                    edge.push_back(index.at(composite(f, g, length)));
            }
            inst.system.constraints.push_back({std::move(edge)});
        });
    return inst;
}

WitnessInstance leaf_instance(const OrderedTree& s, const OrderedTree& t, const OrderedTree& u)
{
    WitnessInstance inst;
    ItemIndex index;
    std::vector<OrderedTree> prefixes;
    for (Vertex y : u.leaves())
        prefixes.push_back(initial_subtree(u, y).tree);
    for (const auto& uy : prefixes)
        for_each_rigid_surjection(uy, s, {}, [&](const std::vector<Vertex>& f, const std::vector<Vertex>&) { index.add(TreeMap(uy, s, f), inst); });
    inst.system.items = static_cast<int>(inst.items.size());
    auto fs = rs_values(t, s);
    for (const auto& uy : prefixes)
        for_each_rigid_surjection(uy, t, {}, [&](const std::vector<Vertex>& g, const std::vector<Vertex>&) {
            Group edge;
            for (const auto& f : fs)
                edge.push_back(index.at(composite(f, g, g.size())));
            inst.system.constraints.push_back({std::move(edge)});
        });
    return inst;
}

WitnessReport decide(const WitnessInstance& inst, const std::string& mode, int b, std::uint64_t max_nodes)
{
    if (b < 1)
        throw Error(Errc::InvalidArgument, "b must be positive");
    auto start = std::chrono::steady_clock::now();
    WitnessReport r;
    r.mode = mode;
    r.colors = b;
    r.items = inst.items.size();
    r.edges = inst.system.constraints.size();
    auto res = solve(inst.system, b, max_nodes);
    r.verdict = res.verdict;
    r.coloring = std::move(res.coloring);
    r.stats = res.stats;
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

WitnessReport check_witness_mn(int b, const OrderedTree& s, const OrderedTree& t, const OrderedTree& u, std::uint64_t max_nodes)
{
    return decide(mn_instance(s, t, u), "mn", b, max_nodes);
}

WitnessReport check_witness_sealed(int b, const OrderedTree& s, const OrderedTree& t, const OrderedTree& v, std::uint64_t max_nodes)
{
    return decide(sealed_instance(s, t, v), "sealed", b, max_nodes);
}

bool replay_counterexample(const WitnessInstance& inst, const WitnessReport& report)
{
    if (report.verdict != Verdict::Fails || report.coloring.size() != inst.items.size())
        return false;
    for (int c : report.coloring)
        if (c < 0 || c >= report.colors)
            return false;
    return avoids_all(inst.system, report.coloring);
}

const char* to_string(SearchMode m) noexcept
{
    switch (m) {
    case SearchMode::Mn:
        return "mn";
    case SearchMode::Sealed:
        return "sealed";
    case SearchMode::Chain:
        return "chain";
    }
    return "?";
}

SearchMode parse_search_mode(const std::string& s)
{
    if (s == "mn")
        return SearchMode::Mn;
    if (s == "sealed")
        return SearchMode::Sealed;
    if (s == "chain")
        return SearchMode::Chain;
    throw Error(Errc::InvalidArgument, "unknown search mode '" + s + "'");
}

WitnessSearch search_witness(int b, const OrderedTree& s, const OrderedTree& t, SearchMode mode, int max_vertices,
                             std::uint64_t max_nodes, int jobs)
{
    if (mode == SearchMode::Chain && !(s.is_chain() && t.is_chain()))
        throw Error(Errc::InvalidArgument, "chain mode needs chains S = [k] and T = [l]");
    std::vector<OrderedTree> candidates;
    for (int n = 1; n <= max_vertices; ++n) {
        if (mode == SearchMode::Chain)
            candidates.push_back(OrderedTree::chain(n));
        else
            for_each_tree(n, [&](OrderedTree c) { candidates.push_back(std::move(c)); });
    }
    auto check = [&](const OrderedTree& u) {
        return mode == SearchMode::Sealed ? check_witness_sealed(b, s, t, u, max_nodes) : check_witness_mn(b, s, t, u, max_nodes);
    };

    WitnessSearch out;
    jobs = std::max(1, jobs);
    for (std::size_t first = 0; first < candidates.size(); first += static_cast<std::size_t>(jobs)) {
        std::size_t last = std::min(candidates.size(), first + static_cast<std::size_t>(jobs));
        std::vector<WitnessReport> reports(last - first);
        if (last - first == 1) {
            reports[0] = check(candidates[first]);
        } else {
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errors(last - first);
            for (std::size_t i = first; i < last; ++i)
                pool.emplace_back([&, i] {
                    try {
                        reports[i - first] = check(candidates[i]);
                    } catch (...) {
                        errors[i - first] = std::current_exception();
                    }
                });
            for (auto& th : pool)
                th.join();
            for (auto& e : errors)
                if (e)
                    std::rethrow_exception(e);
        }
        // Results are consumed in candidate order, so the outcome does not
        // depend on the batch size.
        for (std::size_t i = first; i < last; ++i) {
            ++out.candidates;
            out.report = reports[i - first];
            if (out.report.verdict == Verdict::CapExceeded) {
                out.capped = true;
                return out;
            }
            if (out.report.verdict == Verdict::Holds) {
                out.witness = candidates[i];
                return out;
            }
        }
    }
    return out;
}

// ------------------------------------------------------------ bridges

PrvoVerdict bridge_prvo(const std::vector<Vertex>& values, int k)
{
    for (Vertex v : values)
        if (v < 0 || v >= k)
            throw Error(Errc::VertexOutOfRange, "value outside [k]");
    PrvoVerdict out;
    out.prvo = true;
    int top = -1;
    std::vector<bool> hit(static_cast<std::size_t>(k), false);
    for (Vertex v : values) {
        if (v > top + 1)
            out.prvo = false;
        top = std::max(top, v);
        hit[static_cast<std::size_t>(v)] = true;
    }
    for (bool h : hit)
        out.prvo = out.prvo && h;
    out.tree = !values.empty() && is_rigid(chain_map(values, k));
    return out;
}

std::vector<int> leeb_transport(const OrderedTree& s, const OrderedTree& u, const std::vector<int>& emb_coloring)
{
    std::map<Key, int> emb_index;
    for_each_embedding(s, u, [&](const std::vector<Vertex>& e) { emb_index.emplace(e, static_cast<int>(emb_index.size())); });
    if (emb_coloring.size() != emb_index.size())
        throw Error(Errc::InvalidArgument, "colouring must cover every embedding S -> U");
    std::vector<int> out;
    for_each_rigid_surjection(u, s, {}, [&](const std::vector<Vertex>&, const std::vector<Vertex>& e) {
        out.push_back(emb_coloring[static_cast<std::size_t>(emb_index.at(e))]);
    });
    return out;
}

TreeMap leeb_extract(const TreeMap& g0) { return injection_of(g0); }

LeebContract leeb_contract(const OrderedTree& s, const OrderedTree& t, const OrderedTree& u, const std::vector<int>& emb_coloring,
                           const TreeMap& g0)
{
    if (!(g0.dom() == u) || !(g0.cod() == t))
        throw Error(Errc::DomainMismatch, "g0 must map U onto T");
    std::map<Key, int> emb_index;
    for_each_embedding(s, u, [&](const std::vector<Vertex>& e) { emb_index.emplace(e, static_cast<int>(emb_index.size())); });
    auto transported = leeb_transport(s, u, emb_coloring);
    std::map<Key, int> rs_index;
    for_each_rigid_surjection(u, s, {}, [&](const std::vector<Vertex>& f, const std::vector<Vertex>&) {
        rs_index.emplace(f, static_cast<int>(rs_index.size()));
    });

    LeebContract out;
    std::vector<int> seen;
    for_each_rigid_surjection(t, s, {}, [&](const std::vector<Vertex>& f, const std::vector<Vertex>&) {
        seen.push_back(transported[static_cast<std::size_t>(rs_index.at(composite(f, g0.values(), g0.values().size())))]);
    });
    out.transported_mono = std::all_of(seen.begin(), seen.end(), [&](int c) { return c == seen.front(); });

    auto e0 = leeb_extract(g0);
    seen.clear();
    for_each_embedding(s, t, [&](const std::vector<Vertex>& d) {
        seen.push_back(emb_coloring[static_cast<std::size_t>(emb_index.at(composite(e0.values(), d, d.size())))]);
    });
    out.original_mono = std::all_of(seen.begin(), seen.end(), [&](int c) { return c == seen.front(); });
    return out;
}

std::uint64_t gr_compatibility(const OrderedTree& u, int l)
{
    std::uint64_t n = 0;
    auto chain = OrderedTree::chain(l);
    for_each_rigid_surjection(u, chain, {}, [&](const std::vector<Vertex>& f, const std::vector<Vertex>&) {
        if (!is_rigid(chain_map(f, l)))
            throw std::logic_error("rigid surjection of a tree onto a chain is not one of its linear order");
        ++n;
    });
    return n;
}

// ------------------------------------------------------------ assembly

PlusTree assemble_plus(const OrderedTree& s)
{
    const Vertex root = 0;
    OrderedForest point = OrderedForest::antichain(1);
    auto a = attach(s, std::span<const Vertex>(&root, 1), std::span<const OrderedForest>(&point, 1));
    return {a.tree, a.part_embeddings[0][0]};
}

TreeMap lift_sealed(const TreeMap& f)
{
    auto tp = assemble_plus(f.dom());
    auto sp = assemble_plus(f.cod());
    std::vector<Vertex> values = f.values();
    values.push_back(sp.plus);
    TreeMap lifted(tp.tree, sp.tree, std::move(values));
    if (!is_sealed(lifted))
        throw std::logic_error("lift_sealed: lifted map is not sealed");
    // With |S| = 1 the top of S is the root of S⁺, not a leaf, so there is no
    // conjugate to check.
    if (f.cod().size() == 1)
        return lifted;
    const Vertex s_top = f.cod().size() - 1;
    const Vertex t_top = f.dom().size() - 1;
    if (conjugate_leaf(injection_of(lifted), s_top) != t_top)
        throw std::logic_error("lift_sealed: t is not f'-conjugate to s");
    if (!(restrict_conjugate(lifted, s_top) == f))
        throw std::logic_error("lift_sealed: (f')_s differs from f");
    return lifted;
}

AssembledV assemble_V(const OrderedTree& u)
{
    AssembledV out;
    out.leaves = u.leaves();
    std::vector<Vertex> parents{kNone};
    for (Vertex y : out.leaves) {
        const Vertex offset = static_cast<Vertex>(parents.size()) - 1;
        std::vector<Vertex> inc{0};
        for (Vertex w = 1; w <= y; ++w) {
            Vertex p = u.parents()[static_cast<std::size_t>(w)];
            parents.push_back(p == 0 ? 0 : offset + p);
            inc.push_back(offset + w);
        }
        out.inclusion.push_back(std::move(inc));
    }
    out.tree = OrderedTree::from_parents(std::move(parents));
    for (std::size_t k = 0; k < out.leaves.size(); ++k) {
        auto uy = initial_subtree(u, out.leaves[k]).tree;
        std::vector<Vertex> values(static_cast<std::size_t>(out.tree.size()), 0);
        for (Vertex w = 0; w < uy.size(); ++w)
            values[static_cast<std::size_t>(out.inclusion[k][static_cast<std::size_t>(w)])] = w;
        TreeMap pi(out.tree, uy, std::move(values));
        auto e = rigid_injection_values(pi);
        if (e != out.inclusion[k])
            throw std::logic_error("assemble_V: projection is not rigid with the inclusion as injection");
        out.projections.push_back(std::move(pi));
    }
    return out;
}

std::vector<int> transport_to_sealed(const WitnessInstance& leaf, const WitnessInstance& sealed, Vertex s_top, const std::vector<int>& c)
{
    std::map<Key, int> index;
    for (std::size_t i = 0; i < leaf.items.size(); ++i)
        index.emplace(leaf.items[i].values(), static_cast<int>(i));
    std::vector<int> out;
    for (const auto& h : sealed.items) {
        auto hs = restrict_conjugate(h, s_top);
        auto it = index.find(hs.values());
        if (it == index.end())
            throw std::logic_error("transport_to_sealed: h_s is not a leaf-statement item");
        out.push_back(c[static_cast<std::size_t>(it->second)]);
    }
    return out;
}

std::vector<int> transport_from_assembled(const WitnessInstance& mn, const WitnessInstance& leaf, const AssembledV& av,
                                          const std::vector<int>& c)
{
    std::map<Key, int> index;
    for (std::size_t i = 0; i < mn.items.size(); ++i)
        index.emplace(mn.items[i].values(), static_cast<int>(i));
    std::vector<int> out;
    for (const auto& f : leaf.items) {
        std::size_t k = 0;
        while (av.leaves[k] + 1 != f.size())
            ++k;
        auto key = composite(f.values(), av.projections[k].values(), av.projections[k].values().size());
        out.push_back(c[static_cast<std::size_t>(index.at(key))]);
    }
    return out;
}

DerivedWitness derive_mn_from_sealed(int b, const OrderedTree& s, const OrderedTree& t, const OrderedTree& v, std::uint64_t max_nodes)
{
    auto sp = assemble_plus(s);
    auto tp = assemble_plus(t);
    DerivedWitness out;
    out.sealed_report = check_witness_sealed(b, sp.tree, tp.tree, v, max_nodes);
    if (out.sealed_report.verdict != Verdict::Holds)
        throw Error(Errc::PrerequisiteFailed, "V is not a sealed witness for (b, S+, T+)");

    auto leaf = leaf_instance(s, t, v);
    out.leaf_report = decide(leaf, "leaf", b, max_nodes);
    auto av = assemble_V(v);
    out.assembled = av.tree;
    auto mn = mn_instance(s, t, av.tree);
    out.mn_report = decide(mn, "mn", b, max_nodes);

    // (f')_s ∘ (g⁺)_t = (f'∘g⁺)_s for every sealed g⁺: V -> T⁺ and every f.
    const Vertex s_top = s.size() - 1;
    const Vertex t_top = t.size() - 1;
    auto fs = enum_rigid_surjections(t, s);
    for_each_rigid_surjection(v, tp.tree, {.sealed = true}, [&](const std::vector<Vertex>& g, const std::vector<Vertex>&) {
        if (s.size() == 1)
            return;
        TreeMap gp(v, tp.tree, g);
        auto gt = restrict_conjugate(gp, t_top);
        for (const auto& f : fs) {
            auto fp = lift_sealed(f);
            if (!(compose(restrict_conjugate(fp, s_top), gt) == restrict_conjugate(compose(fp, gp), s_top)))
                throw std::logic_error("derive_mn_from_sealed: conjugate restriction does not commute with composition");
            ++out.identities_checked;
        }
    });

    // c(f∘g'∘π_y0) = c'(f∘g') for a fixed non-constant colouring c.
    std::vector<int> c(mn.items.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = static_cast<int>((i * 2654435761u >> 7) % static_cast<std::size_t>(b));
    auto cprime = transport_from_assembled(mn, leaf, av, c);
    std::map<Key, int> mn_index;
    std::map<Key, int> leaf_index;
    for (std::size_t i = 0; i < mn.items.size(); ++i)
        mn_index.emplace(mn.items[i].values(), static_cast<int>(i));
    for (std::size_t i = 0; i < leaf.items.size(); ++i)
        leaf_index.emplace(leaf.items[i].values(), static_cast<int>(i));
    for (std::size_t k = 0; k < av.leaves.size(); ++k) {
        auto uy = initial_subtree(v, av.leaves[k]).tree;
        for_each_rigid_surjection(uy, t, {}, [&](const std::vector<Vertex>& gprime, const std::vector<Vertex>&) {
            auto g = composite(gprime, av.projections[k].values(), av.projections[k].values().size());
            for (const auto& f : fs) {
                int lhs = c[static_cast<std::size_t>(mn_index.at(composite(f.values(), g, g.size())))];
                int rhs = cprime[static_cast<std::size_t>(leaf_index.at(composite(f.values(), gprime, gprime.size())))];
                if (lhs != rhs)
                    throw std::logic_error("derive_mn_from_sealed: colouring transport identity fails");
                ++out.identities_checked;
            }
        });
    }
    return out;
}

}  // namespace ramsey
