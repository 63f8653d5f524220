#include "ramsey/properties.hpp"

#include <map>
#include <sstream>

#include "ramsey/enumeration.hpp"
#include "ramsey/error.hpp"
#include "ramsey/json_io.hpp"
#include "ramsey/witness.hpp"

namespace ramsey {

namespace {

std::string show(const std::vector<Vertex>& v)
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << (v[i] == kNone ? std::string("-") : std::to_string(v[i]));
    os << "]";
    return os.str();
}

std::string show(const TreeMap& m) { return show(m.dom().parents()) + "->" + show(m.cod().parents()) + " " + show(m.values()); }

// Rigid surjections between every pair of trees, cached by (dom, cod).
class RsCache {
public:
    const std::vector<TreeMap>& get(const OrderedTree& t, const OrderedTree& s)
    {
        auto key = std::make_pair(t.parents(), s.parents());
        auto it = cache_.find(key);
        if (it == cache_.end())
            it = cache_.emplace(key, enum_rigid_surjections(t, s)).first;
        return it->second;
    }

private:
    std::map<std::pair<std::vector<Vertex>, std::vector<Vertex>>, std::vector<TreeMap>> cache_;
};

std::vector<Vertex> compose_values(const std::vector<Vertex>& outer, const std::vector<Vertex>& inner)
{
    std::vector<Vertex> out;
    for (Vertex x : inner)
        out.push_back(outer[static_cast<std::size_t>(x)]);
    return out;
}

// Embeddings e with f∘e = id and e∘f ⊑ id, by brute force.
int count_injection_witnesses(const TreeMap& f)
{
    int n = 0;
    for (const auto& e : enum_embeddings(f.cod(), f.dom())) {
        bool ok = true;
        for (Vertex v = 0; ok && v < f.cod().size(); ++v)
            ok = f(e(v)) == v;
        for (Vertex w = 0; ok && w < f.dom().size(); ++w)
            ok = f.dom().precedes(e(f(w)), w);
        n += ok;
    }
    return n;
}

bool downward_closed(const OrderedTree& t, const std::vector<bool>& in)
{
    for (Vertex w = 1; w < t.size(); ++w)
        if (in[static_cast<std::size_t>(w)] && !in[static_cast<std::size_t>(t.parent(w))])
            return false;
    return in[0];
}

void two_tree_lemmas(const TreeMap& f, PropertyReport& uniq, PropertyReport& subt, PropertyReport& ran, PropertyReport& ima)
{
    const auto& t = f.dom();
    const auto& s = f.cod();
    auto inj = injection_of(f);

    ++uniq.checked;
    if (count_injection_witnesses(f) != 1 || !is_embedding(inj))
        uniq.fail(show(f));

    // Every non-empty downward-closed subset of T.
    const int n = t.size();
    for (std::uint32_t mask = 1; mask < (1u << n); mask += 2) {
        std::vector<bool> in(static_cast<std::size_t>(n));
        std::vector<Vertex> sub;
        for (Vertex w = 0; w < n; ++w)
            if (mask >> w & 1u) {
                in[static_cast<std::size_t>(w)] = true;
                sub.push_back(w);
            }
        if (!downward_closed(t, in))
            continue;
        ++subt.checked;
        std::vector<bool> img(static_cast<std::size_t>(s.size()));
        for (Vertex w : sub)
            img[static_cast<std::size_t>(f(w))] = true;
        bool ok = downward_closed(s, img);
        if (ok) {
            try {
                ok = is_rigid(restrict_to(f, sub).map);
            } catch (const Error&) {
                ok = false;
            }
        }
        if (!ok)
            subt.fail(show(f) + " on " + show(sub));
    }

    for (Vertex v = 0; v < s.size(); ++v) {
        ++ran.checked;
        auto fv = restrict_initial(f, v);
        bool ok = fv.dom().size() == inj(v) + 1 && fv.cod().size() == v + 1 && is_sealed(fv);
        for (Vertex w = 0; ok && w < fv.dom().size(); ++w)
            ok = f(w) <= v && fv(w) == f(w);
        if (!ok)
            ran.fail(show(f) + " v=" + std::to_string(v));
    }

    for (Vertex x : s.leaves()) {
        ++ima.checked;
        const Vertex y = conjugate_leaf_by_definition(inj, x);
        auto fx = restrict_conjugate(f, x);
        bool ok = fx.dom().size() == y + 1 && fx.cod().size() == x + 1 && is_rigid(fx);
        std::vector<bool> hit(static_cast<std::size_t>(x + 1));
        for (Vertex w = 0; ok && w <= y; ++w) {
            ok = f(w) <= x && fx(w) == f(w);
            if (ok)
                hit[static_cast<std::size_t>(f(w))] = true;
        }
        for (bool h : hit)
            ok = ok && h;
        if (!ok)
            ima.fail(show(f) + " x=" + std::to_string(x));
    }
}

}  // namespace

Vertex conjugate_leaf_by_definition(const TreeMap& i, Vertex x)
{
    const auto& s = i.dom();
    const auto& t = i.cod();
    auto sl = s.leaves();
    auto tl = t.leaves();
    if (x == sl.back())
        return tl.back();
    Vertex xp = kNone;
    for (Vertex l : sl)
        if (l > x) {
            xp = l;
            break;
        }
    Vertex best = kNone;
    for (Vertex y : tl)
        if (y < i(xp) && t.meet(i(x), i(xp)) == t.meet(y, i(xp)))
            best = y;
    return best;
}

std::vector<PropertyReport> check_lemma_suite(int max_two, int max_three)
{
    PropertyReport uniq{"injection uniqueness"}, prexmb{"prexmb"}, subt{"subt"}, ran{"ran"}, ima{"ima"};
    PropertyReport coin{"coin"}, trde{"trde"}, cucu{"cucu"}, compot{"compot"};
    auto small = enum_trees_up_to(max_two);
    auto large = enum_trees_up_to(max_three);
    RsCache rs;

    for (const auto& t : small)
        for (const auto& s : small) {
            if (s.size() > t.size())
                continue;
            for (const auto& f : rs.get(t, s))
                two_tree_lemmas(f, uniq, subt, ran, ima);
            for (const auto& e : enum_embeddings(s, t)) {
                ++prexmb.checked;
                auto f = rigid_from_embedding(e);
                if (!is_rigid(f) || !(injection_of(f) == e))
                    prexmb.fail(show(e));
            }
        }

    for (const auto& v : large)
        for (const auto& t : small) {
            if (t.size() > v.size())
                continue;
            const auto& gs = rs.get(v, t);
            if (gs.empty())
                continue;
            std::vector<TreeMap> ginj;
            for (const auto& g : gs)
                ginj.push_back(injection_of(g));
            for (const auto& s : small) {
                if (s.size() > t.size())
                    continue;
                const auto& fs = rs.get(t, s);
                for (const auto& f : fs) {
                    auto d = injection_of(f);
                    for (std::size_t gi = 0; gi < gs.size(); ++gi) {
                        const auto& g = gs[gi];
                        auto fg = compose(f, g);
                        ++coin.checked;
                        if (!is_rigid(fg) || injection_of(fg).values() != compose_values(ginj[gi].values(), d.values()))
                            coin.fail(show(f) + " after " + show(g));
                        for (Vertex x : s.leaves()) {
                            ++compot.checked;
                            const Vertex y = conjugate_leaf(d, x);
                            auto lhs = compose(restrict_conjugate(f, x), restrict_conjugate(g, y));
                            if (!(lhs == restrict_conjugate(fg, x)))
                                compot.fail(show(f) + " after " + show(g) + " x=" + std::to_string(x));
                        }
                    }
                }
            }
            // trde: f: T^w -> S and g: V -> T.
            for (Vertex w = 0; w < t.size(); ++w) {
                auto tw = initial_subtree(t, w).tree;
                std::vector<TreeMap> gw;
                for (const auto& g : gs)
                    gw.push_back(restrict_initial(g, w));
                for (const auto& s : small) {
                    if (s.size() > tw.size())
                        continue;
                    for (const auto& f : rs.get(tw, s)) {
                        auto i = injection_of(f);
                        for (std::size_t gi = 0; gi < gs.size(); ++gi) {
                            auto rhs_full = compose(f, gw[gi]);
                            for (Vertex sv = 0; sv < s.size(); ++sv) {
                                ++trde.checked;
                                auto lhs = compose(restrict_initial(f, sv), restrict_initial(gs[gi], i(sv)));
                                if (!(lhs == restrict_initial(rhs_full, sv)))
                                    trde.fail(show(f) + " g=" + show(gs[gi]) + " w=" + std::to_string(w) +
                                              " v=" + std::to_string(sv));
                            }
                        }
                    }
                }
            }
        }

    // cucu over embeddings i: S -> T, j: T -> V.
    for (const auto& v : large)
        for (const auto& t : small) {
            if (t.size() > v.size())
                continue;
            auto js = enum_embeddings(t, v);
            if (js.empty())
                continue;
            for (const auto& s : small) {
                if (s.size() > t.size())
                    continue;
                for (const auto& i : enum_embeddings(s, t))
                    for (const auto& j : js) {
                        TreeMap ji(s, v, compose_values(j.values(), i.values()));
                        for (Vertex x : s.leaves()) {
                            ++cucu.checked;
                            const Vertex y = conjugate_leaf_by_definition(i, x);
                            const Vertex z = conjugate_leaf_by_definition(j, y);
                            if (conjugate_leaf_by_definition(ji, x) != z || conjugate_leaf(ji, x) != z)
                                cucu.fail(show(i) + " then " + show(j) + " x=" + std::to_string(x));
                        }
                    }
            }
        }

    return {uniq, coin, prexmb, subt, ran, trde, cucu, ima, compot};
}

PropertyReport check_enumeration_complete(int max_vertices)
{
    PropertyReport r{"enumeration complete"};
    auto trees = enum_trees_up_to(max_vertices);
    for (const auto& t : trees)
        for (const auto& s : trees) {
            std::vector<std::vector<Vertex>> rigid, sealed, emb;
            // All |s|^|t| value tuples, in lexicographic order.
            std::vector<Vertex> vals(static_cast<std::size_t>(t.size()), 0);
            while (true) {
                auto k = classify(TreeMap(t, s, vals));
                if (k.rigid)
                    rigid.push_back(vals);
                if (k.rigid && k.sealed)
                    sealed.push_back(vals);
                int pos = t.size() - 1;
                while (pos >= 0 && vals[static_cast<std::size_t>(pos)] == s.size() - 1)
                    vals[static_cast<std::size_t>(pos--)] = 0;
                if (pos < 0)
                    break;
                ++vals[static_cast<std::size_t>(pos)];
            }
            if (s.size() <= t.size()) {
                std::vector<Vertex> e(static_cast<std::size_t>(s.size()), 0);
                while (true) {
                    if (is_embedding(TreeMap(s, t, e)))
                        emb.push_back(e);
                    int pos = s.size() - 1;
                    while (pos >= 0 && e[static_cast<std::size_t>(pos)] == t.size() - 1)
                        e[static_cast<std::size_t>(pos--)] = 0;
                    if (pos < 0)
                        break;
                    ++e[static_cast<std::size_t>(pos)];
                }
            }
            auto values = [](const std::vector<TreeMap>& ms) {
                std::vector<std::vector<Vertex>> out;
                for (const auto& m : ms)
                    out.push_back(m.values());
                return out;
            };
            ++r.checked;
            if (values(enum_rigid_surjections(t, s)) != rigid || values(enum_rigid_surjections(t, s, {.sealed = true})) != sealed ||
                values(enum_embeddings(s, t)) != emb || count_rigid_surjections(t, s) != rigid.size())
                r.fail(show(t.parents()) + " / " + show(s.parents()));
        }
    return r;
}

PropertyReport check_chain_counts(int max_n)
{
    PropertyReport r{"chain counts"};
    for (int n = 1; n <= max_n; ++n)
        for (int k = 1; k <= n; ++k) {
            ++r.checked;
            auto all = count_rigid_surjections(OrderedTree::chain(n), OrderedTree::chain(k));
            auto sealed = count_rigid_surjections(OrderedTree::chain(n), OrderedTree::chain(k), {.sealed = true});
            const std::uint64_t expect_sealed = (n == 1) ? 1 : stirling2(n - 1, k - 1);
            if (all != stirling2(n, k) || sealed != expect_sealed)
                r.fail("n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    return r;
}

PropertyReport check_prvo_agreement(int max_n)
{
    PropertyReport r{"prvo agreement"};
    for (int n = 1; n <= max_n; ++n)
        for (int k = 1; k <= n; ++k)
            for_each_coloring(n, k, false, [&](const std::vector<int>& f) {
                ++r.checked;
                auto v = bridge_prvo(f, k);
                if (v.prvo != v.tree)
                    r.fail(show(f) + " k=" + std::to_string(k));
            });
    return r;
}

PropertyReport check_gr(int max_u, int max_l)
{
    PropertyReport r{"gr compatibility"};
    for (const auto& u : enum_trees_up_to(max_u))
        for (int l = 1; l <= max_l; ++l) {
            try {
                r.checked += gr_compatibility(u, l);
            } catch (const std::logic_error& e) {
                r.fail(show(u.parents()) + " l=" + std::to_string(l) + ": " + e.what());
            }
        }
    return r;
}

std::vector<PropertyReport> check_assembly(int max_u)
{
    PropertyReport plus{"assemble_plus"}, lift{"lift_sealed"}, vee{"assemble_V"}, transport{"constant transport"};
    auto trees = enum_trees_up_to(max_u);
    const auto c2 = OrderedTree::chain(2);
    for (const auto& u : trees) {
        ++plus.checked;
        auto p = assemble_plus(u);
        if (p.tree.size() != u.size() + 1 || p.plus != u.size() || p.tree.parent(p.plus) != 0 ||
            !(initial_subtree(p.tree, p.plus - 1).tree == u))
            plus.fail(show(u.parents()));

        for (const auto& s : trees) {
            if (s.size() > u.size())
                continue;
            for (const auto& f : enum_rigid_surjections(u, s)) {
                ++lift.checked;
                try {
                    lift_sealed(f);
                } catch (const std::exception& e) {
                    lift.fail(show(f) + ": " + e.what());
                }
            }
        }

        ++vee.checked;
        try {
            auto av = assemble_V(u);
            std::uint64_t expect = 1;
            for (Vertex y : av.leaves)
                expect += static_cast<std::uint64_t>(y);
            if (static_cast<std::uint64_t>(av.tree.size()) != expect || av.projections.size() != u.leaves().size())
                vee.fail(show(u.parents()) + ": size");
            for (std::size_t k = 0; k < av.projections.size(); ++k)
                if (!is_rigid(av.projections[k]) || injection_of(av.projections[k]).values() != av.inclusion[k])
                    vee.fail(show(u.parents()) + ": projection");

            auto mn = mn_instance(c2, c2, av.tree);
            auto leaf = leaf_instance(c2, c2, u);
            ++transport.checked;
            auto moved = transport_from_assembled(mn, leaf, av, std::vector<int>(mn.items.size(), 1));
            for (int c : moved)
                if (c != 1) {
                    transport.fail(show(u.parents()));
                    break;
                }
        } catch (const std::exception& e) {
            vee.fail(show(u.parents()) + ": " + e.what());
        }
    }
    return {plus, lift, vee, transport};
}

PropertyReport check_tree_round_trip(int n)
{
    PropertyReport r{"json round trip"};
    for (const auto& t : enum_trees(n)) {
        ++r.checked;
        auto text = dump_json(to_json(t));
        if (!(tree_from_json(parse_json(text)) == t))
            r.fail(show(t.parents()));
    }
    for (const auto& f : enum_forests(n)) {
        ++r.checked;
        if (!(forest_from_json(parse_json(dump_json(to_json(f)))) == f))
            r.fail(show(f.parents()));
    }
    return r;
}

}  // namespace ramsey
