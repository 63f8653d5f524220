#include "ramsey/tree_map.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ramsey/error.hpp"

namespace ramsey {

namespace {

bool morphism_values(const OrderedTree& s, const OrderedTree& t, std::span<const Vertex> e)
{
    const int n = s.size();
    if (e.empty() || e[0] != 0)
        return false;
    for (int v = 0; v + 1 < n; ++v)
        if (e[static_cast<std::size_t>(v)] > e[static_cast<std::size_t>(v + 1)])
            return false;
    for (Vertex v = 0; v < n; ++v)
        for (Vertex w = v + 1; w < n; ++w)
            if (e[static_cast<std::size_t>(s.meet(v, w))] != t.meet(e[static_cast<std::size_t>(v)], e[static_cast<std::size_t>(w)]))
                return false;
    return true;
}

}  // namespace

TreeMap::TreeMap(OrderedTree dom, OrderedTree cod, std::vector<Vertex> values)
    : dom_(std::move(dom)), cod_(std::move(cod)), values_(std::move(values))
{
    if (static_cast<int>(values_.size()) != dom_.size())
        throw Error(Errc::InvalidArgument, "map has " + std::to_string(values_.size()) + " values for a domain of size " +
                                               std::to_string(dom_.size()));
    for (Vertex v : values_)
        if (!cod_.contains(v))
            throw Error(Errc::VertexOutOfRange, "value " + std::to_string(v) + " outside codomain");
}

TreeMap TreeMap::identity(const OrderedTree& t)
{
    std::vector<Vertex> values(static_cast<std::size_t>(t.size()));
    for (Vertex v = 0; v < t.size(); ++v)
        values[static_cast<std::size_t>(v)] = v;
    return TreeMap(t, t, std::move(values));
}

bool is_morphism(const TreeMap& e) { return morphism_values(e.dom(), e.cod(), e.values()); }

bool is_embedding(const TreeMap& e)
{
    if (!is_morphism(e))
        return false;
    // A monotone map of linear orders is injective iff strictly increasing.
    for (int v = 0; v + 1 < e.size(); ++v)
        if (e(v) == e(v + 1))
            return false;
    return true;
}

std::vector<Vertex> rigid_injection_values(const TreeMap& f)
{
    const OrderedTree& t = f.dom();
    const OrderedTree& s = f.cod();
    std::vector<Vertex> e(static_cast<std::size_t>(s.size()), kNone);
    for (Vertex w = 0; w < t.size(); ++w) {
        auto& slot = e[static_cast<std::size_t>(f(w))];
        slot = slot == kNone ? w : t.meet(slot, w);
    }
    for (Vertex v = 0; v < s.size(); ++v)
        if (e[static_cast<std::size_t>(v)] == kNone || f(e[static_cast<std::size_t>(v)]) != v)
            return {};
    for (Vertex w = 0; w < t.size(); ++w)
        if (!t.precedes(e[static_cast<std::size_t>(f(w))], w))
            return {};
    if (!morphism_values(s, t, e))
        return {};
    return e;
}

bool is_rigid(const TreeMap& f) { return !rigid_injection_values(f).empty(); }

KindFlags classify(const TreeMap& f, int a_prefix)
{
    KindFlags k;
    k.a_prefix = a_prefix;
    k.morphism = is_morphism(f);
    k.embedding = k.morphism && is_embedding(f);
    auto e = rigid_injection_values(f);
    k.rigid = !e.empty();
    if (k.rigid) {
        k.sealed = e[static_cast<std::size_t>(f.cod().size() - 1)] == f.dom().size() - 1;
        k.a_rigid = a_prefix <= f.dom().size() && a_prefix <= f.cod().size();
        for (Vertex v = 0; k.a_rigid && v < a_prefix; ++v)
            k.a_rigid = f(v) == v;
    }
    return k;
}

TreeMap injection_of(const TreeMap& f)
{
    auto e = rigid_injection_values(f);
    if (e.empty())
        throw Error(Errc::NotRigid, "the fibre meets do not witness a rigid surjection");
    return TreeMap(f.cod(), f.dom(), std::move(e));
}

TreeMap compose(const TreeMap& f, const TreeMap& g)
{
    if (!(g.cod() == f.dom()))
        throw Error(Errc::DomainMismatch, "codomain of the inner map is not the domain of the outer map");
    std::vector<Vertex> values(static_cast<std::size_t>(g.size()));
    for (Vertex v = 0; v < g.size(); ++v)
        values[static_cast<std::size_t>(v)] = f(g(v));
    return TreeMap(g.dom(), f.cod(), std::move(values));
}

TreeMap rigid_from_embedding(const TreeMap& e)
{
    if (!is_embedding(e))
        throw Error(Errc::NotEmbedding, "rigid_from_embedding needs an embedding");
    const OrderedTree& s = e.dom();
    const OrderedTree& t = e.cod();
    std::vector<Vertex> values(static_cast<std::size_t>(t.size()));
    for (Vertex w = 0; w < t.size(); ++w) {
        // The v with e(v) ⊑ w form a chain in S; its ⊑-largest has the
        // largest id.
        Vertex best = 0;
        for (Vertex v = 0; v < s.size(); ++v)
            if (t.precedes(e(v), w))
                best = v;
        values[static_cast<std::size_t>(w)] = best;
    }
    return TreeMap(t, s, std::move(values));
}

TreeMap restrict_initial(const TreeMap& f, Vertex v)
{
    f.cod().require_vertex(v);
    auto e = rigid_injection_values(f);
    if (e.empty())
        throw Error(Errc::NotRigid, "restrict_initial needs a rigid surjection");
    Vertex top = e[static_cast<std::size_t>(v)];
    auto dom = initial_subtree(f.dom(), top).tree;
    auto cod = initial_subtree(f.cod(), v).tree;
    std::vector<Vertex> values(f.values().begin(), f.values().begin() + top + 1);
    return TreeMap(std::move(dom), std::move(cod), std::move(values));
}

bool is_sealed(const TreeMap& f)
{
    auto e = rigid_injection_values(f);
    if (e.empty())
        throw Error(Errc::NotRigid, "sealedness is defined for rigid surjections");
    return e.back() == f.dom().size() - 1;
}

Vertex conjugate_leaf(const TreeMap& i, Vertex x)
{
    if (!is_embedding(i))
        throw Error(Errc::NotEmbedding, "conjugate leaves are taken along an embedding");
    const OrderedTree& s = i.dom();
    const OrderedTree& t = i.cod();
    s.require_vertex(x);
    if (!s.is_leaf(x))
        throw Error(Errc::NotLeaf, "vertex " + std::to_string(x) + " is not a leaf");
    auto leaves = s.leaves();
    if (x == leaves.back())
        return t.largest_leaf();
    Vertex next = *std::upper_bound(leaves.begin(), leaves.end(), x);
    const Vertex ix = i(x);
    const Vertex inext = i(next);
    const Vertex m = t.meet(ix, inext);
    auto tleaves = t.leaves();
    for (auto it = tleaves.rbegin(); it != tleaves.rend(); ++it)
        if (*it < inext && t.meet(*it, inext) == m)
            return *it;
    throw std::logic_error("conjugate_leaf: no leaf satisfies the conjugacy condition");
}

TreeMap restrict_conjugate(const TreeMap& f, Vertex x)
{
    f.cod().require_vertex(x);
    if (!f.cod().is_leaf(x))
        throw Error(Errc::NotLeaf, "vertex " + std::to_string(x) + " is not a leaf");
    auto e = injection_of(f);
    Vertex y = conjugate_leaf(e, x);
    auto dom = initial_subtree(f.dom(), y).tree;
    auto cod = initial_subtree(f.cod(), x).tree;
    std::vector<Vertex> values(f.values().begin(), f.values().begin() + y + 1);
    return TreeMap(std::move(dom), std::move(cod), std::move(values));
}

Restriction restrict_to(const TreeMap& f, std::span<const Vertex> subtree)
{
    auto closed_subset = [](const OrderedTree& t, std::vector<Vertex> set) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        if (set.empty())
            throw Error(Errc::InvalidArgument, "subtrees are non-empty");
        std::vector<Vertex> index(static_cast<std::size_t>(t.size()), kNone);
        for (std::size_t i = 0; i < set.size(); ++i) {
            t.require_vertex(set[i]);
            index[static_cast<std::size_t>(set[i])] = static_cast<Vertex>(i);
        }
        std::vector<Vertex> parents;
        for (Vertex v : set) {
            Vertex p = t.parents()[static_cast<std::size_t>(v)];
            if (p != kNone && index[static_cast<std::size_t>(p)] == kNone)
                throw Error(Errc::InvalidArgument, "vertex set is not downward closed");
            parents.push_back(p == kNone ? kNone : index[static_cast<std::size_t>(p)]);
        }
        return std::tuple{OrderedTree::from_parents(std::move(parents)), std::move(set), std::move(index)};
    };
    auto [dom, dom_set, dom_index] = closed_subset(f.dom(), {subtree.begin(), subtree.end()});
    std::vector<Vertex> image;
    for (Vertex v : dom_set)
        image.push_back(f(v));
    auto [cod, cod_set, cod_index] = closed_subset(f.cod(), image);
    std::vector<Vertex> values;
    for (Vertex v : dom_set)
        values.push_back(cod_index[static_cast<std::size_t>(f(v))]);
    return {TreeMap(std::move(dom), std::move(cod), std::move(values)), std::move(dom_set), std::move(cod_set)};
}

TreeMap chain_map(std::span<const Vertex> values, int cod_size)
{
    return TreeMap(OrderedTree::chain(static_cast<int>(values.size())), OrderedTree::chain(cod_size),
                   std::vector<Vertex>(values.begin(), values.end()));
}

bool check_spfu(std::span<const Vertex> p, int a, int l, int k)
{
    if (a < 1 || l < 0 || k < 1 || static_cast<int>(p.size()) != a + l * k)
        throw Error(Errc::InvalidArgument, "p must be defined on A⊕(L×I)");
    for (int z = 0; z < a; ++z)
        if (p[static_cast<std::size_t>(z)] != z)
            return false;
    for (int x = 0; x < l; ++x) {
        bool hit = false;
        for (int i = 0; i < k; ++i) {
            Vertex val = p[static_cast<std::size_t>(a + x * k + i)];
            if (val == a + x)
                hit = true;
            else if (val < 0 || val >= a)
                return false;
        }
        if (!hit)
            return false;
    }
    if (!classify(chain_map(p, a + l), a).a_rigid)
        throw std::logic_error("check_spfu: a map with the block property failed to be A-rigid");
    return true;
}

}  // namespace ramsey
