#pragma once

// Deterministic generators. Every stream is in lexicographic order of its
// value tuples (parent arrays for trees); fixtures depend on that order.
//
// The visitor templates call `visit(values, injection)` (rigid surjections)
// or `visit(values)` (embeddings, colorings). A visitor returning bool stops
// the stream by returning false.

#include <cstdint>
#include <functional>
#include <type_traits>
#include <vector>

#include "ramsey/tree.hpp"
#include "ramsey/tree_map.hpp"

namespace ramsey {

namespace detail {

template <class F, class... Args>
bool call_visitor(F& f, Args&&... args)
{
    if constexpr (std::is_same_v<std::invoke_result_t<F&, Args...>, bool>)
        return f(std::forward<Args>(args)...);
    else {
        f(std::forward<Args>(args)...);
        return true;
    }
}

}  // namespace detail

struct RigidOptions {
    bool sealed = false;
    int a_prefix = 0;  // force f(w) = w on the first a_prefix vertices
};

/// Backtracking over value tuples of f: T -> S. A new value must be the next
/// undiscovered one (first occurrences are the injection, which is
/// ≤-increasing); an old value c is allowed at w only if e(c) ⊑ w; a new
/// value must keep e meet-preserving.
template <class Visitor>
void for_each_rigid_surjection(const OrderedTree& t, const OrderedTree& s, RigidOptions opts, Visitor&& visit)
{
    const int nt = t.size();
    const int ns = s.size();
    if (ns > nt || opts.a_prefix > ns)
        return;
    std::vector<Vertex> f(static_cast<std::size_t>(nt), kNone);
    std::vector<Vertex> e(static_cast<std::size_t>(ns), kNone);
    bool stop = false;

    auto rec = [&](auto&& self, int w, int found) -> void {
        if (stop)
            return;
        if (w == nt) {
            if (found == ns && !detail::call_visitor(visit, std::as_const(f), std::as_const(e)))
                stop = true;
            return;
        }
        const int remaining_after = nt - w - 1;
        const bool last = w == nt - 1;
        auto try_value = [&](Vertex c) {
            f[static_cast<std::size_t>(w)] = c;
            self(self, w + 1, c == found ? found + 1 : found);
        };
        if (w < opts.a_prefix) {
            if (w == found && w < ns) {
                bool ok = true;
                for (Vertex u = 0; ok && u < found; ++u)
                    ok = e[static_cast<std::size_t>(s.meet(u, found))] == t.meet(e[static_cast<std::size_t>(u)], w);
                if (ok) {
                    e[static_cast<std::size_t>(found)] = w;
                    try_value(found);
                }
            }
            return;
        }
        // Old values.
        if (!(opts.sealed && last)) {
            if (remaining_after >= ns - found)
                for (Vertex c = 0; c < found; ++c)
                    if (t.precedes(e[static_cast<std::size_t>(c)], w))
                        try_value(c);
        }
        // The next new value.
        if (found < ns && remaining_after >= ns - found - 1) {
            const Vertex c = found;
            if (opts.sealed && ((c == ns - 1) != last))
                return;
            bool ok = true;
            for (Vertex u = 0; ok && u < c; ++u)
                ok = e[static_cast<std::size_t>(s.meet(u, c))] == t.meet(e[static_cast<std::size_t>(u)], w);
            if (ok) {
                e[static_cast<std::size_t>(c)] = w;
                try_value(c);
            }
        }
    };
    rec(rec, 0, 0);
}

/// Strictly increasing, root-preserving, meet-preserving value tuples.
template <class Visitor>
void for_each_embedding(const OrderedTree& s, const OrderedTree& t, Visitor&& visit)
{
    const int ns = s.size();
    const int nt = t.size();
    if (ns > nt)
        return;
    std::vector<Vertex> e(static_cast<std::size_t>(ns), kNone);
    bool stop = false;
    auto rec = [&](auto&& self, int v) -> void {
        if (stop)
            return;
        if (v == ns) {
            if (!detail::call_visitor(visit, std::as_const(e)))
                stop = true;
            return;
        }
        const Vertex lo = v == 0 ? 0 : e[static_cast<std::size_t>(v - 1)] + 1;
        const Vertex hi = v == 0 ? 0 : nt - (ns - v);
        for (Vertex c = lo; c <= hi && !stop; ++c) {
            bool ok = true;
            for (Vertex u = 0; ok && u < v; ++u)
                ok = e[static_cast<std::size_t>(s.meet(u, v))] == t.meet(e[static_cast<std::size_t>(u)], c);
            if (ok) {
                e[static_cast<std::size_t>(v)] = c;
                self(self, v + 1);
            }
        }
    };
    rec(rec, 0);
}

/// All canonical trees with n vertices, in lexicographic order of parent
/// arrays; there are Catalan(n-1) of them.
template <class Visitor>
void for_each_tree(int n, Visitor&& visit)
{
    if (n < 1)
        return;
    std::vector<Vertex> parent(static_cast<std::size_t>(n), kNone);
    std::vector<Vertex> path;  // root path of vertex i-1, root first
    bool stop = false;
    auto rec = [&](auto&& self, int i) -> void {
        if (stop)
            return;
        if (i == n) {
            if (!detail::call_visitor(visit, OrderedTree::from_parents(parent)))
                stop = true;
            return;
        }
        const std::size_t depth = path.size();
        for (std::size_t d = 0; d < depth && !stop; ++d) {
            parent[static_cast<std::size_t>(i)] = path[d];
            std::vector<Vertex> saved(path.begin() + static_cast<std::ptrdiff_t>(d) + 1, path.end());
            path.resize(d + 1);
            path.push_back(i);
            self(self, i + 1);
            path.pop_back();
            path.insert(path.end(), saved.begin(), saved.end());
        }
    };
    path.push_back(0);
    rec(rec, 1);
}

std::vector<OrderedTree> enum_trees(int n);
/// Trees with at most n vertices, by size then lexicographically.
std::vector<OrderedTree> enum_trees_up_to(int n);
/// Ordered forests with exactly n vertices (n >= 0).
std::vector<OrderedForest> enum_forests(int n);

std::vector<TreeMap> enum_embeddings(const OrderedTree& s, const OrderedTree& t);
std::vector<TreeMap> enum_rigid_surjections(const OrderedTree& t, const OrderedTree& s, RigidOptions opts = {});
std::uint64_t count_rigid_surjections(const OrderedTree& t, const OrderedTree& s, RigidOptions opts = {});
std::uint64_t count_embeddings(const OrderedTree& s, const OrderedTree& t);

/// All b^k colorings in counting order (last item fastest). With
/// pin_first, item 0 is fixed to colour 0.
template <class Visitor>
void for_each_coloring(int k, int b, bool pin_first, Visitor&& visit)
{
    std::vector<int> c(static_cast<std::size_t>(k), 0);
    while (true) {
        if (!detail::call_visitor(visit, std::as_const(c)))
            return;
        int pos = k - 1;
        while (pos >= 0 && (c[static_cast<std::size_t>(pos)] == b - 1 || (pin_first && pos == 0))) {
            c[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0)
            return;
        ++c[static_cast<std::size_t>(pos)];
    }
}

std::vector<std::vector<int>> enum_colorings(int k, int b, bool pin_first = false);

/// Independent counts used as oracles.
std::uint64_t stirling2(int n, int k);
std::uint64_t catalan(int n);

}  // namespace ramsey
