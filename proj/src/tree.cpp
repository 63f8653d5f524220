#include "ramsey/tree.hpp"

#include <algorithm>
#include <mutex>
#include <string>

#include "ramsey/error.hpp"

namespace ramsey {

namespace {

constexpr std::size_t kMeetTableLimit = 128;

std::string vertex_message(Vertex v, int size)
{
    return "vertex " + std::to_string(v) + " not in tree of size " + std::to_string(size);
}

// Ancestors of v (v first, root last) in a validated raw parent array.
std::vector<Vertex> ancestor_path(std::span<const Vertex> parents, Vertex v)
{
    std::vector<Vertex> path;
    for (Vertex u = v; u != kNone; u = parents[static_cast<std::size_t>(u)])
        path.push_back(u);
    return path;
}

void validate_raw_tree(std::span<const Vertex> parents)
{
    const int n = static_cast<int>(parents.size());
    if (n == 0)
        throw Error(Errc::NotATree, "empty parent array");
    int roots = 0;
    for (Vertex p : parents) {
        if (p == kNone)
            ++roots;
        else if (p < 0 || p >= n)
            throw Error(Errc::NotATree, "parent " + std::to_string(p) + " out of range");
    }
    if (roots != 1)
        throw Error(Errc::NotATree, std::to_string(roots) + " roots");
    // Every vertex must reach the root in fewer than n steps.
    for (Vertex v = 0; v < n; ++v) {
        Vertex u = v;
        int steps = 0;
        while (parents[static_cast<std::size_t>(u)] != kNone) {
            u = parents[static_cast<std::size_t>(u)];
            if (++steps > n)
                throw Error(Errc::NotATree, "cycle through vertex " + std::to_string(v));
        }
    }
}

void require_in(std::span<const Vertex> parents, Vertex v)
{
    if (v < 0 || v >= static_cast<int>(parents.size()))
        throw Error(Errc::VertexOutOfRange, vertex_message(v, static_cast<int>(parents.size())));
}

}  // namespace

// ---------------------------------------------------------------- OrderedTree

OrderedTree::OrderedTree() : OrderedTree(chain(1)) {}

OrderedTree OrderedTree::from_parents(std::vector<Vertex> parents)
{
    validate_raw_tree(parents);
    if (!is_canonical(parents))
        throw Error(Errc::NonCanonical, "parent array is not in lexicographic (preorder) form");
    return build(std::move(parents));
}

OrderedTree OrderedTree::chain(int n)
{
    if (n < 1)
        throw Error(Errc::EmptyLinearOrder, "chain needs at least one vertex");
    // Chains are built over and over by chain_map; small ones are shared.
    static std::mutex mu;
    static std::vector<std::shared_ptr<const Data>> cache;
    const auto idx = static_cast<std::size_t>(n);
    if (idx <= kMeetTableLimit) {
        std::lock_guard<std::mutex> lock(mu);
        if (cache.size() <= idx)
            cache.resize(idx + 1);
        if (cache[idx])
            return OrderedTree(cache[idx]);
    }
    std::vector<Vertex> parents(idx);
    for (int i = 0; i < n; ++i)
        parents[static_cast<std::size_t>(i)] = i - 1;
    OrderedTree t = build(std::move(parents));
    if (idx <= kMeetTableLimit) {
        std::lock_guard<std::mutex> lock(mu);
        cache[idx] = t.data_;
    }
    return t;
}

OrderedTree OrderedTree::build(std::vector<Vertex> parents)
{
    auto data = std::make_shared<Data>();
    const std::size_t n = parents.size();
    data->parent = std::move(parents);
    data->depth.assign(n, 0);
    data->end.assign(n, 0);
    data->children.assign(n, {});
    for (std::size_t v = 1; v < n; ++v) {
        auto p = static_cast<std::size_t>(data->parent[v]);
        data->depth[v] = data->depth[p] + 1;
        data->children[p].push_back(static_cast<Vertex>(v));
    }
    for (std::size_t i = n; i-- > 0;) {
        Vertex end = static_cast<Vertex>(i) + 1;
        for (Vertex c : data->children[i])
            end = std::max(end, data->end[static_cast<std::size_t>(c)]);
        data->end[i] = end;
    }
    for (int d : data->depth)
        data->height = std::max(data->height, d + 1);

    OrderedTree tree(data);
    if (n <= kMeetTableLimit) {
        data->meet_table.resize(n * n);
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t w = 0; w < n; ++w)
                data->meet_table[v * n + w] = tree.walk_meet(static_cast<Vertex>(v), static_cast<Vertex>(w));
    }
    return tree;
}

Vertex OrderedTree::walk_meet(Vertex v, Vertex w) const noexcept
{
    const auto& d = *data_;
    while (d.depth[static_cast<std::size_t>(v)] > d.depth[static_cast<std::size_t>(w)])
        v = d.parent[static_cast<std::size_t>(v)];
    while (d.depth[static_cast<std::size_t>(w)] > d.depth[static_cast<std::size_t>(v)])
        w = d.parent[static_cast<std::size_t>(w)];
    while (v != w) {
        v = d.parent[static_cast<std::size_t>(v)];
        w = d.parent[static_cast<std::size_t>(w)];
    }
    return v;
}

void OrderedTree::require_vertex(Vertex v) const
{
    if (!contains(v))
        throw Error(Errc::VertexOutOfRange, vertex_message(v, size()));
}

Vertex OrderedTree::parent(Vertex v) const
{
    require_vertex(v);
    return data_->parent[static_cast<std::size_t>(v)];
}

int OrderedTree::height(Vertex v) const
{
    require_vertex(v);
    return depth(v) + 1;
}

const std::vector<Vertex>& OrderedTree::children(Vertex v) const
{
    require_vertex(v);
    return data_->children[static_cast<std::size_t>(v)];
}

bool OrderedTree::is_leaf(Vertex v) const { return children(v).empty(); }

std::vector<Vertex> OrderedTree::leaves() const
{
    std::vector<Vertex> out;
    for (Vertex v = 0; v < size(); ++v)
        if (data_->children[static_cast<std::size_t>(v)].empty())
            out.push_back(v);
    return out;
}

// -------------------------------------------------------------- OrderedForest

OrderedForest OrderedForest::from_parents(const std::vector<Vertex>& parents)
{
    std::vector<Vertex> shifted;
    shifted.reserve(parents.size() + 1);
    shifted.push_back(kNone);
    for (Vertex p : parents) {
        if (p != kNone && (p < 0 || p >= static_cast<Vertex>(parents.size())))
            throw Error(Errc::NotATree, "parent " + std::to_string(p) + " out of range");
        shifted.push_back(p == kNone ? 0 : p + 1);
    }
    return OrderedForest(OrderedTree::from_parents(std::move(shifted)));
}

OrderedForest OrderedForest::antichain(int n)
{
    return from_parents(std::vector<Vertex>(static_cast<std::size_t>(n), kNone));
}

OrderedForest OrderedForest::chain(int n)
{
    std::vector<Vertex> parents(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        parents[static_cast<std::size_t>(i)] = i - 1;
    return from_parents(parents);
}

std::vector<Vertex> OrderedForest::parents() const
{
    std::vector<Vertex> out;
    out.reserve(static_cast<std::size_t>(size()));
    const auto& cp = closure_.parents();
    for (std::size_t i = 1; i < cp.size(); ++i)
        out.push_back(cp[i] == 0 ? kNone : cp[i] - 1);
    return out;
}

void OrderedForest::require_vertex(Vertex v) const
{
    if (v < 0 || v >= size())
        throw Error(Errc::VertexOutOfRange, vertex_message(v, size()));
}

Vertex OrderedForest::parent(Vertex v) const
{
    require_vertex(v);
    Vertex p = closure_.parents()[static_cast<std::size_t>(v + 1)];
    return p == 0 ? kNone : p - 1;
}

int OrderedForest::height(Vertex v) const
{
    require_vertex(v);
    return closure_.depth(v + 1);
}

std::vector<Vertex> OrderedForest::minimal_vertices() const
{
    std::vector<Vertex> out;
    for (Vertex c : closure_.children(0))
        out.push_back(c - 1);
    return out;
}

std::vector<std::pair<Vertex, Vertex>> OrderedForest::components() const
{
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex c : closure_.children(0))
        out.emplace_back(c - 1, closure_.subtree_end(c) - 1);
    return out;
}

OrderedTree LinearOrder::as_tree() const { return OrderedTree::chain(size); }

// ---------------------------------------------------------- free functions

bool is_canonical(std::span<const Vertex> parents)
{
    if (parents.empty() || parents[0] != kNone)
        return false;
    // Preorder: the parent of i must lie on the root path of i-1.
    std::vector<Vertex> path{0};
    for (std::size_t i = 1; i < parents.size(); ++i) {
        Vertex p = parents[i];
        while (!path.empty() && path.back() != p)
            path.pop_back();
        if (path.empty())
            return false;
        path.push_back(static_cast<Vertex>(i));
    }
    return true;
}

Canonicalized canonicalize(std::span<const Vertex> parents)
{
    validate_raw_tree(parents);
    const std::size_t n = parents.size();
    std::vector<std::vector<Vertex>> kids(n);
    Vertex root = kNone;
    for (std::size_t v = 0; v < n; ++v) {
        if (parents[v] == kNone)
            root = static_cast<Vertex>(v);
        else
            kids[static_cast<std::size_t>(parents[v])].push_back(static_cast<Vertex>(v));
    }
    std::vector<Vertex> old_to_new(n, kNone);
    std::vector<Vertex> stack{root};
    Vertex next = 0;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        old_to_new[static_cast<std::size_t>(v)] = next++;
        const auto& ks = kids[static_cast<std::size_t>(v)];
        for (auto it = ks.rbegin(); it != ks.rend(); ++it)
            stack.push_back(*it);
    }
    std::vector<Vertex> canon(n, kNone);
    for (std::size_t v = 0; v < n; ++v)
        if (parents[v] != kNone)
            canon[static_cast<std::size_t>(old_to_new[v])] = old_to_new[static_cast<std::size_t>(parents[v])];
    return {OrderedTree::from_parents(std::move(canon)), std::move(old_to_new)};
}

CanonicalizedForest canonicalize_forest(std::span<const Vertex> parents)
{
    std::vector<Vertex> shifted;
    shifted.reserve(parents.size() + 1);
    shifted.push_back(kNone);
    for (Vertex p : parents)
        shifted.push_back(p == kNone ? 0 : (p < 0 ? p : p + 1));
    for (std::size_t i = 1; i < shifted.size(); ++i)
        if (shifted[i] < 0 || shifted[i] >= static_cast<Vertex>(shifted.size()))
            throw Error(Errc::NotATree, "parent out of range");
    auto c = canonicalize(shifted);
    std::vector<Vertex> old_to_new;
    old_to_new.reserve(parents.size());
    for (std::size_t i = 1; i < c.old_to_new.size(); ++i)
        old_to_new.push_back(c.old_to_new[i] - 1);
    return {OrderedForest::from_closure(std::move(c.tree)), std::move(old_to_new)};
}

Vertex meet(std::span<const Vertex> parents, Vertex v, Vertex w)
{
    require_in(parents, v);
    require_in(parents, w);
    auto pv = ancestor_path(parents, v);
    auto pw = ancestor_path(parents, w);
    // Largest common predecessor: walk both root paths from the root end.
    Vertex m = kNone;
    auto iv = pv.rbegin();
    auto iw = pw.rbegin();
    for (; iv != pv.rend() && iw != pw.rend() && *iv == *iw; ++iv, ++iw)
        m = *iv;
    return m;
}

Order lex_compare(std::span<const Vertex> parents, Vertex v, Vertex w)
{
    require_in(parents, v);
    require_in(parents, w);
    if (v == w)
        return Order::Equal;
    auto pv = ancestor_path(parents, v);
    auto pw = ancestor_path(parents, w);
    if (std::find(pw.begin(), pw.end(), v) != pw.end())
        return Order::Less;  // v is a predecessor of w
    if (std::find(pv.begin(), pv.end(), w) != pv.end())
        return Order::Greater;
    // Compare the predecessors of v and w inside im(v ∧ w); siblings are
    // ordered by index.
    auto iv = pv.rbegin();
    auto iw = pw.rbegin();
    while (*iv == *iw) {
        ++iv;
        ++iw;
    }
    return *iv < *iw ? Order::Less : Order::Greater;
}

Order lex_compare(const OrderedTree& tree, Vertex v, Vertex w)
{
    return lex_compare(std::span<const Vertex>(tree.parents()), v, w);
}

Subtree initial_subtree(const OrderedTree& tree, Vertex v)
{
    tree.require_vertex(v);
    std::vector<Vertex> parents(tree.parents().begin(), tree.parents().begin() + v + 1);
    std::vector<Vertex> inclusion(static_cast<std::size_t>(v) + 1);
    for (Vertex i = 0; i <= v; ++i)
        inclusion[static_cast<std::size_t>(i)] = i;
    return {OrderedTree::from_parents(std::move(parents)), std::move(inclusion)};
}

Attached attach(const OrderedTree& base, std::span<const Vertex> points, std::span<const OrderedForest> forests)
{
    if (points.size() != forests.size())
        throw Error(Errc::InvalidArgument, "attach needs one forest per attachment point");
    for (std::size_t i = 0; i < points.size(); ++i) {
        base.require_vertex(points[i]);
        for (std::size_t j = 0; j < i; ++j)
            if (points[i] == points[j])
                throw Error(Errc::DuplicateAttachPoint, "vertex " + std::to_string(points[i]) + " used twice");
    }
    // Raw array: base vertices first, then each forest in turn. Appending
    // makes the forest minima the last successors of their attachment point.
    std::vector<Vertex> raw(base.parents());
    std::vector<Vertex> offsets;
    for (std::size_t i = 0; i < forests.size(); ++i) {
        auto offset = static_cast<Vertex>(raw.size());
        offsets.push_back(offset);
        for (Vertex p : forests[i].parents())
            raw.push_back(p == kNone ? points[i] : p + offset);
    }
    auto canon = canonicalize(raw);
    Attached out{canon.tree, {}, {}};
    out.base_embedding.assign(canon.old_to_new.begin(), canon.old_to_new.begin() + base.size());
    for (std::size_t i = 0; i < forests.size(); ++i) {
        auto first = canon.old_to_new.begin() + offsets[i];
        out.part_embeddings.emplace_back(first, first + forests[i].size());
    }
    return out;
}

OrderedTree oplus(LinearOrder prefix, const OrderedForest& forest)
{
    if (prefix.size < 1)
        throw Error(Errc::EmptyLinearOrder, "A ⊕ F needs a non-empty linear order A");
    OrderedTree chain = prefix.as_tree();
    const Vertex top = prefix.size - 1;
    return attach(chain, std::span<const Vertex>(&top, 1), std::span<const OrderedForest>(&forest, 1)).tree;
}

OrderedTree one_plus(const OrderedForest& forest) { return forest.closure(); }

OrderedForest remove_root(const OrderedTree& tree) { return OrderedForest::from_closure(tree); }

bool has_linear_prefix(const OrderedTree& tree, int prefix)
{
    if (prefix < 0 || prefix > tree.size())
        return false;
    if (prefix == 0)
        return true;
    for (Vertex i = 1; i < prefix; ++i)
        if (tree.parents()[static_cast<std::size_t>(i)] != i - 1)
            return false;
    // Everything beyond the chain sits above its top element.
    return tree.subtree_end(prefix - 1) == tree.size();
}

}  // namespace ramsey
