#include "ramsey/enumeration.hpp"

#include "ramsey/error.hpp"

namespace ramsey {

std::vector<OrderedTree> enum_trees(int n)
{
    if (n < 1)
        throw Error(Errc::InvalidArgument, "trees have at least one vertex");
    std::vector<OrderedTree> out;
    for_each_tree(n, [&](OrderedTree t) { out.push_back(std::move(t)); });
    return out;
}

std::vector<OrderedTree> enum_trees_up_to(int n)
{
    std::vector<OrderedTree> out;
    for (int m = 1; m <= n; ++m)
        for_each_tree(m, [&](OrderedTree t) { out.push_back(std::move(t)); });
    return out;
}

std::vector<OrderedForest> enum_forests(int n)
{
    if (n < 0)
        throw Error(Errc::InvalidArgument, "negative forest size");
    std::vector<OrderedForest> out;
    for_each_tree(n + 1, [&](const OrderedTree& t) { out.push_back(OrderedForest::from_closure(t)); });
    return out;
}

std::vector<TreeMap> enum_embeddings(const OrderedTree& s, const OrderedTree& t)
{
    std::vector<TreeMap> out;
    for_each_embedding(s, t, [&](const std::vector<Vertex>& e) { out.emplace_back(s, t, e); });
    return out;
}

std::vector<TreeMap> enum_rigid_surjections(const OrderedTree& t, const OrderedTree& s, RigidOptions opts)
{
    std::vector<TreeMap> out;
    for_each_rigid_surjection(t, s, opts, [&](const std::vector<Vertex>& f, const std::vector<Vertex>&) { out.emplace_back(t, s, f); });
    return out;
}

std::uint64_t count_rigid_surjections(const OrderedTree& t, const OrderedTree& s, RigidOptions opts)
{
    std::uint64_t n = 0;
    for_each_rigid_surjection(t, s, opts, [&](const std::vector<Vertex>&, const std::vector<Vertex>&) { ++n; });
    return n;
}

std::uint64_t count_embeddings(const OrderedTree& s, const OrderedTree& t)
{
    std::uint64_t n = 0;
    for_each_embedding(s, t, [&](const std::vector<Vertex>&) { ++n; });
    return n;
}

std::vector<std::vector<int>> enum_colorings(int k, int b, bool pin_first)
{
    if (k < 0 || b < 1)
        throw Error(Errc::InvalidArgument, "colorings need k >= 0 items and b >= 1 colours");
    std::vector<std::vector<int>> out;
    for_each_coloring(k, b, pin_first, [&](const std::vector<int>& c) { out.push_back(c); });
    return out;
}

std::uint64_t stirling2(int n, int k)
{
    if (n < 0 || k < 0)
        return 0;
    // S(n,k) = k S(n-1,k) + S(n-1,k-1)
    std::vector<std::vector<std::uint64_t>> s(static_cast<std::size_t>(n) + 1, std::vector<std::uint64_t>(static_cast<std::size_t>(k) + 1, 0));
    s[0][0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= k; ++j)
            s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                static_cast<std::uint64_t>(j) * s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] +
                s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    return s[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

std::uint64_t catalan(int n)
{
    std::uint64_t c = 1;
    for (int i = 0; i < n; ++i)
        c = c * 2 * (2 * static_cast<std::uint64_t>(i) + 1) / (static_cast<std::uint64_t>(i) + 2);
    return c;
}

}  // namespace ramsey
