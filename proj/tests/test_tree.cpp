#include <doctest.h>

#include "ramsey/enumeration.hpp"
#include "ramsey/error.hpp"
#include "ramsey/tensor.hpp"
#include "ramsey/tree.hpp"

using namespace ramsey;

namespace {

OrderedTree T(std::vector<Vertex> p) { return OrderedTree::from_parents(std::move(p)); }

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

TEST_CASE("canonicalize reorders siblings by index")
{
    std::vector<Vertex> raw{kNone, 0, 0, 1};
    auto c = canonicalize(raw);
    CHECK(c.tree.parents() == std::vector<Vertex>{kNone, 0, 1, 0});
    CHECK(c.old_to_new == std::vector<Vertex>{0, 1, 3, 2});

    std::vector<Vertex> chain{kNone, 0, 1};
    auto cc = canonicalize(chain);
    CHECK(cc.tree == OrderedTree::chain(3));
    CHECK(cc.old_to_new == std::vector<Vertex>{0, 1, 2});

    std::vector<Vertex> two_roots{kNone, kNone, 0};
    CHECK(code_of([&] { canonicalize(two_roots); }) == Errc::NotATree);
    std::vector<Vertex> cycle{kNone, 2, 1};
    CHECK(code_of([&] { canonicalize(cycle); }) == Errc::NotATree);
}

TEST_CASE("from_parents refuses non-canonical arrays")
{
    CHECK(code_of([] { T({kNone, 0, 0, 1}); }) == Errc::NonCanonical);
    CHECK(code_of([] { T({}); }) == Errc::NotATree);
}

TEST_CASE("meet and lex_compare")
{
    auto y = T({kNone, 0, 0});
    CHECK(y.meet(1, 2) == 0);
    auto c3 = OrderedTree::chain(3);
    CHECK(c3.meet(1, 2) == 1);
    for (Vertex v = 0; v < 3; ++v)
        CHECK(y.meet(v, v) == v);

    std::vector<Vertex> raw{kNone, 0, 0, 1};
    CHECK(lex_compare(raw, 3, 2) == Order::Less);
    CHECK(lex_compare(raw, 2, 2) == Order::Equal);
    CHECK(lex_compare(c3, 0, 2) == Order::Less);
    CHECK(code_of([&] { lex_compare(c3, 0, 3); }) == Errc::VertexOutOfRange);
}

TEST_CASE("initial subtrees")
{
    CHECK(initial_subtree(OrderedTree::chain(3), 1).tree == OrderedTree::chain(2));
    auto t = T({kNone, 0, 1, 0});
    auto sub = initial_subtree(t, 2);
    CHECK(sub.tree == OrderedTree::chain(3));
    CHECK(sub.inclusion == std::vector<Vertex>{0, 1, 2});
    CHECK(initial_subtree(t, 3).tree == t);
}

TEST_CASE("attach and oplus")
{
    const Vertex root = 0;
    auto pt = OrderedForest::antichain(1);
    CHECK(attach(OrderedTree(), std::span<const Vertex>(&root, 1), std::span<const OrderedForest>(&pt, 1)).tree == OrderedTree::chain(2));

    std::vector<Vertex> points{0, 1};
    std::vector<OrderedForest> parts{pt, pt};
    auto a = attach(OrderedTree::chain(2), points, parts);
    CHECK(a.tree == T({kNone, 0, 1, 0}));
    // The point hung below the root comes after the whole branch through 1.
    CHECK(a.part_embeddings[0] == std::vector<Vertex>{3});
    CHECK(a.part_embeddings[1] == std::vector<Vertex>{2});

    auto y = T({kNone, 0, 0});
    CHECK(attach(y, {}, {}).tree == y);

    std::vector<Vertex> dup{1, 1};
    CHECK(code_of([&] { attach(OrderedTree::chain(2), dup, parts); }) == Errc::DuplicateAttachPoint);

    CHECK(oplus({2}, pt) == OrderedTree::chain(3));
    CHECK(oplus({1}, OrderedForest::antichain(2)) == y);
    CHECK(oplus({1}, OrderedForest()) == OrderedTree::chain(1));
    CHECK(code_of([] { oplus({0}, OrderedForest()); }) == Errc::EmptyLinearOrder);
    CHECK(has_linear_prefix(T({kNone, 0, 1, 1}), 2));
    CHECK_FALSE(has_linear_prefix(T({kNone, 0, 1, 0}), 2));
}

TEST_CASE("forests")
{
    auto f = OrderedForest::from_parents({kNone, 0, kNone});
    CHECK(f.size() == 3);
    CHECK(f.height(1) == 2);
    CHECK(f.height() == 2);
    CHECK(f.meet(0, 2) == kNone);
    CHECK(f.components() == std::vector<std::pair<Vertex, Vertex>>{{0, 2}, {2, 3}});
    CHECK(remove_root(one_plus(f)) == f);
    CHECK(OrderedForest().empty());
}

TEST_CASE("tensor S⊗I")
{
    Tensor pt2(OrderedForest::antichain(1), {2});
    CHECK(pt2.size() == 2);
    CHECK(pt2.forest() == OrderedForest::chain(2));
    CHECK(pt2.q_size() == 1);

    Tensor c2(OrderedForest::chain(2), {2});
    CHECK(c2.size() == 6);
    CHECK(c2.forest().parents() == std::vector<Vertex>{kNone, 0, 1, 0, 3, 4});
    CHECK(c2.q_size() == 3);
    CHECK(c2.point(2) == TensorPoint{1, {0, 1}});
    CHECK(c2.point(3) == TensorPoint{0, {1}});
    CHECK(c2.q_point(1) == QPoint{1, {0}});
    CHECK_FALSE(c2.orders_agree());
    for (Vertex v = 0; v < c2.size(); ++v) {
        auto [q, i] = c2.split(v);
        CHECK(c2.identify(q, i) == v);
        CHECK(c2.vertex_of(c2.point(v)) == v);
    }

    auto f = OrderedForest::from_parents({kNone, 0, kNone});
    Tensor one(f, {1});
    CHECK(one.forest() == f);

    CHECK(code_of([] { Tensor(OrderedForest::chain(1), {0}); }) == Errc::EmptyAlphabet);
}

TEST_CASE("enum_trees counts are Catalan numbers")
{
    CHECK(enum_trees(1).size() == 1);
    auto three = enum_trees(3);
    REQUIRE(three.size() == 2);
    CHECK(three[0] == T({kNone, 0, 0}));
    CHECK(three[1] == OrderedTree::chain(3));
    for (int n = 1; n <= 8; ++n)
        CHECK(enum_trees(n).size() == catalan(n - 1));
    CHECK(enum_forests(0).size() == 1);
    CHECK(enum_forests(3).size() == 5);
}
