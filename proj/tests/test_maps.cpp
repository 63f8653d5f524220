#include <doctest.h>

#include "ramsey/enumeration.hpp"
#include "ramsey/error.hpp"
#include "ramsey/tree_map.hpp"

using namespace ramsey;

namespace {

OrderedTree T(std::vector<Vertex> p) { return OrderedTree::from_parents(std::move(p)); }
const OrderedTree C1 = OrderedTree::chain(1);
const OrderedTree C2 = OrderedTree::chain(2);
const OrderedTree C3 = OrderedTree::chain(3);
const OrderedTree C4 = OrderedTree::chain(4);
const OrderedTree Y = T({kNone, 0, 0});
const OrderedTree Broom3 = T({kNone, 0, 0, 0});

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

std::vector<std::vector<Vertex>> values_of(const std::vector<TreeMap>& maps)
{
    std::vector<std::vector<Vertex>> out;
    for (const auto& m : maps)
        out.push_back(m.values());
    return out;
}

}  // namespace

TEST_CASE("classify")
{
    auto e = classify(TreeMap(C2, Y, {0, 1}));
    CHECK(e.morphism);
    CHECK(e.embedding);
    CHECK_FALSE(classify(TreeMap(Y, C2, {0, 1, 1})).rigid);
    auto swap = classify(TreeMap(C2, C2, {1, 0}));
    CHECK_FALSE(swap.morphism);
    CHECK_FALSE(swap.rigid);
    auto a = classify(TreeMap(C3, C2, {0, 0, 1}), 1);
    CHECK(a.rigid);
    CHECK(a.sealed);
    CHECK(a.a_rigid);
    CHECK(code_of([] { TreeMap(C2, C2, {0}); }) == Errc::InvalidArgument);
    CHECK(code_of([] { TreeMap(C2, C2, {0, 2}); }) == Errc::VertexOutOfRange);
}

TEST_CASE("injection_of")
{
    CHECK(injection_of(TreeMap(C3, C2, {0, 0, 1})).values() == std::vector<Vertex>{0, 2});
    CHECK(injection_of(TreeMap::identity(Broom3)) == TreeMap::identity(Broom3));
    CHECK(code_of([] { injection_of(TreeMap(Y, C2, {0, 1, 1})); }) == Errc::NotRigid);
}

TEST_CASE("compose")
{
    TreeMap f(C3, C2, {0, 1, 1});
    TreeMap g(C4, C3, {0, 1, 1, 2});
    auto fg = compose(f, g);
    CHECK(fg.values() == std::vector<Vertex>{0, 1, 1, 1});
    CHECK(injection_of(fg).values() == std::vector<Vertex>{0, 1});
    CHECK(compose(f, TreeMap::identity(C3)) == f);
    CHECK(compose(TreeMap::identity(C3), g) == g);
    CHECK(code_of([&] { compose(g, f); }) == Errc::DomainMismatch);
}

TEST_CASE("rigid_from_embedding")
{
    CHECK(rigid_from_embedding(TreeMap(C2, C3, {0, 2})).values() == std::vector<Vertex>{0, 0, 1});
    CHECK(rigid_from_embedding(TreeMap::identity(Y)) == TreeMap::identity(Y));
    CHECK(rigid_from_embedding(TreeMap(C2, Y, {0, 2})).values() == std::vector<Vertex>{0, 0, 1});
    CHECK(code_of([] { rigid_from_embedding(TreeMap(C2, C2, {0, 0})); }) == Errc::NotEmbedding);
}

TEST_CASE("restrict_initial")
{
    auto r = restrict_initial(TreeMap(C3, C2, {0, 0, 1}), 0);
    CHECK(r.dom() == C1);
    CHECK(r.values() == std::vector<Vertex>{0});
    TreeMap sealed(C3, C2, {0, 0, 1});
    CHECK(restrict_initial(sealed, 1) == sealed);
    auto b = restrict_initial(TreeMap(Broom3, Y, {0, 1, 0, 2}), 1);
    CHECK(b.dom() == C2);
    CHECK(b.cod() == C2);
    CHECK(b.values() == std::vector<Vertex>{0, 1});
    CHECK(code_of([&] { restrict_initial(sealed, 2); }) == Errc::VertexOutOfRange);
}

TEST_CASE("is_sealed")
{
    CHECK(is_sealed(TreeMap(C3, C2, {0, 0, 1})));
    CHECK_FALSE(is_sealed(TreeMap(C3, C2, {0, 1, 0})));
    CHECK(is_sealed(TreeMap::identity(Y)));
}

TEST_CASE("conjugate leaves")
{
    CHECK(conjugate_leaf(TreeMap(Y, Broom3, {0, 1, 3}), 1) == 2);
    CHECK(conjugate_leaf(TreeMap(Y, Broom3, {0, 1, 3}), 2) == 3);
    CHECK(conjugate_leaf(TreeMap::identity(Y), 1) == 1);
    CHECK(code_of([] { conjugate_leaf(TreeMap::identity(Y), 0); }) == Errc::NotLeaf);

    auto f1 = restrict_conjugate(TreeMap(Broom3, Y, {0, 1, 0, 2}), 1);
    CHECK(f1.dom() == Y);
    CHECK(f1.cod() == C2);
    CHECK(f1.values() == std::vector<Vertex>{0, 1, 0});
    TreeMap sealed(Broom3, Y, {0, 1, 0, 2});
    CHECK(restrict_conjugate(sealed, 2) == sealed);
    CHECK(restrict_conjugate(TreeMap::identity(Y), 1) == TreeMap::identity(C2));
}

TEST_CASE("check_spfu")
{
    std::vector<Vertex> ident{0, 1};
    CHECK(check_spfu(ident, 1, 1, 1));
    std::vector<Vertex> miss{0, 0, 0};
    CHECK_FALSE(check_spfu(miss, 1, 1, 2));
    std::vector<Vertex> ok{0, 1, 0};
    CHECK(check_spfu(ok, 1, 1, 2));
}

TEST_CASE("enumeration of maps")
{
    CHECK(enum_embeddings(C2, Y).size() == 2);
    CHECK(values_of(enum_embeddings(Y, Y)) == std::vector<std::vector<Vertex>>{{0, 1, 2}});
    CHECK(enum_embeddings(Y, C2).empty());

    CHECK(values_of(enum_rigid_surjections(C3, C2)) == std::vector<std::vector<Vertex>>{{0, 0, 1}, {0, 1, 0}, {0, 1, 1}});
    CHECK(values_of(enum_rigid_surjections(Y, C2)) == std::vector<std::vector<Vertex>>{{0, 0, 1}, {0, 1, 0}});
    CHECK(values_of(enum_rigid_surjections(C3, C2, {.sealed = true})) == std::vector<std::vector<Vertex>>{{0, 0, 1}});

    CHECK(enum_colorings(0, 3).size() == 1);
    CHECK(enum_colorings(3, 2).size() == 8);
    CHECK(enum_colorings(2, 2, true) == std::vector<std::vector<int>>{{0, 0}, {0, 1}});
    CHECK(stirling2(3, 2) == 3);
    CHECK(stirling2(7, 3) == 301);
}

TEST_CASE("restrict_to a downward closed set")
{
    TreeMap f(Broom3, Y, {0, 1, 0, 2});
    std::vector<Vertex> sub{0, 1, 2};
    auto r = restrict_to(f, sub);
    CHECK(r.map.cod() == C2);
    CHECK(is_rigid(r.map));
    std::vector<Vertex> bad{1};
    CHECK(code_of([&] { restrict_to(f, bad); }) == Errc::InvalidArgument);
}
