#include <doctest.h>

#include "ramsey/coloring.hpp"
#include "ramsey/enumeration.hpp"
#include "ramsey/error.hpp"
#include "ramsey/witness.hpp"

using namespace ramsey;

namespace {

OrderedTree T(std::vector<Vertex> p) { return OrderedTree::from_parents(std::move(p)); }
const OrderedTree C1 = OrderedTree::chain(1);
const OrderedTree C2 = OrderedTree::chain(2);
const OrderedTree C3 = OrderedTree::chain(3);
const OrderedTree Y = T({kNone, 0, 0});

}  // namespace

TEST_CASE("solver basics")
{
    ConstraintSystem empty{3, {}};
    CHECK(solve(empty, 2).verdict == Verdict::Fails);
    ConstraintSystem single{1, {{{0}}}};
    CHECK(solve(single, 2).verdict == Verdict::Holds);
    // Two items, one edge {0,1}: 2-colourable apart, 1 colour forces it.
    ConstraintSystem pair{2, {{{0, 1}}}};
    auto r = solve(pair, 2);
    CHECK(r.verdict == Verdict::Fails);
    CHECK(avoids_all(pair, r.coloring));
    CHECK(solve(pair, 1).verdict == Verdict::Holds);
    CHECK(brute_force(pair, 2).verdict == Verdict::Fails);
    CHECK(plain_backtrack(pair, 1).verdict == Verdict::Holds);
}

TEST_CASE("solver agrees with brute force on small random systems")
{
    std::uint32_t state = 12345;
    auto next = [&] { return state = state * 1103515245u + 12345u, (state >> 16) & 0x7fff; };
    for (int round = 0; round < 300; ++round) {
        ConstraintSystem sys;
        sys.items = 2 + static_cast<int>(next() % 7);
        int nc = 1 + static_cast<int>(next() % 6);
        for (int c = 0; c < nc; ++c) {
            Constraint con;
            int ng = 1 + static_cast<int>(next() % 2);
            for (int g = 0; g < ng; ++g) {
                Group grp;
                int sz = 1 + static_cast<int>(next() % 3);
                for (int i = 0; i < sz; ++i)
                    grp.push_back(static_cast<int>(next() % static_cast<std::uint32_t>(sys.items)));
                con.push_back(grp);
            }
            sys.constraints.push_back(con);
        }
        for (int b = 1; b <= 3; ++b) {
            auto fast = solve(sys, b);
            auto slow = brute_force(sys, b);
            CHECK(fast.verdict == slow.verdict);
            CHECK(plain_backtrack(sys, b).verdict == slow.verdict);
            if (fast.verdict == Verdict::Fails)
                CHECK(avoids_all(sys, fast.coloring));
        }
    }
}

TEST_CASE("solver node cap")
{
    ConstraintSystem sys{6, {{{0, 1, 2}}, {{3, 4, 5}}, {{0, 3}}}};
    CHECK(solve(sys, 2, 1).verdict == Verdict::CapExceeded);
}

TEST_CASE("check_witness_mn")
{
    CHECK(check_witness_mn(3, Y, Y, Y).verdict == Verdict::Holds);
    auto inst = mn_instance(C2, C3, C3);
    CHECK(inst.items.size() == 3);
    CHECK(inst.system.constraints.size() == 1);
    auto r = decide(inst, "mn", 2);
    CHECK(r.verdict == Verdict::Fails);
    CHECK(replay_counterexample(inst, r));
    CHECK(check_witness_mn(1, C2, C3, C3).verdict == Verdict::Holds);
    // RS(U,T) empty: no edge, so even one colour fails.
    CHECK(check_witness_mn(1, C2, C3, C2).verdict == Verdict::Fails);
}

TEST_CASE("check_witness_sealed")
{
    CHECK(check_witness_sealed(2, C1, C3, C3).verdict == Verdict::Holds);
    CHECK(check_witness_sealed(1, C2, C2, C2).verdict == Verdict::Holds);
    auto r = check_witness_sealed(2, C2, C2, C2);
    CHECK(r.verdict != Verdict::CapExceeded);
}

TEST_CASE("search_witness in chain mode")
{
    auto s = search_witness(2, C2, C2, SearchMode::Chain, 5);
    REQUIRE(s.witness);
    CHECK(*s.witness == C2);
    auto k1 = search_witness(3, C1, C3, SearchMode::Chain, 5);
    REQUIRE(k1.witness);
    CHECK(*k1.witness == C3);
    CHECK(parse_search_mode("sealed") == SearchMode::Sealed);
    CHECK_THROWS_AS(parse_search_mode("x"), Error);
}

TEST_CASE("bridges")
{
    auto a = bridge_prvo({0, 0, 1}, 2);
    CHECK(a.prvo);
    CHECK(a.tree);
    auto b = bridge_prvo({0, 2, 1}, 3);
    CHECK_FALSE(b.prvo);
    CHECK_FALSE(b.tree);
    auto id = bridge_prvo({0, 1, 2}, 3);
    CHECK(id.prvo);
    CHECK(id.tree);

    std::vector<int> constant(count_embeddings(C2, C3), 1);
    for (int c : leeb_transport(C2, C3, constant))
        CHECK(c == 1);
    // Colour e by the parity of e(1).
    std::vector<int> parity;
    for (const auto& e : enum_embeddings(C2, C3))
        parity.push_back(e(1) % 2);
    auto transported = leeb_transport(C2, C3, parity);
    auto rs = enum_rigid_surjections(C3, C2);
    REQUIRE(transported.size() == rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
        CHECK(transported[i] == injection_of(rs[i])(1) % 2);
    for (const auto& g0 : enum_rigid_surjections(C3, C2))
        CHECK(leeb_contract(C2, C2, C3, parity, g0).holds());
    CHECK(gr_compatibility(Y, 2) == 2);
}

TEST_CASE("assembly")
{
    auto c2p = assemble_plus(C2);
    CHECK(c2p.tree == Y);
    CHECK(c2p.plus == 2);
    auto lid = lift_sealed(TreeMap::identity(C3));
    CHECK(is_sealed(lid));
    auto f = TreeMap(C3, C2, {0, 0, 1});
    auto fp = lift_sealed(f);
    CHECK(fp.cod() == Y);
    CHECK(restrict_conjugate(fp, 1) == f);

    auto v2 = assemble_V(C2);
    CHECK(v2.tree == C2);
    CHECK(v2.projections[0] == TreeMap::identity(C2));
    // Leaves 1 and 2 contribute U^1 = C2 and U^2 = Y, so 1 + 1 + 2 vertices.
    auto vy = assemble_V(Y);
    CHECK(vy.tree == T({kNone, 0, 0, 0}));
    CHECK(vy.leaves == std::vector<Vertex>{1, 2});
    for (const auto& p : vy.projections)
        CHECK(is_rigid(p));
    auto vb = assemble_V(T({kNone, 0, 1, 0}));
    CHECK(vb.tree.size() == 6);

    auto d = derive_mn_from_sealed(1, C1, C1, C2);
    CHECK(d.mn_report.verdict == Verdict::Holds);
    CHECK_THROWS_AS(derive_mn_from_sealed(2, C2, C3, C2), Error);
}
