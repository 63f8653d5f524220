// Exhaustive sweeps over all small trees. Slower than unit_tests; each case
// prints what it covered so a regression shows where it was found.

#include <doctest.h>

#include <iostream>

#include "ramsey/enumeration.hpp"
#include "ramsey/framework.hpp"
#include "ramsey/hales_jewett.hpp"
#include "ramsey/properties.hpp"
#include "ramsey/witness.hpp"

using namespace ramsey;

namespace {

void expect(const PropertyReport& r)
{
    std::cout << "  " << r.name << ": " << r.checked << " checked, " << r.violations << " violations\n";
    CHECK_MESSAGE(r.ok(), r.name << ": " << r.first_violation);
}

}  // namespace

TEST_CASE("lemma suite over pairs up to 5 and triples up to 6 vertices")
{
    auto reports = check_lemma_suite(5, 6);
    CHECK(reports.size() == 9);
    for (const auto& r : reports)
        expect(r);
}

TEST_CASE("enumeration streams are complete and duplicate free")
{
    expect(check_enumeration_complete(5));
}

TEST_CASE("chain counts and the two rigidity definitions")
{
    expect(check_chain_counts(7));
    expect(check_prvo_agreement(6));
    expect(check_gr(5, 3));
}

TEST_CASE("assembly invariants")
{
    for (const auto& r : check_assembly(5))
        expect(r);
}

TEST_CASE("tree documents round trip")
{
    for (int n = 1; n <= 7; ++n)
        expect(check_tree_round_trip(n));
}

TEST_CASE("framework axioms on the space of trees up to 4 vertices")
{
    Space space(4);
    auto fs = sample_F(space);
    auto ps = sample_P(space);
    for (const auto& r : check_space_axioms(space)) {
        CHECK_MESSAGE(r.ok(), r.axiom);
        CHECK(r.checked > 0);
    }
    for (const auto& r : check_domain_axioms(space, fs, ps)) {
        CHECK_MESSAGE(r.ok(), r.axiom);
        CHECK(r.checked > 0);
    }
}

TEST_CASE("solver verdicts agree with the unpruned checker")
{
    // Every mn and sealed instance with at most 12 items, b = 2 and 3.
    std::uint64_t instances = 0;
    auto trees = enum_trees_up_to(4);
    for (const auto& s : trees)
        for (const auto& t : trees)
            for (const auto& u : trees) {
                if (s.size() > t.size() || t.size() > u.size())
                    continue;
                for (auto inst : {mn_instance(s, t, u), sealed_instance(s, t, u)}) {
                    if (inst.system.items == 0 || inst.system.items > 12)
                        continue;
                    for (int b = 2; b <= 3; ++b) {
                        auto fast = solve(inst.system, b);
                        auto slow = unpruned_check(inst.system, b);
                        CHECK(fast.verdict == slow.verdict);
                        if (fast.verdict == Verdict::Fails)
                            CHECK(avoids_all(inst.system, fast.coloring));
                        ++instances;
                    }
                }
            }
    std::cout << "  solver vs unpruned: " << instances << " instances\n";
    CHECK(instances > 100);
}

TEST_CASE("witness search results re-verify")
{
    int found = 0;
    auto reverify = [&](const OrderedTree& s, const OrderedTree& t, SearchMode mode, int max_vertices) {
        auto ws = search_witness(2, s, t, mode, max_vertices);
        if (!ws.witness)
            return;
        auto inst = mn_instance(s, t, *ws.witness);
        CHECK(unpruned_check(inst.system, 2).verdict == Verdict::Holds);
        ++found;
    };
    for (int k = 1; k <= 2; ++k)
        for (int l = k; l <= 3; ++l)
            reverify(OrderedTree::chain(k), OrderedTree::chain(l), SearchMode::Chain, 7);
    for (const auto& s : enum_trees_up_to(2))
        for (const auto& t : enum_trees_up_to(3))
            if (s.size() <= t.size())
                reverify(s, t, SearchMode::Mn, 4);
    std::cout << "  witnesses re-verified: " << found << "\n";
    CHECK(found >= 5);
}

TEST_CASE("HJ certificates verify on all small parameters")
{
    for (int a = 1; a <= 2; ++a)
        for (int l = 1; l <= 2; ++l)
            for (int b = 1; b <= 2; ++b) {
                CAPTURE(a);
                CAPTURE(l);
                CAPTURE(b);
                auto r = hj_search(a, l, b, 2);
                REQUIRE(r.k);
                if (r.certificate.complete)
                    CHECK(verify_hj_certificate(a, l, b, *r.k, r.certificate));
            }
}
