#pragma once

// Exhaustive property checks over all small trees. Each check counts the
// instances it looked at and the ones that failed, keeping the first failure
// as a readable string.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/tree.hpp"
#include "ramsey/tree_map.hpp"

namespace ramsey {

struct PropertyReport {
    explicit PropertyReport(std::string n = {}) : name(std::move(n)) {}

    std::string name;
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    std::string first_violation;

    bool ok() const noexcept { return violations == 0 && checked > 0; }
    void fail(const std::string& what)
    {
        if (violations++ == 0)
            first_violation = what;
    }
};

/// The leaf of cod(i) that is i-conjugate to x, read off the definition by
/// scanning all leaves (an oracle for conjugate_leaf).
Vertex conjugate_leaf_by_definition(const TreeMap& i, Vertex x);

/// Injection uniqueness, prexmb round trip, subt, ran and ima over all
/// pairs |S|,|T| <= max_two; coin, trde, cucu and compot over triples with
/// |S|,|T| <= max_two and |V| <= max_three.
std::vector<PropertyReport> check_lemma_suite(int max_two = 5, int max_three = 6);

/// Embedding and rigid-surjection streams against brute force over all
/// value tuples, classify() as the oracle.
PropertyReport check_enumeration_complete(int max_vertices);

/// |RS([n],[k])| = S(n,k) and |sealed RS([n],[k])| = S(n-1,k-1).
PropertyReport check_chain_counts(int max_n);

/// Both definitions of rigid surjections between chains agree on every map
/// [n] -> [k], n <= max_n.
PropertyReport check_prvo_agreement(int max_n);

/// Every rigid surjection U -> [l] is one of the chain (U, <=_U).
PropertyReport check_gr(int max_u, int max_l);

/// assemble_plus, lift_sealed and assemble_V invariants for all trees with
/// at most max_u vertices.
std::vector<PropertyReport> check_assembly(int max_u);

/// Save then load every tree with n vertices (and every forest) is the
/// identity.
PropertyReport check_tree_round_trip(int n);

}  // namespace ramsey
