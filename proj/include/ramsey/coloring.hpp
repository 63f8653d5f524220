#pragma once

// Deciding "every b-coloring realizes some constraint".
//
// A constraint is a list of groups of items; a coloring realizes it when
// every group is monochromatic (different groups may get different colours).
// The statement Holds when no b-coloring avoids all constraints; otherwise
// the search returns such an avoiding coloring as a counterexample.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ramsey {

using Group = std::vector<int>;
using Constraint = std::vector<Group>;

struct ConstraintSystem {
    int items = 0;
    std::vector<Constraint> constraints;
};

enum class Verdict { Holds, Fails, CapExceeded };
const char* to_string(Verdict v) noexcept;

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t constraints = 0;  // after simplification
    std::uint64_t items = 0;
};

struct SearchResult {
    Verdict verdict = Verdict::Holds;
    std::vector<int> coloring;  // the avoiding coloring when verdict == Fails
    SearchStats stats;
};

inline constexpr std::uint64_t kDefaultMaxNodes = 200'000'000;

/// Default node cap: RAMSEY_MAX_NODES if set, else kDefaultMaxNodes.
std::uint64_t default_max_nodes();

bool realizes(const Constraint& c, std::span<const int> coloring);
/// True when the coloring realizes none of the constraints.
bool avoids_all(const ConstraintSystem& sys, std::span<const int> coloring);

/// Drops trivial groups, sorts and deduplicates. A constraint left without
/// groups is realized by every coloring.
ConstraintSystem simplify(const ConstraintSystem& sys);

/// Propagating backtracking search: most-constrained item first, colour
/// symmetry broken by opening at most one new colour per node.
SearchResult solve(const ConstraintSystem& sys, int colors, std::uint64_t max_nodes = default_max_nodes());

/// Independent checkers. brute_force walks all b^n colorings; plain_backtrack
/// assigns items in index order and only rejects a partial coloring once a
/// fully coloured constraint is realized.
SearchResult brute_force(const ConstraintSystem& sys, int colors);
SearchResult plain_backtrack(const ConstraintSystem& sys, int colors, std::uint64_t max_nodes = default_max_nodes());

/// brute_force for at most 12 items, plain_backtrack otherwise.
SearchResult unpruned_check(const ConstraintSystem& sys, int colors, std::uint64_t max_nodes = default_max_nodes());

}  // namespace ramsey
