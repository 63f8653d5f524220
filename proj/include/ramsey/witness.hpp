#pragma once

// Ramsey witnesses for rigid surjections: deciding whether a tree is a
// witness, searching for the smallest one, the classical specializations,
// and the passage from sealed witnesses to arbitrary ones.

#include <optional>
#include <string>
#include <vector>

#include "ramsey/coloring.hpp"
#include "ramsey/tree.hpp"
#include "ramsey/tree_map.hpp"

namespace ramsey {

/// Items are the maps being coloured; each constraint is a single group
/// (one candidate edge).
struct WitnessInstance {
    std::vector<TreeMap> items;
    ConstraintSystem system;
};

/// Items RS(U,S); one edge {f∘g0 : f ∈ RS(T,S)} per g0 ∈ RS(U,T).
WitnessInstance mn_instance(const OrderedTree& s, const OrderedTree& t, const OrderedTree& u);
/// Items: sealed RS(V^v, S) over all v; one edge
/// {f∘g^t : t ∈ T, f: T^t -> S sealed} per v0 and sealed g: V^{v0} -> T.
WitnessInstance sealed_instance(const OrderedTree& s, const OrderedTree& t, const OrderedTree& v);
/// Items RS(U^y, S) over leaves y of U; one edge {f∘g : f ∈ RS(T,S)} per
/// leaf y0 and g ∈ RS(U^{y0}, T).
WitnessInstance leaf_instance(const OrderedTree& s, const OrderedTree& t, const OrderedTree& u);

struct WitnessReport {
    std::string mode;  // "mn", "sealed", "leaf"
    int colors = 0;
    Verdict verdict = Verdict::Holds;
    std::vector<int> coloring;  // counterexample when verdict == Fails
    std::uint64_t items = 0;
    std::uint64_t edges = 0;  // before deduplication
    SearchStats stats;
    double elapsed_ms = 0;  // not serialized unless asked for
};

WitnessReport decide(const WitnessInstance& inst, const std::string& mode, int b, std::uint64_t max_nodes = default_max_nodes());

WitnessReport check_witness_mn(int b, const OrderedTree& s, const OrderedTree& t, const OrderedTree& u,
                               std::uint64_t max_nodes = default_max_nodes());
WitnessReport check_witness_sealed(int b, const OrderedTree& s, const OrderedTree& t, const OrderedTree& v,
                                   std::uint64_t max_nodes = default_max_nodes());

/// True when the report's counterexample avoids every edge of inst.
bool replay_counterexample(const WitnessInstance& inst, const WitnessReport& report);

enum class SearchMode { Mn, Sealed, Chain };
const char* to_string(SearchMode m) noexcept;
SearchMode parse_search_mode(const std::string& s);

struct WitnessSearch {
    std::optional<OrderedTree> witness;  // first passing candidate
    WitnessReport report;                // verdict for the witness, or the last candidate checked
    int candidates = 0;
    bool capped = false;
};

/// Candidates in enum_trees order by size (chain mode: chains [m]).
/// Stops at the first candidate that holds, or at a cap.
WitnessSearch search_witness(int b, const OrderedTree& s, const OrderedTree& t, SearchMode mode, int max_vertices,
                             std::uint64_t max_nodes = default_max_nodes(), int jobs = 1);

// ------------------------------------------------------------ bridges

struct PrvoVerdict {
    bool prvo = false;
    bool tree = false;
};
/// f: [n] -> [k] as values in 0..k-1.
PrvoVerdict bridge_prvo(const std::vector<Vertex>& values, int k);

/// Colour each rigid surjection U -> S by the colour of its injection.
/// emb_coloring is indexed like enum_embeddings(S, U); the result like
/// enum_rigid_surjections(U, S).
std::vector<int> leeb_transport(const OrderedTree& s, const OrderedTree& u, const std::vector<int>& emb_coloring);
TreeMap leeb_extract(const TreeMap& g0);

struct LeebContract {
    bool transported_mono = false;  // {f∘g0} under the transported colouring
    bool original_mono = false;     // {e0∘d} under the original colouring
    bool holds() const { return !transported_mono || original_mono; }
};
LeebContract leeb_contract(const OrderedTree& s, const OrderedTree& t, const OrderedTree& u,
                           const std::vector<int>& emb_coloring, const TreeMap& g0);

/// Every rigid surjection U -> [l] is one of the chain (U, ≤_U) onto [l].
/// Returns the number of maps checked; throws std::logic_error on a miss.
std::uint64_t gr_compatibility(const OrderedTree& u, int l);

// ------------------------------------------------------------ assembly

struct PlusTree {
    OrderedTree tree;
    Vertex plus = 0;
};
/// S with one extra successor of the root placed ≤-last.
PlusTree assemble_plus(const OrderedTree& s);
/// f: T -> S extended by t⁺ ↦ s⁺; checks that t is f′-conjugate to s and
/// (f′)_s = f.
TreeMap lift_sealed(const TreeMap& f);

struct AssembledV {
    OrderedTree tree;
    std::vector<Vertex> leaves;                 // leaves y of U, increasing
    std::vector<std::vector<Vertex>> inclusion;  // U^y -> V, per leaf
    std::vector<TreeMap> projections;            // π_y: V -> U^y, per leaf
};
/// V = 1 ⊕ (disjoint union of U^y minus its root over the leaves y).
AssembledV assemble_V(const OrderedTree& u);

/// c'(h) = c(h_s): from a colouring of leaf_instance(S, T, U) items to the
/// items of sealed_instance(S⁺, T⁺, U).
std::vector<int> transport_to_sealed(const WitnessInstance& leaf, const WitnessInstance& sealed, Vertex s_top,
                                     const std::vector<int>& c);
/// c'(f) = c(f∘π_y): from a colouring of mn_instance(S, T, V) items to the
/// items of leaf_instance(S, T, U).
std::vector<int> transport_from_assembled(const WitnessInstance& mn, const WitnessInstance& leaf, const AssembledV& av,
                                          const std::vector<int>& c);

struct DerivedWitness {
    OrderedTree assembled;
    WitnessReport sealed_report;  // V for (S⁺, T⁺)
    WitnessReport leaf_report;    // the intermediate leaf statement on V
    WitnessReport mn_report;      // the assembled tree for (S, T)
    std::uint64_t identities_checked = 0;
};
/// Throws PrerequisiteFailed when V is not a sealed witness for (b, S⁺, T⁺).
DerivedWitness derive_mn_from_sealed(int b, const OrderedTree& s, const OrderedTree& t, const OrderedTree& v,
                                     std::uint64_t max_nodes = default_max_nodes());

}  // namespace ramsey
