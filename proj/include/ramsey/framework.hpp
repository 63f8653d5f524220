#pragma once

// The concrete composition space of sealed rigid surjections between initial
// subtrees of a fixed family of pairwise disjoint trees, its families F and
// P, and exhaustive checkers for the axioms and for conditions (R), (LP).
//
// The disjoint family is emulated by tagging: ambient tree k of the space is
// a distinct object even if two ambients happen to be isomorphic. An element
// is a sealed rigid surjection ambient[dom_ambient]^dom_cut ->
// ambient[cod_ambient]^cod_cut.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ramsey/coloring.hpp"
#include "ramsey/tree.hpp"
#include "ramsey/tree_map.hpp"

namespace ramsey {

struct DomainElement {
    int dom_ambient = 0;
    Vertex dom_cut = 0;
    int cod_ambient = 0;
    Vertex cod_cut = 0;
    std::vector<Vertex> values;

    friend bool operator==(const DomainElement&, const DomainElement&) = default;
    friend auto operator<=>(const DomainElement&, const DomainElement&) = default;
};

class Space {
public:
    using Truncation = std::function<DomainElement(const Space&, const DomainElement&)>;

    /// Ambients: every tree with at most `bound` vertices.
    explicit Space(int bound);
    explicit Space(std::vector<OrderedTree> ambients);

    const std::vector<OrderedTree>& ambients() const noexcept { return ambients_; }
    const OrderedTree& ambient(int k) const { return ambients_.at(static_cast<std::size_t>(k)); }

    /// Every element of the space, ordered by (dom ambient, dom cut, cod
    /// ambient, cod cut, values).
    const std::vector<DomainElement>& elements() const noexcept { return elements_; }
    int size() const noexcept { return static_cast<int>(elements_.size()); }
    const DomainElement& element(int i) const { return elements_.at(static_cast<std::size_t>(i)); }
    /// -1 when e is not an element.
    int index_of(const DomainElement& e) const;

    /// Validates and returns an element; throws VertexOutOfRange, NotRigid
    /// or NotSealed.
    DomainElement make(int dom_ambient, Vertex dom_cut, int cod_ambient, Vertex cod_cut, std::vector<Vertex> values) const;
    TreeMap as_map(const DomainElement& e) const;

    /// g·f is defined when dom(f) is an initial subtree of cod(g).
    bool composable(const DomainElement& g, const DomainElement& f) const noexcept;
    /// g·f = f∘g^y with dom(f) = cod(g)^y. Throws NotComposable.
    DomainElement mul(const DomainElement& g, const DomainElement& f) const;
    DomainElement truncate(const DomainElement& f) const;
    /// The standard truncation, whatever truncation is installed.
    static DomainElement standard_truncation(const Space& space, const DomainElement& f);
    /// |a| <= |b|: both domains lie in the same ambient and nest.
    static bool norm_le(const DomainElement& a, const DomainElement& b) noexcept
    {
        return a.dom_ambient == b.dom_ambient && a.dom_cut <= b.dom_cut;
    }
    /// b extends a: b·x is defined and equals a·x for every element x with
    /// a·x defined (x ranging over this space).
    bool extends(const DomainElement& b, const DomainElement& a) const;

    /// Replaces ∂ (for checker sanity tests).
    void set_truncation(Truncation t);

    // Index-level versions; -1 means undefined.
    int mul_index(int g, int f) const;
    int truncate_index(int f) const;
    bool extends_index(int b, int a) const;
    /// Elements x with a·x defined, for a given a (by cod ambient and cut).
    const std::vector<int>& right_factors(int a) const;

private:
    void build();

    std::vector<OrderedTree> ambients_;
    std::vector<DomainElement> elements_;
    std::map<DomainElement, int> index_;
    std::vector<std::vector<Vertex>> injections_;
    std::vector<std::vector<std::vector<int>>> by_cod_;
    // by_dom_[k][c]: elements whose domain is ambient k cut at c.
    std::vector<std::vector<std::vector<int>>> by_dom_;
    Truncation truncation_;
    mutable std::unordered_map<std::uint64_t, int> mul_cache_;
    mutable std::vector<int> trunc_cache_;
    mutable std::unordered_map<std::uint64_t, bool> extends_cache_;
    mutable std::unordered_map<std::uint64_t, std::vector<int>> right_cache_;
};

enum class FamilyKind { F, P };

/// A member of F (rng a full ambient tree) or of P (rng an initial subtree),
/// all domains inside the ambient d.
struct FamilySet {
    FamilyKind kind = FamilyKind::P;
    std::vector<int> elements;  // sorted element indices
    int d = 0;                  // d(·): the domain ambient
    int r = 0;                  // r(·): the range ambient
    Vertex r_cut = 0;           // the range is ambient(r)^r_cut

    friend bool operator==(const FamilySet&, const FamilySet&) = default;
};

/// The shape conditions on a set of elements; kind F also requires the full
/// ambient as range.
bool is_family(const Space& space, const std::vector<int>& elements, FamilyKind kind);
/// Throws InvalidArgument unless is_family holds.
FamilySet make_family(const Space& space, std::vector<int> elements, FamilyKind kind);

/// F1•F2, defined when d(F2) = r(F1).
std::optional<FamilySet> product(const Space& space, const FamilySet& f1, const FamilySet& f2);
/// F▪P, defined when d(P) = r(F) and F is an F-family.
std::optional<FamilySet> act(const Space& space, const FamilySet& f, const FamilySet& p);
FamilySet truncate_family(const Space& space, const FamilySet& p);
/// P^y = {x ∈ P : ∂x = y}; empty result is returned as an empty element list.
std::vector<int> fiber(const Space& space, const FamilySet& p, int y);
/// F_a = {f ∈ F : f extends a}.
std::vector<int> extenders(const Space& space, const FamilySet& f, int a);

/// The finite stand-in for F and P: for every pair of ambients the full
/// family plus all singletons; for P additionally all two-element subsets
/// of full families with at most `pair_limit` elements.
std::vector<FamilySet> sample_F(const Space& space);
std::vector<FamilySet> sample_P(const Space& space, int pair_limit = 8);

struct Violation {
    std::string axiom;
    std::vector<DomainElement> elements;
    std::string detail;
};

struct AxiomReport {
    std::string axiom;
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    std::vector<Violation> examples;  // at most a few
    bool ok() const noexcept { return violations == 0; }
};

/// associativity, (i), (ii), (iii) over every tuple of elements.
std::vector<AxiomReport> check_space_axioms(const Space& space);
/// (A), (B), (C), linear, vanishing over the sampled families.
std::vector<AxiomReport> check_domain_axioms(const Space& space, const std::vector<FamilySet>& fs, const std::vector<FamilySet>& ps);

struct ConditionReport {
    Verdict verdict = Verdict::Holds;
    std::vector<int> items;     // element indices being coloured
    std::vector<int> coloring;  // counterexample when verdict == Fails
    std::vector<int> family;    // F (for R) or F_a (for LP)
    SearchStats stats;
};

/// Every b-colouring of F▪P has some f ∈ F with f·P monochromatic.
/// Throws NotComposable when F▪P is undefined.
ConditionReport check_R(const Space& space, const FamilySet& f, const FamilySet& p, int b,
                        std::uint64_t max_nodes = default_max_nodes());
/// Every b-colouring of F_a·P^y has some f ∈ F_a with f·P^y monochromatic.
/// Throws NotComposable when F▪P or a·y is undefined, InvalidArgument when
/// y ∉ ∂P.
ConditionReport check_LP(const Space& space, const FamilySet& p, int y, const FamilySet& f, int a, int b,
                         std::uint64_t max_nodes = default_max_nodes());

/// Empirical side-by-side of (LP) and (R) on the sample: for each P with a
/// range of at least two vertices, (LP) is searched over all sampled F and
/// all a with a·y defined, (R) over all sampled F.
///
/// The implication is global (LP for every P gives R for every P), so the
/// red flag is raised only when (LP) was found for every sampled P while
/// (R) was missed for some. Per-family gaps are listed for inspection; they
/// say nothing by themselves because the proof of (R) for one P uses (LP)
/// for other families and F from larger ambients.
struct RamConsistency {
    std::uint64_t families = 0;
    std::uint64_t lp_found = 0;
    std::uint64_t r_found = 0;
    std::vector<int> gaps;  // indices into the P sample: (LP) found, (R) not
    bool red_flag() const noexcept { return lp_found == families && r_found < families; }
};
RamConsistency ram_consistency(const Space& space, const std::vector<FamilySet>& fs, const std::vector<FamilySet>& ps, int b,
                               std::uint64_t max_nodes = default_max_nodes());

}  // namespace ramsey
