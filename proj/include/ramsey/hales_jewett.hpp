#pragma once

// Hales-Jewett type statements for sealed A-rigid maps, their product form,
// the finite Ramsey statement for vertex colourings of forests, the transfer
// from Q×I to S⊗I, and the (LP) pipeline assembled from them.
//
// Chain maps p: A⊕(L×I) -> A⊕L are value vectors: position a + x*k + i holds
// either an element of A or a + x.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ramsey/coloring.hpp"
#include "ramsey/tensor.hpp"
#include "ramsey/tree.hpp"
#include "ramsey/tree_map.hpp"

namespace ramsey {

// ---------------------------------------------------------------- chain maps

/// ((a+1)^k - a^k)^l, saturating at UINT64_MAX.
std::uint64_t count_spfu(int a, int l, int k);
/// Every p with p↾A = id and x ∈ p[{x}×I] ⊆ A ∪ {x}, in lexicographic order
/// of the value tuple. Returning false from visit stops the stream.
void for_each_spfu(int a, int l, int k, const std::function<bool(const std::vector<Vertex>&)>& visit);
/// min p⁻¹(a+x) as a position of A⊕(L×I); kNone if x is not hit.
int first_hit(std::span<const Vertex> p, int a, int k, int x);

/// Sealed A-rigid surjections A⊕J^y -> A⊕1 for a chain J of length n. Such a
/// map is the identity on A, sends y to the top a, and is free in A below y,
/// so it is indexed by (y, values below y).
class SealedChainMaps {
public:
    SealedChainMaps(int a, int n);
    int a() const noexcept { return a_; }
    int n() const noexcept { return n_; }
    std::uint64_t size() const noexcept { return offset_.back(); }
    /// below.size() == y; every entry in A.
    std::uint64_t index(std::span<const Vertex> below) const;
    /// Full value vector on A⊕J^y.
    std::vector<Vertex> values(std::uint64_t idx) const;

private:
    int a_;
    int n_;
    std::vector<std::uint64_t> offset_;  // offset_[y], plus the total
};

/// Tuples (u_1, ..., u_n): u_1 a sealed A_1-rigid map on A_1⊕J_1^y, u_i for
/// i >= 2 any map A_i⊕J_i -> A_i that is the identity on A_i.
class TupleSpace {
public:
    TupleSpace(std::vector<int> as, std::vector<int> lengths);
    std::size_t components() const noexcept { return as_.size(); }
    std::uint64_t size() const noexcept { return total_; }
    std::uint64_t component_size(std::size_t i) const { return sizes_.at(i); }
    /// Index of u_1 from its values below the top.
    std::uint64_t first_index(std::span<const Vertex> below) const { return first_.index(below); }
    /// Index of u_i (i >= 1) from its values on J_i.
    std::uint64_t other_index(std::size_t i, std::span<const Vertex> values) const;
    std::uint64_t combine(std::span<const std::uint64_t> parts) const;

private:
    std::vector<int> as_;
    std::vector<int> lengths_;
    SealedChainMaps first_;
    std::vector<std::uint64_t> sizes_;
    std::uint64_t total_ = 0;
};

// ---------------------------------------------------------------- forests

/// Every b-colouring of the vertices of s_prime has an embedding of s
/// (root-preserving on 1⊕s) whose image is monochromatic.
Verdict frco_check(const OrderedForest& s, const OrderedForest& s_prime, int b,
                   std::uint64_t max_nodes = default_max_nodes());
/// An embedding s -> s_prime (forest vertex ids) with monochromatic image.
std::optional<std::vector<Vertex>> mono_embedding(const OrderedForest& s, const OrderedForest& s_prime,
                                                  std::span<const int> coloring);

struct FrcoResult {
    OrderedForest forest;
    int candidates = 0;
};
/// The first forest (by size, then enumeration order) passing frco_check.
/// Throws NotFoundWithinBound or ResourceCapExceeded.
FrcoResult frco_search(const OrderedForest& s, int b, int max_size, std::uint64_t max_nodes = default_max_nodes());
/// Tree form: colour the non-root vertices, embeddings preserve the root.
OrderedTree prfrco_search(const OrderedTree& s, int b, int max_size, std::uint64_t max_nodes = default_max_nodes());

// ---------------------------------------------------------------- HJ

/// Items: sealed A-rigid maps A⊕(L×I)^y -> A⊕1. One constraint per p, with
/// one group {r∘p^x : r sealed on A⊕L^x} per x ∈ L.
ConstraintSystem hj_system(int a, int l, int k);
/// Direct evaluation: every group r∘p^x is monochromatic under coloring.
bool hj_witness_ok(int a, int l, int k, std::span<const int> coloring, std::span<const Vertex> p);

struct HjCertificate {
    bool complete = false;  // false when b^items exceeded the limit
    std::vector<std::vector<int>> colorings;
    std::vector<std::vector<Vertex>> witnesses;
};

struct HjResult {
    std::optional<int> k;          // smallest |I| found
    std::vector<Verdict> verdicts;  // per tried |I| = 1, 2, ...
    std::uint64_t items = 0;        // at the last tried |I|
    std::uint64_t constraints = 0;
    SearchStats stats;
    HjCertificate certificate;
};

HjResult hj_search(int a, int l, int b, int max_k, bool certificates = true,
                   std::uint64_t max_nodes = default_max_nodes(), std::uint64_t certificate_limit = 1u << 16);
/// Replays a certificate with hj_witness_ok and checks it covers every
/// b-colouring.
bool verify_hj_certificate(int a, int l, int b, int k, const HjCertificate& cert);

// ---------------------------------------------------------------- HJpro

enum class HjproMode { Direct, Reduced };
const char* to_string(HjproMode m) noexcept;
HjproMode parse_hjpro_mode(const std::string& s);

/// as[0], ls[0] describe A_1, L_1. Direct: one constraint per tuple of p_i
/// with the block property. Reduced: one constraint per single p on
/// A_n×…×A_1 and L_n⊕…⊕L_1, via hjpro_derive.
ConstraintSystem hjpro_system(const std::vector<int>& as, const std::vector<int>& ls, int k, HjproMode mode);
/// p_i = π_i∘p on L_i×I and the identity on A_i.
std::vector<std::vector<Vertex>> hjpro_derive(std::span<const Vertex> p, const std::vector<int>& as,
                                              const std::vector<int>& ls, int k);
bool hjpro_witness_ok(const std::vector<int>& as, const std::vector<int>& ls, int k, std::span<const int> coloring,
                      const std::vector<std::vector<Vertex>>& ps);

struct HjproResult {
    std::optional<int> k;
    std::vector<Verdict> verdicts;
    std::uint64_t items = 0;
    std::uint64_t constraints = 0;
    SearchStats stats;
};
HjproResult hjpro_search(const std::vector<int>& as, const std::vector<int>& ls, int b, int max_k, HjproMode mode,
                         std::uint64_t max_nodes = default_max_nodes());

// ---------------------------------------------------------------- transfer

struct PointClass {
    bool leading = false;
    bool good = false;
    bool very_good = false;
};

/// p: A⊕(Q×I) -> A⊕Q read on S⊗I. Vertex ids of domain() are a + tensor
/// vertex, of codomain() a + forest vertex.
class TransferAnalysis {
public:
    TransferAnalysis(const OrderedForest& s, int k, int a);
    /// Throws SpfuViolated; p is indexed by chain position.
    void set_p(std::vector<Vertex> p);

    const Tensor& tensor() const noexcept { return tensor_; }
    int a() const noexcept { return a_; }
    const std::vector<Vertex>& p() const noexcept { return p_; }
    /// p at a tensor vertex.
    Vertex p_at(Vertex v) const noexcept { return p_[static_cast<std::size_t>(a_ + tensor_.chain_position(v))]; }

    PointClass classify_point(Vertex v) const { return flags_.at(static_cast<std::size_t>(v)); }
    const std::vector<int>& t_of(Vertex s) const { return tensor_.point(j_.at(static_cast<std::size_t>(s))).t; }
    /// The tensor vertex (s, t_s).
    Vertex j_vertex(Vertex s) const { return j_.at(static_cast<std::size_t>(s)); }
    /// Q index of x_s = (s, t_s↾(ht(s)-1)).
    int x_of(Vertex s) const { return tensor_.q_of(j_vertex(s)); }

    const OrderedTree& domain() const noexcept { return domain_; }
    const OrderedTree& codomain() const noexcept { return codomain_; }
    /// π_p on A⊕(S⊗I), j_p on A⊕S.
    const std::vector<Vertex>& pi_values() const noexcept { return pi_; }
    TreeMap pi() const { return TreeMap(domain_, codomain_, pi_); }
    TreeMap j() const;

    /// r on A⊕Q from a sealed ρ: A⊕S^v -> A⊕1 (values on a+v+1 vertices).
    std::vector<Vertex> build_r(Vertex v, std::span<const Vertex> rho) const;
    /// r on A⊕Q from ρ: A⊕S -> A.
    std::vector<Vertex> build_r_unsealed(std::span<const Vertex> rho) const;
    /// r∘p = ρ∘π_p on the initial subtree of domain() up to j_p(v).
    bool transfer_holds(Vertex v, std::span<const Vertex> rho) const;
    bool transfer_unsealed_holds(std::span<const Vertex> rho) const;

    /// Uniqueness of t_s, coherence along ⊑, the good/very good relation,
    /// A-rigidity of π_p with injection j_p, and the tree-order minimum of
    /// p⁻¹(x_v). Empty when everything holds.
    std::string check_structure() const;

private:
    Tensor tensor_;
    int a_;
    OrderedTree domain_;
    OrderedTree codomain_;
    std::vector<std::vector<Vertex>> prefix_;  // proper prefix points (s(j), t↾(j+1)) of each vertex
    std::vector<std::vector<int>> q_under_;    // q_under_[s][w]: Q index of (s, t_w), w a point at parent(s)
    std::vector<Vertex> p_;
    std::vector<PointClass> flags_;
    std::vector<Vertex> j_;
    std::vector<Vertex> pi_;
};

struct TransferCase {
    OrderedForest s;
    int k = 0;
    int a = 0;
    bool literal = true;  // false: one p per hit pattern
    std::uint64_t maps = 0;
    std::uint64_t rho_checks = 0;
    std::uint64_t violations = 0;
    std::string first_violation;
};

/// Every p (or every hit pattern when the spfu count exceeds literal_limit)
/// against every sealed and unsealed ρ.
TransferCase verify_transfer(const OrderedForest& s, int k, int a, std::uint64_t literal_limit);
std::vector<TransferCase> verify_transfer_all(int max_vertices, int max_k, int max_a, std::uint64_t literal_limit);

// ---------------------------------------------------------------- (LP)

/// The (LP) statement for given V_i, with u_i↾A_i = s_i↾A_i = r_i: every
/// b-colouring of the tuples (u_1, …, u_n) admits A-rigid surjections
/// t_i: A_i⊕V_i -> A_i⊕T_i such that (s_1∘t_1^w, s_2∘t_2, …) has one colour
/// for all w ∈ T_1 and all s. rs[i] is a non-decreasing surjection A_i -> B_i.
Verdict lp_statement(const std::vector<int>& as, const std::vector<std::vector<Vertex>>& rs,
                     const std::vector<OrderedForest>& ts, const std::vector<OrderedForest>& vs, int b,
                     std::uint64_t max_nodes = default_max_nodes());
/// B_i = A_i and r_i = id.
Verdict lp_statement_reduced(const std::vector<int>& as, const std::vector<OrderedForest>& ts,
                             const std::vector<OrderedForest>& vs, int b, std::uint64_t max_nodes = default_max_nodes());

struct LpPipelineLimits {
    int max_frco_size = 6;
    int max_k = 4;
    std::uint64_t max_colorings = 1u << 12;  // exhaustive up to this, sampled beyond
    std::uint64_t samples = 64;
    std::uint64_t max_nodes = default_max_nodes();
};

struct LpPipelineResult {
    OrderedForest t1_prime;
    int k = 0;
    std::vector<OrderedForest> vs;
    std::uint64_t items = 0;
    std::uint64_t colorings = 0;  // checked
    bool exhaustive = false;
    std::uint64_t verified = 0;   // colourings whose t_i passed the check
    std::vector<TreeMap> first_t;  // the t_i for the first colouring
};

/// T_1' from frco, V_1 = T_1'⊗I, V_i = T_i⊗I, |I| the least size at which
/// HJpro holds for L_i = Q(·, I); then for each colouring p_i, π_{p_i}, the
/// monochromatic copy of T_1, q and t_1 = q∘π_{p_1}, t_i = π_{p_i}, checked
/// against every s-tuple. Throws InvalidArgument when T_1'⊗I does not carry
/// the Q×I order (height >= 2 with |I| >= 2).
LpPipelineResult lp_pipeline(const std::vector<int>& as, const std::vector<OrderedForest>& ts, int b,
                             const LpPipelineLimits& limits = {});

}  // namespace ramsey
