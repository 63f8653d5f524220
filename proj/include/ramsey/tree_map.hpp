#pragma once

// Maps between ordered trees: morphisms, embeddings, rigid surjections and
// the restrictions used throughout (f^v, f_x).

#include <span>
#include <vector>

#include "ramsey/tree.hpp"

namespace ramsey {

class TreeMap {
public:
    /// Throws InvalidArgument if the value count differs from |dom| and
    /// VertexOutOfRange if some value is not a vertex of cod.
    TreeMap(OrderedTree dom, OrderedTree cod, std::vector<Vertex> values);
    static TreeMap identity(const OrderedTree& t);

    const OrderedTree& dom() const noexcept { return dom_; }
    const OrderedTree& cod() const noexcept { return cod_; }
    const std::vector<Vertex>& values() const noexcept { return values_; }
    Vertex operator()(Vertex v) const noexcept { return values_[static_cast<std::size_t>(v)]; }
    int size() const noexcept { return static_cast<int>(values_.size()); }

    friend bool operator==(const TreeMap&, const TreeMap&) = default;

private:
    OrderedTree dom_;
    OrderedTree cod_;
    std::vector<Vertex> values_;
};

struct KindFlags {
    bool morphism = false;
    bool embedding = false;
    bool rigid = false;
    bool sealed = false;
    int a_prefix = 0;      // the prefix size a_rigid was tested against
    bool a_rigid = false;  // rigid and the identity on the first a_prefix vertices

    friend bool operator==(const KindFlags&, const KindFlags&) = default;
};

bool is_morphism(const TreeMap& e);
bool is_embedding(const TreeMap& e);

/// Meet-of-fibre candidate, verified against f∘e = id and e∘f ⊑ id.
/// Returns an empty vector when f is not a rigid surjection.
std::vector<Vertex> rigid_injection_values(const TreeMap& f);
bool is_rigid(const TreeMap& f);

KindFlags classify(const TreeMap& f, int a_prefix = 0);

/// Throws NotRigid.
TreeMap injection_of(const TreeMap& f);

/// f∘g. Throws DomainMismatch unless cod(g) = dom(f).
TreeMap compose(const TreeMap& f, const TreeMap& g);

/// The rigid surjection T -> S whose injection is the embedding e: S -> T.
/// Throws NotEmbedding.
TreeMap rigid_from_embedding(const TreeMap& e);

/// f^v = f restricted to T^{i(v)}, onto S^v. Throws NotRigid, VertexOutOfRange.
TreeMap restrict_initial(const TreeMap& f, Vertex v);

/// Throws NotRigid.
bool is_sealed(const TreeMap& f);

/// The leaf of cod(i) that is i-conjugate to the leaf x of dom(i).
/// Throws NotEmbedding, NotLeaf.
Vertex conjugate_leaf(const TreeMap& i, Vertex x);

/// f_x = f restricted to T^y, y the f-conjugate of x; onto S^x.
/// Throws NotRigid, NotLeaf.
TreeMap restrict_conjugate(const TreeMap& f, Vertex x);

struct Restriction {
    TreeMap map;
    std::vector<Vertex> dom_inclusion;
    std::vector<Vertex> cod_inclusion;
};

/// f restricted to a downward-closed vertex set, onto its image (which must
/// itself be downward closed). Throws InvalidArgument otherwise.
Restriction restrict_to(const TreeMap& f, std::span<const Vertex> subtree);

/// p: A⊕(L×I) -> A⊕L on chains, positions a + x*k + i and values a + x.
bool check_spfu(std::span<const Vertex> p, int a, int l, int k);

/// p as a map of chains, for classification.
TreeMap chain_map(std::span<const Vertex> values, int cod_size);

}  // namespace ramsey
