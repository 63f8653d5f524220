#pragma once

// Finite rooted ordered trees and forests in canonical form.
//
// A canonical tree stores its vertices in lexicographic order: vertex ids are
// a preorder traversal in which the immediate successors of each vertex are
// visited in their sibling order. Consequently
//   * parent(v) < v for every non-root v,
//   * the tree order v ⊑ w is the interval test v <= w < subtree_end(v),
//   * the lexicographic order of the tree is the numeric order of ids,
//   * the initial subtree {w : w <= v} is the id prefix 0..v.
// Structural equality of parent arrays is therefore isomorphism of ordered
// trees.

#include <compare>
#include <memory>
#include <span>
#include <vector>

namespace ramsey {

using Vertex = int;
inline constexpr Vertex kNone = -1;

enum class Order { Less, Equal, Greater };

class OrderedTree {
public:
    struct Data {
        std::vector<Vertex> parent;
        std::vector<int> depth;          // root has depth 0
        std::vector<Vertex> end;         // one past the last descendant
        std::vector<std::vector<Vertex>> children;
        std::vector<Vertex> meet_table;  // n*n, empty for large trees
        int height = 0;
    };

    /// The one-vertex tree.
    OrderedTree();

    /// Requires a canonical parent array (kNone marks the root); throws
    /// NotATree or NonCanonical otherwise.
    static OrderedTree from_parents(std::vector<Vertex> parents);
    static OrderedTree chain(int n);

    int size() const noexcept { return static_cast<int>(data_->parent.size()); }
    const std::vector<Vertex>& parents() const noexcept { return data_->parent; }
    Vertex root() const noexcept { return 0; }
    Vertex parent(Vertex v) const;

    /// Number of predecessors of v including v itself; the root has height 1.
    int height(Vertex v) const;
    int height() const noexcept { return data_->height; }
    int depth(Vertex v) const noexcept { return data_->depth[static_cast<std::size_t>(v)]; }

    Vertex subtree_end(Vertex v) const noexcept { return data_->end[static_cast<std::size_t>(v)]; }

    /// v ⊑ w in the tree order (every vertex precedes itself).
    bool precedes(Vertex v, Vertex w) const noexcept { return v <= w && w < subtree_end(v); }

    Vertex meet(Vertex v, Vertex w) const noexcept
    {
        if (!data_->meet_table.empty())
            return data_->meet_table[static_cast<std::size_t>(v) * parents().size() + static_cast<std::size_t>(w)];
        return walk_meet(v, w);
    }

    const std::vector<Vertex>& children(Vertex v) const;
    bool is_leaf(Vertex v) const;
    std::vector<Vertex> leaves() const;
    Vertex largest_leaf() const noexcept { return size() - 1; }
    bool is_chain() const noexcept { return height() == size(); }
    bool contains(Vertex v) const noexcept { return v >= 0 && v < size(); }

    /// Throws VertexOutOfRange unless v is a vertex of this tree.
    void require_vertex(Vertex v) const;

    friend bool operator==(const OrderedTree& a, const OrderedTree& b) noexcept
    {
        return a.data_ == b.data_ || a.parents() == b.parents();
    }
    friend std::strong_ordering operator<=>(const OrderedTree& a, const OrderedTree& b) noexcept
    {
        return a.parents() <=> b.parents();
    }

private:
    explicit OrderedTree(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    static OrderedTree build(std::vector<Vertex> parents);
    Vertex walk_meet(Vertex v, Vertex w) const noexcept;

    std::shared_ptr<const Data> data_;
};

/// An ordered forest, stored as the tree 1⊕F with the added root removed.
/// Forest vertex v corresponds to closure vertex v+1.
class OrderedForest {
public:
    OrderedForest() = default;  // the empty forest

    /// kNone marks the minimal vertex of a component.
    static OrderedForest from_parents(const std::vector<Vertex>& parents);
    static OrderedForest from_closure(OrderedTree closure) { return OrderedForest(std::move(closure)); }
    /// n pairwise incomparable points.
    static OrderedForest antichain(int n);
    static OrderedForest chain(int n);

    int size() const noexcept { return closure_.size() - 1; }
    bool empty() const noexcept { return size() == 0; }
    std::vector<Vertex> parents() const;
    Vertex parent(Vertex v) const;
    const OrderedTree& closure() const noexcept { return closure_; }

    /// 1-based: minimal vertices have height 1.
    int height(Vertex v) const;
    int height() const noexcept { return closure_.height() - 1; }
    bool precedes(Vertex v, Vertex w) const noexcept { return closure_.precedes(v + 1, w + 1); }
    /// kNone when v and w lie in different components.
    Vertex meet(Vertex v, Vertex w) const noexcept
    {
        Vertex m = closure_.meet(v + 1, w + 1);
        return m == 0 ? kNone : m - 1;
    }
    std::vector<Vertex> minimal_vertices() const;
    /// Half-open id intervals, one per component, in order.
    std::vector<std::pair<Vertex, Vertex>> components() const;
    void require_vertex(Vertex v) const;

    friend bool operator==(const OrderedForest& a, const OrderedForest& b) noexcept { return a.closure_ == b.closure_; }
    friend std::strong_ordering operator<=>(const OrderedForest& a, const OrderedForest& b) noexcept
    {
        return a.closure_ <=> b.closure_;
    }

private:
    explicit OrderedForest(OrderedTree closure) : closure_(std::move(closure)) {}
    OrderedTree closure_;
};

/// The linear order {0 < 1 < ... < size-1}.
struct LinearOrder {
    int size = 0;

    /// Viewed as a chain; requires size >= 1.
    OrderedTree as_tree() const;
    OrderedForest as_forest() const { return OrderedForest::chain(size); }

    friend bool operator==(LinearOrder, LinearOrder) = default;
};

/// Canonical form of an arbitrary parent array, with old id -> new id.
struct Canonicalized {
    OrderedTree tree;
    std::vector<Vertex> old_to_new;
};

struct CanonicalizedForest {
    OrderedForest forest;
    std::vector<Vertex> old_to_new;
};

/// Sibling order of the input is increasing index order. Parents need not
/// precede children. Throws NotATree on zero or several roots, cycles, or
/// out-of-range parents.
Canonicalized canonicalize(std::span<const Vertex> parents);
CanonicalizedForest canonicalize_forest(std::span<const Vertex> parents);

bool is_canonical(std::span<const Vertex> parents);

/// Tree meet and lexicographic comparison evaluated from their definitions
/// on a (not necessarily canonical) parent array.
Vertex meet(std::span<const Vertex> parents, Vertex v, Vertex w);
Order lex_compare(std::span<const Vertex> parents, Vertex v, Vertex w);
Order lex_compare(const OrderedTree& tree, Vertex v, Vertex w);

struct Subtree {
    OrderedTree tree;
    std::vector<Vertex> inclusion;  // subtree vertex -> vertex of the ambient tree
};

/// T^v = {w : w <= v}.
Subtree initial_subtree(const OrderedTree& tree, Vertex v);

struct Attached {
    OrderedTree tree;
    std::vector<Vertex> base_embedding;               // T -> result
    std::vector<std::vector<Vertex>> part_embeddings;  // F_i -> result
};

/// (T; x_1..x_n) ⊕ (F_1..F_n): the minima of F_i become the last immediate
/// successors of x_i.
Attached attach(const OrderedTree& base, std::span<const Vertex> points, std::span<const OrderedForest> forests);

/// A ⊕ F; A ⊕ ∅ is the chain A.
OrderedTree oplus(LinearOrder prefix, const OrderedForest& forest);
OrderedTree one_plus(const OrderedForest& forest);
/// The forest obtained by deleting the root.
OrderedForest remove_root(const OrderedTree& tree);

/// True if the tree is of the form A ⊕ F with |A| = prefix.
bool has_linear_prefix(const OrderedTree& tree, int prefix);

}  // namespace ramsey
