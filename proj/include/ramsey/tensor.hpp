#pragma once

// The fan-out S⊗I of an ordered forest along a linear order I, and the
// level-cut index set Q(S,I).
//
// Points of S⊗I are pairs (s,t) with |t| = ht(s). Two linear orders live on
// S⊗I: the tree order of the canonical forest (vertex ids), and the
// lexicographic order of Q×I (the "chain position" q*|I| + i). They agree
// only when ht(S) <= 1 or |I| = 1; callers pick the one they mean.

#include <map>
#include <vector>

#include "ramsey/tree.hpp"

namespace ramsey {

struct TensorPoint {
    Vertex s = 0;
    std::vector<int> t;

    friend bool operator==(const TensorPoint&, const TensorPoint&) = default;
    friend auto operator<=>(const TensorPoint&, const TensorPoint&) = default;
};

struct QPoint {
    Vertex s = 0;
    std::vector<int> u;  // |u| = ht(s) - 1

    friend bool operator==(const QPoint&, const QPoint&) = default;
    friend auto operator<=>(const QPoint&, const QPoint&) = default;
};

class Tensor {
public:
    /// Throws EmptyAlphabet when |I| = 0.
    Tensor(const OrderedForest& s, LinearOrder alphabet);

    const OrderedForest& base() const noexcept { return base_; }
    int alphabet() const noexcept { return k_; }

    // S⊗I as a canonical forest; vertex ids follow the tree order.
    const OrderedForest& forest() const noexcept { return forest_; }
    int size() const noexcept { return forest_.size(); }
    const TensorPoint& point(Vertex v) const { return points_.at(static_cast<std::size_t>(v)); }
    Vertex vertex_of(const TensorPoint& p) const;

    // Q(S,I) in its own linear order.
    int q_size() const noexcept { return static_cast<int>(q_points_.size()); }
    const QPoint& q_point(int q) const { return q_points_.at(static_cast<std::size_t>(q)); }
    int q_index(const QPoint& q) const;

    // (q, i) <-> (s, u⌢i)
    Vertex identify(int q, int i) const;
    std::pair<int, int> split(Vertex v) const { return {q_of_[static_cast<std::size_t>(v)], last_of_[static_cast<std::size_t>(v)]}; }
    int q_of(Vertex v) const noexcept { return q_of_[static_cast<std::size_t>(v)]; }
    int last_of(Vertex v) const noexcept { return last_of_[static_cast<std::size_t>(v)]; }

    /// Position of v in the lexicographic order of Q×I.
    int chain_position(Vertex v) const noexcept { return q_of(v) * k_ + last_of(v); }
    Vertex at_chain_position(int pos) const { return identify(pos / k_, pos % k_); }

    /// True when the tree order and the Q×I order coincide.
    bool orders_agree() const noexcept { return orders_agree_; }

private:
    OrderedForest base_;
    int k_;
    OrderedForest forest_;
    std::vector<TensorPoint> points_;
    std::map<TensorPoint, Vertex> index_;
    std::vector<QPoint> q_points_;
    std::map<QPoint, int> q_index_;
    std::vector<int> q_of_;
    std::vector<int> last_of_;
    std::vector<Vertex> by_q_;  // q*k + i -> vertex
    bool orders_agree_ = true;
};

/// s(0), ..., s(ht(s)-1): the root path of s in a forest, minimal vertex first.
std::vector<Vertex> level_path(const OrderedForest& f, Vertex s);

}  // namespace ramsey
