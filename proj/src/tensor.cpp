#include "ramsey/tensor.hpp"

#include <algorithm>
#include <numeric>

#include "ramsey/error.hpp"

namespace ramsey {

namespace {

// All sequences over {0..k-1} of the given length, in lexicographic order.
std::vector<std::vector<int>> words(int k, int length)
{
    std::vector<std::vector<int>> out;
    std::vector<int> w(static_cast<std::size_t>(length), 0);
    while (true) {
        out.push_back(w);
        int pos = length - 1;
        while (pos >= 0 && w[static_cast<std::size_t>(pos)] == k - 1)
            w[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0)
            break;
        ++w[static_cast<std::size_t>(pos)];
    }
    return out;
}

}  // namespace

std::vector<Vertex> level_path(const OrderedForest& f, Vertex s)
{
    std::vector<Vertex> path;
    for (Vertex u = s; u != kNone; u = f.parent(u))
        path.push_back(u);
    std::reverse(path.begin(), path.end());
    return path;
}

Tensor::Tensor(const OrderedForest& s, LinearOrder alphabet) : base_(s), k_(alphabet.size)
{
    if (k_ < 1)
        throw Error(Errc::EmptyAlphabet, "S⊗I needs a non-empty I");

    // Points with their ≤_{S⊗I} keys (s(0), t(0), ..., s(h-1), t(h-1)).
    std::vector<TensorPoint> raw;
    std::vector<std::vector<int>> keys;
    for (Vertex v = 0; v < s.size(); ++v) {
        auto path = level_path(s, v);
        for (auto& t : words(k_, static_cast<int>(path.size()))) {
            std::vector<int> key;
            for (std::size_t l = 0; l < path.size(); ++l) {
                key.push_back(path[l]);
                key.push_back(t[l]);
            }
            raw.push_back({v, std::move(t)});
            keys.push_back(std::move(key));
        }
    }
    std::vector<std::size_t> order(raw.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

    std::map<TensorPoint, Vertex> sorted_index;
    std::vector<TensorPoint> sorted;
    for (std::size_t i = 0; i < order.size(); ++i) {
        sorted.push_back(raw[order[i]]);
        sorted_index.emplace(sorted.back(), static_cast<Vertex>(i));
    }

    // Immediate ⊑-predecessor: decrement the last letter if possible,
    // otherwise drop it and move to the parent of s.
    std::vector<Vertex> parents;
    for (const auto& p : sorted) {
        TensorPoint pred = p;
        if (pred.t.back() > 0) {
            --pred.t.back();
        } else {
            pred.s = s.parent(p.s);
            pred.t.pop_back();
            if (pred.s == kNone) {
                parents.push_back(kNone);
                continue;
            }
        }
        parents.push_back(sorted_index.at(pred));
    }
    auto canon = canonicalize_forest(parents);
    forest_ = canon.forest;
    points_.resize(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        points_[static_cast<std::size_t>(canon.old_to_new[i])] = sorted[i];
    for (std::size_t v = 0; v < points_.size(); ++v)
        index_.emplace(points_[v], static_cast<Vertex>(v));

    // Q with keys (s(0), u(0), ..., u(h-2), s(h-1)).
    std::vector<std::pair<std::vector<int>, QPoint>> qs;
    for (Vertex v = 0; v < s.size(); ++v) {
        auto path = level_path(s, v);
        for (auto& u : words(k_, static_cast<int>(path.size()) - 1)) {
            std::vector<int> key;
            for (std::size_t l = 0; l < path.size(); ++l) {
                key.push_back(path[l]);
                if (l < u.size())
                    key.push_back(u[l]);
            }
            qs.push_back({std::move(key), QPoint{v, std::move(u)}});
        }
    }
    std::sort(qs.begin(), qs.end());
    for (auto& [key, q] : qs) {
        q_index_.emplace(q, static_cast<int>(q_points_.size()));
        q_points_.push_back(std::move(q));
    }

    q_of_.resize(points_.size());
    last_of_.resize(points_.size());
    by_q_.assign(points_.size(), kNone);
    for (std::size_t v = 0; v < points_.size(); ++v) {
        const auto& p = points_[v];
        QPoint q{p.s, std::vector<int>(p.t.begin(), p.t.end() - 1)};
        q_of_[v] = q_index_.at(q);
        last_of_[v] = p.t.back();
        by_q_[static_cast<std::size_t>(q_of_[v] * k_ + last_of_[v])] = static_cast<Vertex>(v);
    }
    for (std::size_t v = 1; v < points_.size(); ++v)
        if (chain_position(static_cast<Vertex>(v)) < chain_position(static_cast<Vertex>(v - 1)))
            orders_agree_ = false;
}

Vertex Tensor::vertex_of(const TensorPoint& p) const
{
    auto it = index_.find(p);
    if (it == index_.end())
        throw Error(Errc::VertexOutOfRange, "not a point of S⊗I");
    return it->second;
}

int Tensor::q_index(const QPoint& q) const
{
    auto it = q_index_.find(q);
    if (it == q_index_.end())
        throw Error(Errc::VertexOutOfRange, "not a point of Q(S,I)");
    return it->second;
}

Vertex Tensor::identify(int q, int i) const
{
    if (q < 0 || q >= q_size() || i < 0 || i >= k_)
        throw Error(Errc::VertexOutOfRange, "(q, i) out of range");
    return by_q_[static_cast<std::size_t>(q * k_ + i)];
}

}  // namespace ramsey
