#include "ramsey/coloring.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>

#include "ramsey/enumeration.hpp"
#include "ramsey/error.hpp"

namespace ramsey {

const char* to_string(Verdict v) noexcept
{
    switch (v) {
    case Verdict::Holds:
        return "holds";
    case Verdict::Fails:
        return "fails";
    case Verdict::CapExceeded:
        return "cap_exceeded";
    }
    return "?";
}

std::uint64_t default_max_nodes()
{
    if (const char* env = std::getenv("RAMSEY_MAX_NODES")) {
        char* end = nullptr;
        auto v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return v;
    }
    return kDefaultMaxNodes;
}

bool realizes(const Constraint& c, std::span<const int> coloring)
{
    for (const auto& g : c)
        for (int v : g)
            if (coloring[static_cast<std::size_t>(v)] != coloring[static_cast<std::size_t>(g.front())])
                return false;
    return true;
}

bool avoids_all(const ConstraintSystem& sys, std::span<const int> coloring)
{
    for (const auto& c : sys.constraints)
        if (realizes(c, coloring))
            return false;
    return true;
}

ConstraintSystem simplify(const ConstraintSystem& sys)
{
    ConstraintSystem out;
    out.items = sys.items;
    for (const auto& c : sys.constraints) {
        Constraint kept;
        for (Group g : c) {
            for (int v : g)
                if (v < 0 || v >= sys.items)
                    throw Error(Errc::VertexOutOfRange, "constraint mentions item " + std::to_string(v));
            std::sort(g.begin(), g.end());
            g.erase(std::unique(g.begin(), g.end()), g.end());
            if (g.size() > 1)
                kept.push_back(std::move(g));
        }
        std::sort(kept.begin(), kept.end());
        kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
        if (kept.empty()) {
            // Realized by every coloring: the system holds outright.
            out.constraints.assign(1, Constraint{});
            return out;
        }
        out.constraints.push_back(std::move(kept));
    }
    std::sort(out.constraints.begin(), out.constraints.end());
    out.constraints.erase(std::unique(out.constraints.begin(), out.constraints.end()), out.constraints.end());
    return out;
}

namespace {

class Solver {
public:
    Solver(const ConstraintSystem& sys, int colors, std::uint64_t cap) : sys_(sys), b_(colors), cap_(cap)
    {
        const int n = sys.items;
        color_.assign(static_cast<std::size_t>(n), -1);
        domain_.assign(static_cast<std::size_t>(n), colors >= 32 ? ~0u : ((1u << colors) - 1u));
        item_groups_.resize(static_cast<std::size_t>(n));
        degree_.assign(static_cast<std::size_t>(n), 0);
        for (std::size_t c = 0; c < sys.constraints.size(); ++c) {
            std::vector<int> ids;
            for (const auto& g : sys.constraints[c]) {
                int gid = static_cast<int>(groups_.size());
                groups_.push_back(&g);
                owner_.push_back(static_cast<int>(c));
                ids.push_back(gid);
                for (int v : g) {
                    item_groups_[static_cast<std::size_t>(v)].push_back(gid);
                    ++degree_[static_cast<std::size_t>(v)];
                }
            }
            cons_groups_.push_back(std::move(ids));
        }
        counts_.assign(groups_.size() * static_cast<std::size_t>(b_), 0);
        assigned_.assign(groups_.size(), 0);
        distinct_.assign(groups_.size(), 0);
        broken_.assign(sys.constraints.size(), 0);
        complete_.assign(sys.constraints.size(), 0);
        for (int v = 0; v < n; ++v)
            if (!item_groups_[static_cast<std::size_t>(v)].empty())
                free_.push_back(v);
    }

    SearchResult run()
    {
        SearchResult r;
        r.stats.items = static_cast<std::uint64_t>(sys_.items);
        r.stats.constraints = sys_.constraints.size();
        if (sys_.constraints.size() == 1 && sys_.constraints[0].empty()) {
            r.verdict = Verdict::Holds;
            return r;
        }
        bool found = search(static_cast<int>(free_.size()), -1);
        r.stats.nodes = nodes_;
        if (capped_) {
            r.verdict = Verdict::CapExceeded;
        } else if (found) {
            r.verdict = Verdict::Fails;
            r.coloring.assign(static_cast<std::size_t>(sys_.items), 0);
            for (int v = 0; v < sys_.items; ++v)
                if (color_[static_cast<std::size_t>(v)] >= 0)
                    r.coloring[static_cast<std::size_t>(v)] = color_[static_cast<std::size_t>(v)];
        } else {
            r.verdict = Verdict::Holds;
        }
        return r;
    }

private:
    int& count(int g, int c) { return counts_[static_cast<std::size_t>(g) * static_cast<std::size_t>(b_) + static_cast<std::size_t>(c)]; }

    void assign(int v, int c)
    {
        color_[static_cast<std::size_t>(v)] = c;
        for (int g : item_groups_[static_cast<std::size_t>(v)]) {
            auto sg = static_cast<std::size_t>(g);
            auto so = static_cast<std::size_t>(owner_[sg]);
            if (++count(g, c) == 1 && ++distinct_[sg] == 2)
                ++broken_[so];
            if (++assigned_[sg] == static_cast<int>(groups_[sg]->size()))
                ++complete_[so];
        }
    }

    void unassign(int v)
    {
        int c = color_[static_cast<std::size_t>(v)];
        for (int g : item_groups_[static_cast<std::size_t>(v)]) {
            auto sg = static_cast<std::size_t>(g);
            auto so = static_cast<std::size_t>(owner_[sg]);
            if (assigned_[sg]-- == static_cast<int>(groups_[sg]->size()))
                --complete_[so];
            if (--count(g, c) == 0 && distinct_[sg]-- == 2)
                --broken_[so];
        }
        color_[static_cast<std::size_t>(v)] = -1;
    }

    int mono_color(int g)
    {
        for (int c = 0; c < b_; ++c)
            if (count(g, c) > 0)
                return c;
        return -1;
    }

    // Returns false on a conflict. Domain changes go on the trail.
    bool propagate(int v)
    {
        for (int g : item_groups_[static_cast<std::size_t>(v)]) {
            auto c = static_cast<std::size_t>(owner_[static_cast<std::size_t>(g)]);
            if (broken_[c] > 0)
                continue;
            const auto& gs = cons_groups_[c];
            int open = static_cast<int>(gs.size()) - complete_[c];
            if (open == 0)
                return false;
            if (open > 1)
                continue;
            int og = -1;
            for (int h : gs)
                if (assigned_[static_cast<std::size_t>(h)] < static_cast<int>(groups_[static_cast<std::size_t>(h)]->size())) {
                    og = h;
                    break;
                }
            auto sog = static_cast<std::size_t>(og);
            if (static_cast<int>(groups_[sog]->size()) - assigned_[sog] != 1 || distinct_[sog] != 1)
                continue;
            int u = -1;
            for (int w : *groups_[sog])
                if (color_[static_cast<std::size_t>(w)] < 0) {
                    u = w;
                    break;
                }
            unsigned bit = 1u << mono_color(og);
            auto& dom = domain_[static_cast<std::size_t>(u)];
            if (dom & bit) {
                trail_.emplace_back(u, dom);
                dom &= ~bit;
                if (dom == 0)
                    return false;
            }
        }
        return true;
    }

    int choose()
    {
        int best = -1;
        int best_size = 64;
        int best_deg = -1;
        for (int v : free_) {
            if (color_[static_cast<std::size_t>(v)] >= 0)
                continue;
            int size = std::popcount(domain_[static_cast<std::size_t>(v)]);
            int deg = degree_[static_cast<std::size_t>(v)];
            if (size < best_size || (size == best_size && deg > best_deg)) {
                best = v;
                best_size = size;
                best_deg = deg;
            }
        }
        return best;
    }

    bool search(int unassigned, int max_used)
    {
        if (unassigned == 0)
            return true;
        int v = choose();
        const int limit = std::min(b_ - 1, max_used + 1);
        for (int c = 0; c <= limit; ++c) {
            if (!(domain_[static_cast<std::size_t>(v)] & (1u << c)))
                continue;
            if (++nodes_ > cap_) {
                capped_ = true;
                return false;
            }
            std::size_t mark = trail_.size();
            assign(v, c);
            if (propagate(v) && search(unassigned - 1, std::max(max_used, c)))
                return true;
            unassign(v);
            while (trail_.size() > mark) {
                domain_[static_cast<std::size_t>(trail_.back().first)] = trail_.back().second;
                trail_.pop_back();
            }
            if (capped_)
                return false;
        }
        return false;
    }

    const ConstraintSystem& sys_;
    int b_;
    std::uint64_t cap_;
    std::uint64_t nodes_ = 0;
    bool capped_ = false;

    std::vector<const Group*> groups_;
    std::vector<int> owner_;
    std::vector<std::vector<int>> cons_groups_;
    std::vector<std::vector<int>> item_groups_;
    std::vector<int> degree_;
    std::vector<int> free_;

    std::vector<int> color_;
    std::vector<unsigned> domain_;
    std::vector<int> counts_;
    std::vector<int> assigned_;
    std::vector<int> distinct_;
    std::vector<int> broken_;
    std::vector<int> complete_;
    std::vector<std::pair<int, unsigned>> trail_;
};

void require_colors(int colors)
{
    if (colors < 1 || colors > 31)
        throw Error(Errc::InvalidArgument, "colour count must be between 1 and 31");
}

}  // namespace

SearchResult solve(const ConstraintSystem& sys, int colors, std::uint64_t max_nodes)
{
    require_colors(colors);
    ConstraintSystem simple = simplify(sys);
    Solver solver(simple, colors, max_nodes);
    return solver.run();
}

SearchResult brute_force(const ConstraintSystem& sys, int colors)
{
    require_colors(colors);
    if (sys.items > 24)
        throw Error(Errc::ResourceCapExceeded, "brute force is limited to 24 items");
    SearchResult r;
    r.stats.items = static_cast<std::uint64_t>(sys.items);
    r.stats.constraints = sys.constraints.size();
    r.verdict = Verdict::Holds;
    for_each_coloring(sys.items, colors, false, [&](const std::vector<int>& c) {
        ++r.stats.nodes;
        if (avoids_all(sys, c)) {
            r.verdict = Verdict::Fails;
            r.coloring = c;
            return false;
        }
        return true;
    });
    return r;
}

SearchResult plain_backtrack(const ConstraintSystem& sys, int colors, std::uint64_t max_nodes)
{
    require_colors(colors);
    const int n = sys.items;
    // Constraints indexed by their largest item, so each is tested once it is
    // fully coloured.
    std::vector<std::vector<const Constraint*>> closing(static_cast<std::size_t>(std::max(n, 1)));
    std::vector<const Constraint*> empty_items;
    for (const auto& c : sys.constraints) {
        int top = -1;
        for (const auto& g : c)
            for (int v : g)
                top = std::max(top, v);
        if (top < 0)
            empty_items.push_back(&c);
        else
            closing[static_cast<std::size_t>(top)].push_back(&c);
    }
    SearchResult r;
    r.stats.items = static_cast<std::uint64_t>(n);
    r.stats.constraints = sys.constraints.size();
    if (!empty_items.empty()) {
        r.verdict = Verdict::Holds;
        return r;
    }
    std::vector<int> coloring(static_cast<std::size_t>(n), 0);
    bool capped = false;
    auto rec = [&](auto&& self, int v) -> bool {
        if (v == n)
            return true;
        for (int c = 0; c < colors; ++c) {
            if (++r.stats.nodes > max_nodes) {
                capped = true;
                return false;
            }
            coloring[static_cast<std::size_t>(v)] = c;
            bool ok = true;
            for (const Constraint* k : closing[static_cast<std::size_t>(v)])
                if (realizes(*k, coloring)) {
                    ok = false;
                    break;
                }
            if (ok && self(self, v + 1))
                return true;
            if (capped)
                return false;
        }
        return false;
    };
    bool found = rec(rec, 0);
    if (capped)
        r.verdict = Verdict::CapExceeded;
    else if (found) {
        r.verdict = Verdict::Fails;
        r.coloring = coloring;
    } else
        r.verdict = Verdict::Holds;
    return r;
}

SearchResult unpruned_check(const ConstraintSystem& sys, int colors, std::uint64_t max_nodes)
{
    return sys.items <= 12 ? brute_force(sys, colors) : plain_backtrack(sys, colors, max_nodes);
}

}  // namespace ramsey
