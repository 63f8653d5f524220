#include "ramsey/hales_jewett.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ramsey/enumeration.hpp"
#include "ramsey/error.hpp"

namespace ramsey {

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kIndexCap = 1ull << 62;
constexpr std::uint64_t kItemCap = 1ull << 24;
constexpr std::uint64_t kEdgeCap = 60'000'000;  // total group entries per system

std::uint64_t sat_mul(std::uint64_t x, std::uint64_t y)
{
    if (x != 0 && y > kSat / x)
        return kSat;
    return x * y;
}

std::uint64_t sat_pow(std::uint64_t base, int e)
{
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i)
        r = sat_mul(r, base);
    return r;
}

std::uint64_t checked_pow(std::uint64_t base, int e)
{
    std::uint64_t r = sat_pow(base, e);
    if (r > kIndexCap)
        throw Error(Errc::ResourceCapExceeded, "index space too large");
    return r;
}

void require_shape(int a, int l, int k)
{
    if (a < 1)
        throw Error(Errc::EmptyLinearOrder, "A must be non-empty");
    if (l < 0)
        throw Error(Errc::InvalidArgument, "|L| must be >= 0");
    if (k < 1)
        throw Error(Errc::EmptyAlphabet, "I must be non-empty");
}

// Calls visit(digits) for every digits ∈ {0..base-1}^len, last digit fastest.
template <class F>
void for_each_word(int len, int base, F&& visit)
{
    std::vector<Vertex> d(static_cast<std::size_t>(len), 0);
    while (true) {
        visit(std::as_const(d));
        int pos = len - 1;
        while (pos >= 0 && d[static_cast<std::size_t>(pos)] == base - 1)
            d[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0)
            return;
        ++d[static_cast<std::size_t>(pos)];
    }
}

void add_edges(std::uint64_t& total, std::size_t n)
{
    total += n;
    if (total > kEdgeCap)
        throw Error(Errc::ResourceCapExceeded, "constraint system too large");
}

std::vector<std::vector<Vertex>> all_spfu(int a, int l, int k)
{
    if (count_spfu(a, l, k) > 5'000'000)
        throw Error(Errc::ResourceCapExceeded, "too many maps with the block property");
    std::vector<std::vector<Vertex>> out;
    for_each_spfu(a, l, k, [&](const std::vector<Vertex>& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

}  // namespace

// ---------------------------------------------------------------- chain maps

std::uint64_t count_spfu(int a, int l, int k)
{
    require_shape(a, l, k);
    std::uint64_t hi = sat_pow(static_cast<std::uint64_t>(a) + 1, k);
    if (hi == kSat)
        return l == 0 ? 1 : kSat;
    std::uint64_t block = hi - sat_pow(static_cast<std::uint64_t>(a), k);
    return sat_pow(block, l);
}

void for_each_spfu(int a, int l, int k, const std::function<bool(const std::vector<Vertex>&)>& visit)
{
    require_shape(a, l, k);
    std::vector<Vertex> p(static_cast<std::size_t>(a + l * k));
    std::iota(p.begin(), p.begin() + a, 0);
    const int n = l * k;
    bool stop = false;
    auto rec = [&](auto&& self, int pos, bool hit) -> void {
        if (stop)
            return;
        if (pos == n) {
            stop = !visit(p);
            return;
        }
        const int x = pos / k;
        const int i = pos % k;
        const bool h = i == 0 ? false : hit;
        const auto z = static_cast<std::size_t>(a + pos);
        if (!(i == k - 1 && !h))
            for (Vertex v = 0; v < a && !stop; ++v) {
                p[z] = v;
                self(self, pos + 1, h);
            }
        if (stop)
            return;
        p[z] = a + x;
        self(self, pos + 1, true);
    };
    rec(rec, 0, false);
}

int first_hit(std::span<const Vertex> p, int a, int k, int x)
{
    for (int i = 0; i < k; ++i) {
        const int z = a + x * k + i;
        if (z < static_cast<int>(p.size()) && p[static_cast<std::size_t>(z)] == a + x)
            return z;
    }
    return kNone;
}

SealedChainMaps::SealedChainMaps(int a, int n) : a_(a), n_(n)
{
    if (a < 1)
        throw Error(Errc::EmptyLinearOrder, "A must be non-empty");
    if (n < 0)
        throw Error(Errc::InvalidArgument, "chain length must be >= 0");
    offset_.assign(1, 0);
    for (int y = 0; y < n; ++y) {
        std::uint64_t next = offset_.back() + checked_pow(static_cast<std::uint64_t>(a), y);
        if (next > kIndexCap)
            throw Error(Errc::ResourceCapExceeded, "index space too large");
        offset_.push_back(next);
    }
}

std::uint64_t SealedChainMaps::index(std::span<const Vertex> below) const
{
    const auto y = below.size();
    if (y >= static_cast<std::size_t>(n_))
        throw Error(Errc::VertexOutOfRange, "top outside the chain");
    std::uint64_t idx = 0;
    for (Vertex v : below) {
        if (v < 0 || v >= a_)
            throw Error(Errc::NotSealed, "value below the top outside A");
        idx = idx * static_cast<std::uint64_t>(a_) + static_cast<std::uint64_t>(v);
    }
    return offset_[y] + idx;
}

std::vector<Vertex> SealedChainMaps::values(std::uint64_t idx) const
{
    if (idx >= size())
        throw Error(Errc::VertexOutOfRange, "index out of range");
    const auto it = std::upper_bound(offset_.begin(), offset_.end(), idx);
    const int y = static_cast<int>(it - offset_.begin()) - 1;
    std::uint64_t rem = idx - offset_[static_cast<std::size_t>(y)];
    std::vector<Vertex> out(static_cast<std::size_t>(a_ + y + 1));
    std::iota(out.begin(), out.begin() + a_, 0);
    for (int j = y - 1; j >= 0; --j) {
        out[static_cast<std::size_t>(a_ + j)] = static_cast<Vertex>(rem % static_cast<std::uint64_t>(a_));
        rem /= static_cast<std::uint64_t>(a_);
    }
    out.back() = a_;
    return out;
}

TupleSpace::TupleSpace(std::vector<int> as, std::vector<int> lengths)
    : as_(std::move(as)), lengths_(std::move(lengths)), first_(as_.empty() ? 1 : as_[0], lengths_.empty() ? 0 : lengths_[0])
{
    if (as_.empty() || as_.size() != lengths_.size())
        throw Error(Errc::InvalidArgument, "one size and one length per component");
    total_ = first_.size();
    sizes_.push_back(total_);
    for (std::size_t i = 1; i < as_.size(); ++i) {
        if (as_[i] < 1)
            throw Error(Errc::EmptyLinearOrder, "A_i must be non-empty");
        sizes_.push_back(checked_pow(static_cast<std::uint64_t>(as_[i]), lengths_[i]));
        total_ = sat_mul(total_, sizes_.back());
        if (total_ > kIndexCap)
            throw Error(Errc::ResourceCapExceeded, "tuple space too large");
    }
}

std::uint64_t TupleSpace::other_index(std::size_t i, std::span<const Vertex> values) const
{
    if (values.size() != static_cast<std::size_t>(lengths_.at(i)))
        throw Error(Errc::InvalidArgument, "component length mismatch");
    std::uint64_t idx = 0;
    for (Vertex v : values) {
        if (v < 0 || v >= as_[i])
            throw Error(Errc::VertexOutOfRange, "component value outside A_i");
        idx = idx * static_cast<std::uint64_t>(as_[i]) + static_cast<std::uint64_t>(v);
    }
    return idx;
}

std::uint64_t TupleSpace::combine(std::span<const std::uint64_t> parts) const
{
    std::uint64_t idx = 0;
    for (std::size_t i = parts.size(); i-- > 0;)
        idx = idx * sizes_[i] + parts[i];
    return idx;
}

// ---------------------------------------------------------------- forests

namespace {

ConstraintSystem frco_system(const OrderedForest& s, const OrderedForest& sp)
{
    ConstraintSystem sys;
    sys.items = sp.size();
    for_each_embedding(s.closure(), sp.closure(), [&](const std::vector<Vertex>& e) {
        Group g;
        for (std::size_t v = 1; v < e.size(); ++v)
            g.push_back(e[v] - 1);
        sys.constraints.push_back({g});
    });
    return sys;
}

}  // namespace

Verdict frco_check(const OrderedForest& s, const OrderedForest& s_prime, int b, std::uint64_t max_nodes)
{
    if (b < 1)
        throw Error(Errc::InvalidArgument, "need at least one colour");
    return solve(frco_system(s, s_prime), b, max_nodes).verdict;
}

std::optional<std::vector<Vertex>> mono_embedding(const OrderedForest& s, const OrderedForest& s_prime,
                                                  std::span<const int> coloring)
{
    if (coloring.size() != static_cast<std::size_t>(s_prime.size()))
        throw Error(Errc::InvalidArgument, "one colour per vertex");
    std::optional<std::vector<Vertex>> found;
    for_each_embedding(s.closure(), s_prime.closure(), [&](const std::vector<Vertex>& e) {
        for (std::size_t v = 2; v < e.size(); ++v)
            if (coloring[static_cast<std::size_t>(e[v] - 1)] != coloring[static_cast<std::size_t>(e[1] - 1)])
                return true;
        std::vector<Vertex> out;
        for (std::size_t v = 1; v < e.size(); ++v)
            out.push_back(e[v] - 1);
        found = std::move(out);
        return false;
    });
    return found;
}

FrcoResult frco_search(const OrderedForest& s, int b, int max_size, std::uint64_t max_nodes)
{
    FrcoResult res;
    for (int n = 0; n <= max_size; ++n)
        for (const auto& f : enum_forests(n)) {
            ++res.candidates;
            Verdict v = frco_check(s, f, b, max_nodes);
            if (v == Verdict::CapExceeded)
                throw Error(Errc::ResourceCapExceeded, "node cap hit while checking a candidate forest");
            if (v == Verdict::Holds) {
                res.forest = f;
                return res;
            }
        }
    throw Error(Errc::NotFoundWithinBound, "no forest within the size bound");
}

OrderedTree prfrco_search(const OrderedTree& s, int b, int max_size, std::uint64_t max_nodes)
{
    return one_plus(frco_search(remove_root(s), b, max_size - 1, max_nodes).forest);
}

// ---------------------------------------------------------------- HJ

ConstraintSystem hj_system(int a, int l, int k)
{
    require_shape(a, l, k);
    SealedChainMaps objs(a, l * k);
    if (objs.size() > kItemCap)
        throw Error(Errc::ResourceCapExceeded, "too many items");
    ConstraintSystem sys;
    sys.items = static_cast<int>(objs.size());
    std::uint64_t edges = 0;
    std::vector<Vertex> below;
    for_each_spfu(a, l, k, [&](const std::vector<Vertex>& p) {
        Constraint con;
        for (int x = 0; x < l; ++x) {
            const int m = first_hit(p, a, k, x) - a;
            Group g;
            for_each_word(x, a, [&](const std::vector<Vertex>& r) {
                below.resize(static_cast<std::size_t>(m));
                for (int j = 0; j < m; ++j) {
                    Vertex v = p[static_cast<std::size_t>(a + j)];
                    below[static_cast<std::size_t>(j)] = v < a ? v : r[static_cast<std::size_t>(v - a)];
                }
                g.push_back(static_cast<int>(objs.index(below)));
            });
            add_edges(edges, g.size());
            con.push_back(std::move(g));
        }
        sys.constraints.push_back(std::move(con));
        return true;
    });
    return sys;
}

bool hj_witness_ok(int a, int l, int k, std::span<const int> coloring, std::span<const Vertex> p)
{
    if (!check_spfu(p, a, l, k))
        return false;
    SealedChainMaps objs(a, l * k);
    if (coloring.size() != objs.size())
        throw Error(Errc::InvalidArgument, "one colour per sealed map");
    for (int x = 0; x < l; ++x) {
        const int m = first_hit(p, a, k, x);
        int colour = -1;
        bool mono = true;
        for_each_word(x, a, [&](const std::vector<Vertex>& r) {
            // r as a map A⊕L^x -> A⊕1, then r∘p on the prefix up to m.
            std::vector<Vertex> full(static_cast<std::size_t>(a + x + 1));
            std::iota(full.begin(), full.begin() + a, 0);
            std::copy(r.begin(), r.end(), full.begin() + a);
            full.back() = a;
            std::vector<Vertex> comp(static_cast<std::size_t>(m + 1));
            for (int z = 0; z <= m; ++z)
                comp[static_cast<std::size_t>(z)] = full.at(static_cast<std::size_t>(p[static_cast<std::size_t>(z)]));
            for (int z = 0; z < a; ++z)
                if (comp[static_cast<std::size_t>(z)] != z)
                    throw std::logic_error("hj_witness_ok: composite is not the identity on A");
            if (comp.back() != a)
                throw std::logic_error("hj_witness_ok: composite is not sealed");
            auto idx = objs.index(std::span<const Vertex>(comp).subspan(static_cast<std::size_t>(a),
                                                                        static_cast<std::size_t>(m - a)));
            int c = coloring[static_cast<std::size_t>(idx)];
            if (colour == -1)
                colour = c;
            else if (c != colour)
                mono = false;
        });
        if (!mono)
            return false;
    }
    return true;
}

HjResult hj_search(int a, int l, int b, int max_k, bool certificates, std::uint64_t max_nodes,
                   std::uint64_t certificate_limit)
{
    require_shape(a, l, 1);
    if (b < 1)
        throw Error(Errc::InvalidArgument, "need at least one colour");
    HjResult res;
    for (int k = 1; k <= max_k; ++k) {
        auto sys = hj_system(a, l, k);
        auto r = solve(sys, b, max_nodes);
        res.verdicts.push_back(r.verdict);
        res.items = static_cast<std::uint64_t>(sys.items);
        res.constraints = sys.constraints.size();
        res.stats = r.stats;
        if (r.verdict == Verdict::CapExceeded)
            return res;
        if (r.verdict != Verdict::Holds)
            continue;
        res.k = k;
        if (certificates && sat_pow(static_cast<std::uint64_t>(b), sys.items) <= certificate_limit) {
            auto ps = all_spfu(a, l, k);
            for_each_coloring(sys.items, b, false, [&](const std::vector<int>& c) {
                auto it = std::find_if(ps.begin(), ps.end(), [&](const auto& p) { return hj_witness_ok(a, l, k, c, p); });
                if (it == ps.end())
                    throw std::logic_error("hj_search: solver said Holds but a colouring has no witness");
                res.certificate.colorings.push_back(c);
                res.certificate.witnesses.push_back(*it);
            });
            res.certificate.complete = true;
        }
        return res;
    }
    return res;
}

bool verify_hj_certificate(int a, int l, int b, int k, const HjCertificate& cert)
{
    if (!cert.complete || cert.colorings.size() != cert.witnesses.size())
        return false;
    SealedChainMaps objs(a, l * k);
    const auto n = static_cast<int>(objs.size());
    if (sat_pow(static_cast<std::uint64_t>(b), n) != cert.colorings.size())
        return false;
    std::size_t i = 0;
    bool ok = true;
    for_each_coloring(n, b, false, [&](const std::vector<int>& c) {
        ok = cert.colorings[i] == c && hj_witness_ok(a, l, k, c, cert.witnesses[i]);
        ++i;
        return ok;
    });
    return ok;
}

// ---------------------------------------------------------------- HJpro

const char* to_string(HjproMode m) noexcept { return m == HjproMode::Direct ? "direct" : "reduced"; }

HjproMode parse_hjpro_mode(const std::string& s)
{
    if (s == "direct")
        return HjproMode::Direct;
    if (s == "reduced")
        return HjproMode::Reduced;
    throw Error(Errc::InvalidArgument, "mode must be direct or reduced");
}

namespace {

void require_pro(const std::vector<int>& as, const std::vector<int>& ls, int k)
{
    if (as.empty() || as.size() != ls.size())
        throw Error(Errc::InvalidArgument, "one A_i and one L_i per component");
    for (std::size_t i = 0; i < as.size(); ++i)
        require_shape(as[i], ls[i], k);
}

TupleSpace pro_space(const std::vector<int>& as, const std::vector<int>& ls, int k)
{
    std::vector<int> lengths;
    for (int l : ls)
        lengths.push_back(l * k);
    return TupleSpace(as, lengths);
}

// Composite indices r_i∘p_i over all r_i: A_i⊕L_i -> A_i (i >= 1).
std::vector<std::uint64_t> other_composites(const TupleSpace& space, std::size_t i, int a, int l,
                                            std::span<const Vertex> p)
{
    std::vector<std::uint64_t> out;
    std::vector<Vertex> vals(p.size() - static_cast<std::size_t>(a));
    for_each_word(l, a, [&](const std::vector<Vertex>& r) {
        for (std::size_t j = 0; j < vals.size(); ++j) {
            Vertex v = p[static_cast<std::size_t>(a) + j];
            vals[j] = v < a ? v : r[static_cast<std::size_t>(v - a)];
        }
        out.push_back(space.other_index(i, vals));
    });
    return out;
}

// Composite indices r_1∘p_1^x over all sealed r_1 on A_1⊕L_1^x.
std::vector<std::uint64_t> first_composites(const TupleSpace& space, int a, int k, int x, std::span<const Vertex> p)
{
    std::vector<std::uint64_t> out;
    const int m = first_hit(p, a, k, x) - a;
    std::vector<Vertex> below(static_cast<std::size_t>(m));
    for_each_word(x, a, [&](const std::vector<Vertex>& r) {
        for (int j = 0; j < m; ++j) {
            Vertex v = p[static_cast<std::size_t>(a + j)];
            below[static_cast<std::size_t>(j)] = v < a ? v : r[static_cast<std::size_t>(v - a)];
        }
        out.push_back(space.first_index(below));
    });
    return out;
}

Constraint pro_constraint(const TupleSpace& space, const std::vector<int>& as, const std::vector<int>& ls, int k,
                          const std::vector<std::vector<Vertex>>& ps, std::uint64_t& edges)
{
    const std::size_t n = as.size();
    std::vector<std::vector<std::uint64_t>> lists(n);
    for (std::size_t i = 1; i < n; ++i)
        lists[i] = other_composites(space, i, as[i], ls[i], ps[i]);
    Constraint con;
    std::vector<std::uint64_t> parts(n);
    for (int x = 0; x < ls[0]; ++x) {
        lists[0] = first_composites(space, as[0], k, x, ps[0]);
        Group g;
        std::vector<std::size_t> at(n, 0);
        while (true) {
            for (std::size_t i = 0; i < n; ++i)
                parts[i] = lists[i][at[i]];
            g.push_back(static_cast<int>(space.combine(parts)));
            std::size_t i = n;
            while (i > 0 && ++at[i - 1] == lists[i - 1].size())
                at[--i] = 0;
            if (i == 0)
                break;
        }
        add_edges(edges, g.size());
        con.push_back(std::move(g));
    }
    return con;
}

std::uint64_t product_of(const std::vector<int>& as)
{
    std::uint64_t p = 1;
    for (int a : as)
        p = sat_mul(p, static_cast<std::uint64_t>(a));
    if (p > (1u << 20))
        throw Error(Errc::ResourceCapExceeded, "product order too large");
    return p;
}

}  // namespace

std::vector<std::vector<Vertex>> hjpro_derive(std::span<const Vertex> p, const std::vector<int>& as,
                                              const std::vector<int>& ls, int k)
{
    require_pro(as, ls, k);
    const int big_a = static_cast<int>(product_of(as));
    const int big_l = std::accumulate(ls.begin(), ls.end(), 0);
    if (!check_spfu(p, big_a, big_l, k))
        throw Error(Errc::SpfuViolated, "p lacks the block property");
    const std::size_t n = as.size();
    std::vector<std::vector<Vertex>> out(n);
    int weight = 1;  // Π_{j<i} a_j: A_1 is the least significant coordinate
    for (std::size_t i = 0; i < n; ++i) {
        int offset = 0;  // L_n comes first in L_n⊕…⊕L_1
        for (std::size_t j = i + 1; j < n; ++j)
            offset += ls[j];
        auto& pi = out[i];
        pi.resize(static_cast<std::size_t>(as[i] + ls[i] * k));
        std::iota(pi.begin(), pi.begin() + as[i], 0);
        for (int x = 0; x < ls[i]; ++x)
            for (int t = 0; t < k; ++t) {
                Vertex v = p[static_cast<std::size_t>(big_a + (offset + x) * k + t)];
                pi[static_cast<std::size_t>(as[i] + x * k + t)] = v < big_a ? (v / weight) % as[i] : as[i] + x;
            }
        weight *= as[i];
    }
    return out;
}

ConstraintSystem hjpro_system(const std::vector<int>& as, const std::vector<int>& ls, int k, HjproMode mode)
{
    require_pro(as, ls, k);
    TupleSpace space = pro_space(as, ls, k);
    if (space.size() > kItemCap)
        throw Error(Errc::ResourceCapExceeded, "too many tuples");
    ConstraintSystem sys;
    sys.items = static_cast<int>(space.size());
    std::uint64_t edges = 0;
    const std::size_t n = as.size();
    if (mode == HjproMode::Direct) {
        std::vector<std::vector<std::vector<Vertex>>> per(n);
        std::uint64_t tuples = 1;
        for (std::size_t i = 0; i < n; ++i) {
            per[i] = all_spfu(as[i], ls[i], k);
            tuples = sat_mul(tuples, per[i].size());
        }
        if (tuples > 5'000'000)
            throw Error(Errc::ResourceCapExceeded, "too many tuples of maps");
        std::vector<std::size_t> at(n, 0);
        std::vector<std::vector<Vertex>> ps(n);
        while (true) {
            for (std::size_t i = 0; i < n; ++i)
                ps[i] = per[i][at[i]];
            sys.constraints.push_back(pro_constraint(space, as, ls, k, ps, edges));
            std::size_t i = n;
            while (i > 0 && ++at[i - 1] == per[i - 1].size())
                at[--i] = 0;
            if (i == 0)
                break;
        }
    } else {
        const int big_a = static_cast<int>(product_of(as));
        const int big_l = std::accumulate(ls.begin(), ls.end(), 0);
        if (count_spfu(big_a, big_l, k) > 5'000'000)
            throw Error(Errc::ResourceCapExceeded, "too many maps with the block property");
        for_each_spfu(big_a, big_l, k, [&](const std::vector<Vertex>& p) {
            sys.constraints.push_back(pro_constraint(space, as, ls, k, hjpro_derive(p, as, ls, k), edges));
            return true;
        });
    }
    return sys;
}

bool hjpro_witness_ok(const std::vector<int>& as, const std::vector<int>& ls, int k, std::span<const int> coloring,
                      const std::vector<std::vector<Vertex>>& ps)
{
    require_pro(as, ls, k);
    if (ps.size() != as.size())
        throw Error(Errc::InvalidArgument, "one map per component");
    for (std::size_t i = 0; i < as.size(); ++i)
        if (!check_spfu(ps[i], as[i], ls[i], k))
            return false;
    TupleSpace space = pro_space(as, ls, k);
    if (coloring.size() != space.size())
        throw Error(Errc::InvalidArgument, "one colour per tuple");
    std::uint64_t edges = 0;
    for (const auto& g : pro_constraint(space, as, ls, k, ps, edges))
        for (int item : g)
            if (coloring[static_cast<std::size_t>(item)] != coloring[static_cast<std::size_t>(g.front())])
                return false;
    return true;
}

HjproResult hjpro_search(const std::vector<int>& as, const std::vector<int>& ls, int b, int max_k, HjproMode mode,
                         std::uint64_t max_nodes)
{
    require_pro(as, ls, 1);
    if (b < 1)
        throw Error(Errc::InvalidArgument, "need at least one colour");
    HjproResult res;
    for (int k = 1; k <= max_k; ++k) {
        auto sys = hjpro_system(as, ls, k, mode);
        auto r = solve(sys, b, max_nodes);
        res.verdicts.push_back(r.verdict);
        res.items = static_cast<std::uint64_t>(sys.items);
        res.constraints = sys.constraints.size();
        res.stats = r.stats;
        if (r.verdict == Verdict::CapExceeded)
            return res;
        if (r.verdict == Verdict::Holds) {
            res.k = k;
            return res;
        }
    }
    return res;
}

// ---------------------------------------------------------------- transfer

TransferAnalysis::TransferAnalysis(const OrderedForest& s, int k, int a)
    : tensor_(s, LinearOrder{k}), a_(a), domain_(oplus(LinearOrder{std::max(a, 1)}, tensor_.forest())),
      codomain_(oplus(LinearOrder{std::max(a, 1)}, s))
{
    if (a < 1)
        throw Error(Errc::EmptyLinearOrder, "A must be non-empty");
    for (Vertex v = 0; v < tensor_.size(); ++v) {
        const auto& pt = tensor_.point(v);
        const auto path = level_path(s, pt.s);
        std::vector<Vertex> pre;
        for (std::size_t jj = 0; jj + 1 < path.size(); ++jj)
            pre.push_back(tensor_.vertex_of(
                TensorPoint{path[jj], std::vector<int>(pt.t.begin(), pt.t.begin() + static_cast<std::ptrdiff_t>(jj) + 1)}));
        prefix_.push_back(std::move(pre));
    }
    for (Vertex sv = 0; sv < s.size(); ++sv) {
        const Vertex par = s.parent(sv);
        std::vector<int> row;
        if (par == kNone)
            row.push_back(tensor_.q_index(QPoint{sv, {}}));
        else
            for (Vertex w = 0; w < tensor_.size(); ++w)
                row.push_back(tensor_.point(w).s == par ? tensor_.q_index(QPoint{sv, tensor_.point(w).t}) : -1);
        q_under_.push_back(std::move(row));
    }
}

void TransferAnalysis::set_p(std::vector<Vertex> p)
{
    const int k = tensor_.alphabet();
    const int q = tensor_.q_size();
    if (static_cast<int>(p.size()) != a_ + q * k)
        throw Error(Errc::InvalidArgument, "p must be defined on A⊕(Q×I)");
    if (!check_spfu(p, a_, q, k))
        throw Error(Errc::SpfuViolated, "p lacks the block property");
    p_ = std::move(p);

    const OrderedForest& s = tensor_.base();
    const int n = tensor_.size();
    std::vector<char> leading(static_cast<std::size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v) {
        const int qv = tensor_.q_of(v);
        if (p_at(v) != a_ + qv)
            continue;
        bool first = true;
        for (int i = 0; i < tensor_.last_of(v) && first; ++i)
            first = p_[static_cast<std::size_t>(a_ + qv * k + i)] != a_ + qv;
        leading[static_cast<std::size_t>(v)] = first;
    }
    flags_.assign(static_cast<std::size_t>(n), PointClass{});
    for (Vertex v = 0; v < n; ++v) {
        bool proper = true;
        for (Vertex w : prefix_[static_cast<std::size_t>(v)])
            proper = proper && leading[static_cast<std::size_t>(w)];
        auto& f = flags_[static_cast<std::size_t>(v)];
        f.leading = leading[static_cast<std::size_t>(v)];
        f.good = proper && p_at(v) == a_ + tensor_.q_of(v);
        f.very_good = proper && f.leading;
    }

    // t_s by recursion along ⊑: extend t_{s'} by the least i hitting (s, t_{s'}).
    j_.assign(static_cast<std::size_t>(s.size()), kNone);
    for (Vertex sv = 0; sv < s.size(); ++sv) {
        const Vertex par = s.parent(sv);
        const auto& row = q_under_[static_cast<std::size_t>(sv)];
        const int qs = par == kNone ? row[0] : row[static_cast<std::size_t>(j_[static_cast<std::size_t>(par)])];
        for (int i = 0; i < k; ++i)
            if (p_[static_cast<std::size_t>(a_ + qs * k + i)] == a_ + qs) {
                j_[static_cast<std::size_t>(sv)] = tensor_.identify(qs, i);
                break;
            }
        if (j_[static_cast<std::size_t>(sv)] == kNone)
            throw std::logic_error("TransferAnalysis: a block without a hit");
    }

    pi_.assign(static_cast<std::size_t>(a_ + n), 0);
    std::iota(pi_.begin(), pi_.begin() + a_, 0);
    for (Vertex v = 0; v < n; ++v) {
        const Vertex pv = p_at(v);
        Vertex& out = pi_[static_cast<std::size_t>(a_ + v)];
        if (pv < a_)
            out = pv;
        else if (flags_[static_cast<std::size_t>(v)].good)
            out = a_ + tensor_.point(v).s;
        else
            out = 0;
    }
}

TreeMap TransferAnalysis::j() const
{
    std::vector<Vertex> vals(static_cast<std::size_t>(a_ + tensor_.base().size()));
    std::iota(vals.begin(), vals.begin() + a_, 0);
    for (Vertex sv = 0; sv < tensor_.base().size(); ++sv)
        vals[static_cast<std::size_t>(a_ + sv)] = a_ + j_[static_cast<std::size_t>(sv)];
    return TreeMap(codomain_, domain_, std::move(vals));
}

std::vector<Vertex> TransferAnalysis::build_r(Vertex v, std::span<const Vertex> rho) const
{
    const OrderedForest& s = tensor_.base();
    s.require_vertex(v);
    if (rho.size() != static_cast<std::size_t>(a_ + v + 1))
        throw Error(Errc::InvalidArgument, "ρ must be defined on A⊕S^v");
    for (int z = 0; z < a_; ++z)
        if (rho[static_cast<std::size_t>(z)] != z)
            throw Error(Errc::NotRigid, "ρ must be the identity on A");
    if (rho.back() != a_)
        throw Error(Errc::NotSealed, "ρ must send v to the top");
    for (Vertex sv = 0; sv < v; ++sv)
        if (rho[static_cast<std::size_t>(a_ + sv)] < 0 || rho[static_cast<std::size_t>(a_ + sv)] >= a_)
            throw Error(Errc::NotSealed, "ρ must send S^v below v into A");
    const int q = tensor_.q_size();
    std::vector<Vertex> r(static_cast<std::size_t>(a_ + q), 0);
    std::iota(r.begin(), r.begin() + a_, 0);
    // r(s,u) = ρ(s) when (s,u⌢i) is very good for some i, else min A.
    // ρ(s) is undefined for s outside S^v; such entries stay kNone.
    for (Vertex sv = 0; sv < s.size(); ++sv)
        r[static_cast<std::size_t>(a_ + x_of(sv))] = sv <= v ? rho[static_cast<std::size_t>(a_ + sv)] : kNone;
    return r;
}

std::vector<Vertex> TransferAnalysis::build_r_unsealed(std::span<const Vertex> rho) const
{
    const OrderedForest& s = tensor_.base();
    if (rho.size() != static_cast<std::size_t>(a_ + s.size()))
        throw Error(Errc::InvalidArgument, "ρ must be defined on A⊕S");
    for (std::size_t z = 0; z < rho.size(); ++z)
        if (static_cast<int>(z) < a_ ? rho[z] != static_cast<Vertex>(z) : (rho[z] < 0 || rho[z] >= a_))
            throw Error(Errc::InvalidArgument, "ρ must be the identity on A with values in A");
    std::vector<Vertex> r(static_cast<std::size_t>(a_ + tensor_.q_size()), 0);
    std::iota(r.begin(), r.begin() + a_, 0);
    for (Vertex sv = 0; sv < s.size(); ++sv)
        r[static_cast<std::size_t>(a_ + x_of(sv))] = rho[static_cast<std::size_t>(a_ + sv)];
    return r;
}

namespace {

bool same_on_prefix(int a, int end, const std::vector<Vertex>& r, const std::vector<Vertex>& pi,
                    std::span<const Vertex> rho, const TransferAnalysis& an)
{
    for (int z = 0; z <= end; ++z) {
        Vertex pz = z < a ? z : an.p_at(z - a);
        Vertex lhs = pz < a ? pz : r[static_cast<std::size_t>(a + (pz - a))];
        Vertex pv = pi[static_cast<std::size_t>(z)];
        if (lhs == kNone || pv >= static_cast<Vertex>(rho.size()))
            return false;
        if (lhs != rho[static_cast<std::size_t>(pv)])
            return false;
    }
    return true;
}

}  // namespace

bool TransferAnalysis::transfer_holds(Vertex v, std::span<const Vertex> rho) const
{
    auto r = build_r(v, rho);
    return same_on_prefix(a_, a_ + j_vertex(v), r, pi_, rho, *this);
}

bool TransferAnalysis::transfer_unsealed_holds(std::span<const Vertex> rho) const
{
    auto r = build_r_unsealed(rho);
    return same_on_prefix(a_, a_ + tensor_.size() - 1, r, pi_, rho, *this);
}

std::string TransferAnalysis::check_structure() const
{
    const OrderedForest& s = tensor_.base();
    const int n = tensor_.size();
    for (Vertex sv = 0; sv < s.size(); ++sv) {
        int count = 0;
        for (Vertex v = 0; v < n; ++v)
            if (tensor_.point(v).s == sv && flags_[static_cast<std::size_t>(v)].very_good) {
                ++count;
                if (v != j_vertex(sv))
                    return "very good point differs from (s, t_s)";
            }
        if (count != 1)
            return "t_s is not unique";
        const Vertex par = s.parent(sv);
        if (par != kNone) {
            const auto& ts = t_of(sv);
            const auto& tp = t_of(par);
            if (!std::equal(tp.begin(), tp.end(), ts.begin()))
                return "t_s does not extend t_{s'}";
        }
        // min p⁻¹(x_s) in the tree order is (s, t_s)
        for (Vertex v = 0; v < n; ++v)
            if (p_at(v) == a_ + x_of(sv)) {
                if (v != j_vertex(sv))
                    return "tree-order minimum of p⁻¹(x_s) is not (s, t_s)";
                break;
            }
    }
    for (Vertex v = 0; v < n; ++v) {
        if (!flags_[static_cast<std::size_t>(v)].good)
            continue;
        const auto& pt = tensor_.point(v);
        const auto& ts = t_of(pt.s);
        if (!std::equal(pt.t.begin(), pt.t.end() - 1, ts.begin()))
            return "good point off the branch of t_s";
    }
    TreeMap pm = pi();
    TreeMap jm = j();
    auto kind = classify(pm, a_);
    if (!kind.a_rigid)
        return "π_p is not an A-rigid surjection";
    if (rigid_injection_values(pm) != jm.values())
        return "the injection of π_p is not j_p";
    for (Vertex z = 0; z < domain_.size(); ++z)
        if (!domain_.precedes(jm(pm(z)), z))
            return "j_p(π_p(w)) is not below w";
    return {};
}

namespace {

std::string describe(const std::vector<Vertex>& p)
{
    std::ostringstream os;
    os << "p = [";
    for (std::size_t i = 0; i < p.size(); ++i)
        os << (i ? "," : "") << p[i];
    os << "]";
    return os.str();
}

void check_one(TransferAnalysis& an, TransferCase& tc)
{
    const OrderedForest& s = an.tensor().base();
    const int a = an.a();
    auto fail = [&](const std::string& what) {
        if (tc.violations++ == 0)
            tc.first_violation = what + " at " + describe(an.p());
    };
    ++tc.maps;
    std::string msg = an.check_structure();
    if (!msg.empty())
        fail(msg);
    std::vector<Vertex> rho;
    for (Vertex v = 0; v < s.size(); ++v)
        for_each_word(v, a, [&](const std::vector<Vertex>& below) {
            rho.assign(static_cast<std::size_t>(a), 0);
            std::iota(rho.begin(), rho.end(), 0);
            rho.insert(rho.end(), below.begin(), below.end());
            rho.push_back(a);
            ++tc.rho_checks;
            if (!an.transfer_holds(v, rho))
                fail("sealed transfer fails for v = " + std::to_string(v));
        });
    for_each_word(s.size(), a, [&](const std::vector<Vertex>& vals) {
        rho.assign(static_cast<std::size_t>(a), 0);
        std::iota(rho.begin(), rho.end(), 0);
        rho.insert(rho.end(), vals.begin(), vals.end());
        ++tc.rho_checks;
        if (!an.transfer_unsealed_holds(rho))
            fail("unsealed transfer fails");
    });
}

}  // namespace

TransferCase verify_transfer(const OrderedForest& s, int k, int a, std::uint64_t literal_limit)
{
    TransferAnalysis an(s, k, a);
    TransferCase tc;
    tc.s = s;
    tc.k = k;
    tc.a = a;
    const int q = an.tensor().q_size();
    // With |A| = 1 every hit pattern is a single map, so both modes coincide.
    tc.literal = a == 1 || count_spfu(a, q, k) <= literal_limit;
    if (tc.literal) {
        for_each_spfu(a, q, k, [&](const std::vector<Vertex>& p) {
            an.set_p(p);
            check_one(an, tc);
            return true;
        });
        return tc;
    }
    // One representative per hit pattern; A-valued positions cycle through A.
    const int masks = (1 << k) - 1;
    std::vector<int> pat(static_cast<std::size_t>(q), 1);
    std::vector<Vertex> p(static_cast<std::size_t>(a + q * k));
    while (true) {
        std::iota(p.begin(), p.begin() + a, 0);
        for (int x = 0; x < q; ++x)
            for (int i = 0; i < k; ++i) {
                const int z = a + x * k + i;
                p[static_cast<std::size_t>(z)] = (pat[static_cast<std::size_t>(x)] >> i & 1) ? a + x : z % a;
            }
        an.set_p(p);
        check_one(an, tc);
        int pos = q - 1;
        while (pos >= 0 && pat[static_cast<std::size_t>(pos)] == masks)
            pat[static_cast<std::size_t>(pos--)] = 1;
        if (pos < 0)
            break;
        ++pat[static_cast<std::size_t>(pos)];
    }
    return tc;
}

std::vector<TransferCase> verify_transfer_all(int max_vertices, int max_k, int max_a, std::uint64_t literal_limit)
{
    std::vector<TransferCase> out;
    for (int n = 0; n <= max_vertices; ++n)
        for (const auto& s : enum_forests(n))
            for (int k = 1; k <= max_k; ++k)
                for (int a = 1; a <= max_a; ++a)
                    out.push_back(verify_transfer(s, k, a, literal_limit));
    return out;
}

// ---------------------------------------------------------------- (LP)

namespace {

struct RigidList {
    std::vector<std::vector<Vertex>> maps;
    std::vector<std::vector<Vertex>> injections;
};

RigidList a_rigid_maps(const OrderedTree& dom, const OrderedTree& cod, int a)
{
    RigidList out;
    for_each_rigid_surjection(dom, cod, RigidOptions{false, a}, [&](const std::vector<Vertex>& f, const std::vector<Vertex>& e) {
        out.maps.push_back(f);
        out.injections.push_back(e);
        if (out.maps.size() > 200'000)
            throw Error(Errc::ResourceCapExceeded, "too many A-rigid surjections");
    });
    return out;
}

// The s-tuples: s_1 sealed on A_1⊕T_1^w (values over a+w+1 vertices, top = B_1),
// s_i on T_i with values in B_i (A part given by r_i).
struct STuples {
    std::vector<std::pair<Vertex, std::vector<Vertex>>> first;  // (w, full values)
    std::vector<std::vector<std::vector<Vertex>>> others;       // per i >= 1: values on T_i
};

STuples s_tuples(const std::vector<int>& as, const std::vector<std::vector<Vertex>>& rs,
                 const std::vector<OrderedForest>& ts, const std::vector<int>& bs)
{
    STuples st;
    for (Vertex w = 0; w < ts[0].size(); ++w)
        for_each_word(w, bs[0], [&](const std::vector<Vertex>& below) {
            std::vector<Vertex> full(rs[0].begin(), rs[0].end());
            full.insert(full.end(), below.begin(), below.end());
            full.push_back(bs[0]);
            st.first.emplace_back(w, std::move(full));
        });
    st.others.resize(as.size());
    for (std::size_t i = 1; i < as.size(); ++i)
        for_each_word(ts[i].size(), bs[i], [&](const std::vector<Vertex>& vals) { st.others[i].push_back(vals); });
    return st;
}

// Tuple items of (s_1∘t_1^w, s_2∘t_2, ...). orders[i][pos] is the vertex of
// V_i listed at position pos of component i (the identity for i = 0).
struct Encoder {
    const TupleSpace& space;
    const std::vector<int>& as;
    const std::vector<std::vector<Vertex>>& rs;
    const std::vector<std::vector<Vertex>>& orders;

    std::uint64_t first(const std::vector<Vertex>& t, const std::vector<Vertex>& e, Vertex w,
                        const std::vector<Vertex>& s1) const
    {
        const int a = as[0];
        const int y = e[static_cast<std::size_t>(a + w)] - a;
        std::vector<Vertex> below(static_cast<std::size_t>(y));
        for (int z = 0; z < y; ++z) {
            Vertex v = t[static_cast<std::size_t>(a + z)];
            below[static_cast<std::size_t>(z)] = v < a ? rs[0][static_cast<std::size_t>(v)] : s1.at(static_cast<std::size_t>(v));
        }
        return space.first_index(below);
    }

    std::uint64_t other(std::size_t i, const std::vector<Vertex>& t, const std::vector<Vertex>& si) const
    {
        const int a = as[i];
        const auto& ord = orders[i];
        std::vector<Vertex> vals(ord.size());
        for (std::size_t pos = 0; pos < ord.size(); ++pos) {
            Vertex v = t[static_cast<std::size_t>(a + ord[pos])];
            vals[pos] = v < a ? rs[i][static_cast<std::size_t>(v)] : si[static_cast<std::size_t>(v - a)];
        }
        return space.other_index(i, vals);
    }
};

// Every item (s_1∘t_1^w, s_2∘t_2, ...) over all s-tuples, for fixed t_i.
Group lp_group(const Encoder& enc, const STuples& st, const std::vector<const std::vector<Vertex>*>& t,
               const std::vector<Vertex>& e1)
{
    const std::size_t n = t.size();
    std::vector<std::vector<std::uint64_t>> lists(n);
    for (const auto& [w, s1] : st.first)
        lists[0].push_back(enc.first(*t[0], e1, w, s1));
    for (std::size_t i = 1; i < n; ++i)
        for (const auto& si : st.others[i])
            lists[i].push_back(enc.other(i, *t[i], si));
    Group g;
    std::vector<std::size_t> at(n, 0);
    std::vector<std::uint64_t> parts(n);
    if (std::any_of(lists.begin(), lists.end(), [](const auto& l) { return l.empty(); }))
        return g;
    while (true) {
        for (std::size_t i = 0; i < n; ++i)
            parts[i] = lists[i][at[i]];
        g.push_back(static_cast<int>(enc.space.combine(parts)));
        std::size_t i = n;
        while (i > 0 && ++at[i - 1] == lists[i - 1].size())
            at[--i] = 0;
        if (i == 0)
            break;
    }
    return g;
}

std::vector<int> check_rs(const std::vector<int>& as, const std::vector<std::vector<Vertex>>& rs)
{
    std::vector<int> bs;
    for (std::size_t i = 0; i < as.size(); ++i) {
        const auto& r = rs[i];
        if (as[i] < 1)
            throw Error(Errc::EmptyLinearOrder, "A_i must be non-empty");
        if (static_cast<int>(r.size()) != as[i] || r.front() != 0)
            throw Error(Errc::InvalidArgument, "r_i must be defined on A_i and start at 0");
        for (std::size_t z = 1; z < r.size(); ++z)
            if (r[z] != r[z - 1] && r[z] != r[z - 1] + 1)
                throw Error(Errc::NotRigid, "r_i must be a non-decreasing surjection of chains");
        bs.push_back(r.back() + 1);
    }
    return bs;
}

}  // namespace

Verdict lp_statement(const std::vector<int>& as, const std::vector<std::vector<Vertex>>& rs,
                     const std::vector<OrderedForest>& ts, const std::vector<OrderedForest>& vs, int b,
                     std::uint64_t max_nodes)
{
    const std::size_t n = as.size();
    if (n == 0 || rs.size() != n || ts.size() != n || vs.size() != n)
        throw Error(Errc::InvalidArgument, "one A_i, r_i, T_i, V_i per component");
    if (b < 1)
        throw Error(Errc::InvalidArgument, "need at least one colour");
    auto bs = check_rs(as, rs);
    std::vector<int> lengths;
    std::vector<std::vector<Vertex>> orders(n);
    for (std::size_t i = 0; i < n; ++i) {
        lengths.push_back(vs[i].size());
        orders[i].resize(static_cast<std::size_t>(vs[i].size()));
        std::iota(orders[i].begin(), orders[i].end(), 0);
    }
    TupleSpace space(bs, lengths);
    if (space.size() > kItemCap)
        throw Error(Errc::ResourceCapExceeded, "too many tuples");
    Encoder enc{space, as, rs, orders};
    STuples st = s_tuples(as, rs, ts, bs);

    std::vector<RigidList> per(n);
    std::uint64_t tuples = 1;
    for (std::size_t i = 0; i < n; ++i) {
        per[i] = a_rigid_maps(oplus(LinearOrder{as[i]}, vs[i]), oplus(LinearOrder{as[i]}, ts[i]), as[i]);
        tuples = sat_mul(tuples, per[i].maps.size());
    }
    ConstraintSystem sys;
    sys.items = static_cast<int>(space.size());
    if (tuples == 0)
        return solve(sys, b, max_nodes).verdict;
    if (tuples > 5'000'000)
        throw Error(Errc::ResourceCapExceeded, "too many tuples of maps");
    std::uint64_t edges = 0;
    std::vector<std::size_t> at(n, 0);
    std::vector<const std::vector<Vertex>*> t(n);
    while (true) {
        for (std::size_t i = 0; i < n; ++i)
            t[i] = &per[i].maps[at[i]];
        Group g = lp_group(enc, st, t, per[0].injections[at[0]]);
        add_edges(edges, g.size());
        sys.constraints.push_back({std::move(g)});
        std::size_t i = n;
        while (i > 0 && ++at[i - 1] == per[i - 1].maps.size())
            at[--i] = 0;
        if (i == 0)
            break;
    }
    return solve(sys, b, max_nodes).verdict;
}

Verdict lp_statement_reduced(const std::vector<int>& as, const std::vector<OrderedForest>& ts,
                             const std::vector<OrderedForest>& vs, int b, std::uint64_t max_nodes)
{
    std::vector<std::vector<Vertex>> rs;
    for (int a : as) {
        if (a < 1)
            throw Error(Errc::EmptyLinearOrder, "A_i must be non-empty");
        rs.emplace_back(static_cast<std::size_t>(a));
        std::iota(rs.back().begin(), rs.back().end(), 0);
    }
    return lp_statement(as, rs, ts, vs, b, max_nodes);
}

LpPipelineResult lp_pipeline(const std::vector<int>& as, const std::vector<OrderedForest>& ts, int b,
                             const LpPipelineLimits& limits)
{
    const std::size_t n = as.size();
    if (n == 0 || ts.size() != n)
        throw Error(Errc::InvalidArgument, "one A_i and one T_i per component");
    if (ts[0].empty())
        throw Error(Errc::InvalidArgument, "T_1 must be non-empty");
    if (b < 1)
        throw Error(Errc::InvalidArgument, "need at least one colour");
    for (int a : as)
        if (a < 1)
            throw Error(Errc::EmptyLinearOrder, "A_i must be non-empty");

    LpPipelineResult res;
    res.t1_prime = frco_search(ts[0], b, limits.max_frco_size, limits.max_nodes).forest;
    std::vector<OrderedForest> bases = ts;
    bases[0] = res.t1_prime;

    // |I| is the least size at which HJpro holds for L_i = Q(·, I).
    std::vector<int> ls;
    for (int k = 1; k <= limits.max_k && res.k == 0; ++k) {
        if (!Tensor(res.t1_prime, LinearOrder{k}).orders_agree())
            throw Error(Errc::InvalidArgument, "T_1'⊗I does not carry the Q×I order; need height <= 1 or |I| = 1");
        ls.clear();
        for (const auto& f : bases)
            ls.push_back(Tensor(f, LinearOrder{k}).q_size());
        auto r = solve(hjpro_system(as, ls, k, HjproMode::Direct), b, limits.max_nodes);
        if (r.verdict == Verdict::CapExceeded)
            throw Error(Errc::ResourceCapExceeded, "node cap hit in the product statement");
        if (r.verdict == Verdict::Holds)
            res.k = k;
    }
    if (res.k == 0)
        throw Error(Errc::NotFoundWithinBound, "no |I| within the bound");
    const int k = res.k;

    std::vector<TransferAnalysis> an;
    std::vector<std::vector<Vertex>> orders(n);
    for (std::size_t i = 0; i < n; ++i) {
        an.emplace_back(bases[i], k, as[i]);
        const Tensor& tn = an.back().tensor();
        res.vs.push_back(tn.forest());
        for (int pos = 0; pos < tn.size(); ++pos)
            orders[i].push_back(tn.at_chain_position(pos));
    }

    TupleSpace space = pro_space(as, ls, k);
    res.items = space.size();
    std::vector<std::vector<Vertex>> ids;
    for (int a : as) {
        ids.emplace_back(static_cast<std::size_t>(a));
        std::iota(ids.back().begin(), ids.back().end(), 0);
    }
    Encoder enc{space, as, ids, orders};
    STuples st = s_tuples(as, ids, ts, as);

    std::vector<std::vector<std::vector<Vertex>>> per(n);
    for (std::size_t i = 0; i < n; ++i)
        per[i] = all_spfu(as[i], ls[i], k);

    const std::uint64_t total = sat_pow(static_cast<std::uint64_t>(b), static_cast<int>(space.size()));
    res.exhaustive = total <= limits.max_colorings;
    const std::uint64_t rounds = res.exhaustive ? total : limits.samples;
    std::vector<int> coloring(static_cast<std::size_t>(space.size()), 0);
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    const OrderedTree t1a = oplus(LinearOrder{as[0]}, ts[0]);
    const OrderedTree t1pa = oplus(LinearOrder{as[0]}, res.t1_prime);

    for (std::uint64_t round = 0; round < rounds; ++round) {
        if (res.exhaustive) {
            std::uint64_t c = round;
            for (std::size_t j = coloring.size(); j-- > 0;) {
                coloring[j] = static_cast<int>(c % static_cast<std::uint64_t>(b));
                c /= static_cast<std::uint64_t>(b);
            }
        } else {
            for (auto& c : coloring) {
                state = state * 6364136223846793005ull + 1442695040888963407ull;
                c = static_cast<int>((state >> 33) % static_cast<std::uint64_t>(b));
            }
        }
        ++res.colorings;

        // p_i from the product statement.
        std::vector<std::vector<Vertex>> ps(n);
        std::vector<std::size_t> at(n, 0);
        bool found = false;
        while (!found) {
            for (std::size_t i = 0; i < n; ++i)
                ps[i] = per[i][at[i]];
            found = hjpro_witness_ok(as, ls, k, coloring, ps);
            if (found)
                break;
            std::size_t i = n;
            while (i > 0 && ++at[i - 1] == per[i - 1].size())
                at[--i] = 0;
            if (i == 0)
                break;
        }
        if (!found)
            throw std::logic_error("lp_pipeline: product statement holds but no p_i found");
        for (std::size_t i = 0; i < n; ++i)
            an[i].set_p(ps[i]);

        // Colour v ∈ T_1' by the tuple (ρ_1∘π_1^v, ρ_2∘π_2, ...); it must not
        // depend on the ρ_i.
        std::vector<const std::vector<Vertex>*> pis(n);
        for (std::size_t i = 0; i < n; ++i)
            pis[i] = &an[i].pi_values();
        const std::vector<Vertex> e_pi = an[0].j().values();
        std::vector<int> chi(static_cast<std::size_t>(res.t1_prime.size()), -1);
        bool consistent = true;
        {
            STuples rho = s_tuples(as, ids, bases, as);
            for (const auto& [w, s1] : rho.first) {
                STuples one;
                one.first.emplace_back(w, s1);
                one.others = rho.others;
                for (int item : lp_group(enc, one, pis, e_pi)) {
                    int c = coloring[static_cast<std::size_t>(item)];
                    int& slot = chi[static_cast<std::size_t>(w)];
                    if (slot == -1)
                        slot = c;
                    else if (slot != c)
                        consistent = false;
                }
            }
        }
        if (!consistent)
            throw std::logic_error("lp_pipeline: colour of v depends on ρ");

        auto emb = mono_embedding(ts[0], res.t1_prime, chi);
        if (!emb)
            throw std::logic_error("lp_pipeline: no monochromatic copy of T_1");
        std::vector<Vertex> ev(static_cast<std::size_t>(t1a.size()));
        std::iota(ev.begin(), ev.begin() + as[0], 0);
        for (std::size_t v = 0; v < emb->size(); ++v)
            ev[static_cast<std::size_t>(as[0]) + v] = as[0] + (*emb)[v];
        TreeMap q = rigid_from_embedding(TreeMap(t1a, t1pa, ev));

        std::vector<TreeMap> t;
        t.push_back(compose(q, an[0].pi()));
        for (std::size_t i = 1; i < n; ++i)
            t.push_back(an[i].pi());
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i)
            ok = ok && classify(t[i], as[i]).a_rigid;
        if (ok) {
            std::vector<const std::vector<Vertex>*> tv(n);
            for (std::size_t i = 0; i < n; ++i)
                tv[i] = &t[i].values();
            Group g = lp_group(enc, st, tv, rigid_injection_values(t[0]));
            for (int item : g)
                ok = ok && coloring[static_cast<std::size_t>(item)] == coloring[static_cast<std::size_t>(g.front())];
        }
        if (ok)
            ++res.verified;
        if (round == 0)
            res.first_t = t;
    }
    return res;
}

}  // namespace ramsey
