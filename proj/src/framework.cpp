#include "ramsey/framework.hpp"

#include <algorithm>
#include <set>

#include "ramsey/enumeration.hpp"
#include "ramsey/error.hpp"

namespace ramsey {

namespace {

std::uint64_t pair_key(int a, int b) { return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b); }

void note(AxiomReport& r, const Space& space, std::initializer_list<int> idx, std::string detail)
{
    ++r.violations;
    if (r.examples.size() >= 5)
        return;
    Violation v{r.axiom, {}, std::move(detail)};
    for (int i : idx)
        v.elements.push_back(space.element(i));
    r.examples.push_back(std::move(v));
}

}  // namespace

Space::Space(int bound) : Space(enum_trees_up_to(bound)) {}

Space::Space(std::vector<OrderedTree> ambients) : ambients_(std::move(ambients)), truncation_(&Space::standard_truncation)
{
    build();
}

void Space::build()
{
    const auto na = ambients_.size();
    std::vector<std::vector<OrderedTree>> cuts(na);
    for (std::size_t k = 0; k < na; ++k)
        for (Vertex c = 0; c < ambients_[k].size(); ++c)
            cuts[k].push_back(initial_subtree(ambients_[k], c).tree);
    by_dom_.assign(na, {});
    by_cod_.assign(na, {});
    for (std::size_t k = 0; k < na; ++k) {
        by_dom_[k].resize(static_cast<std::size_t>(ambients_[k].size()));
        by_cod_[k].resize(static_cast<std::size_t>(ambients_[k].size()));
    }
    for (std::size_t k = 0; k < na; ++k)
        for (Vertex c = 0; c < ambients_[k].size(); ++c)
            for (std::size_t m = 0; m < na; ++m)
                for (Vertex d = 0; d < ambients_[m].size(); ++d)
                    for_each_rigid_surjection(cuts[k][static_cast<std::size_t>(c)], cuts[m][static_cast<std::size_t>(d)], {.sealed = true},
                                              [&](const std::vector<Vertex>& f, const std::vector<Vertex>& e) {
                                                  int id = static_cast<int>(elements_.size());
                                                  elements_.push_back({static_cast<int>(k), c, static_cast<int>(m), d, f});
                                                  injections_.push_back(e);
                                                  index_.emplace(elements_.back(), id);
                                                  by_dom_[k][static_cast<std::size_t>(c)].push_back(id);
                                                  by_cod_[m][static_cast<std::size_t>(d)].push_back(id);
                                              });
    trunc_cache_.assign(elements_.size(), -2);
}

int Space::index_of(const DomainElement& e) const
{
    auto it = index_.find(e);
    return it == index_.end() ? -1 : it->second;
}

DomainElement Space::make(int dom_ambient, Vertex dom_cut, int cod_ambient, Vertex cod_cut, std::vector<Vertex> values) const
{
    if (dom_ambient < 0 || cod_ambient < 0 || static_cast<std::size_t>(dom_ambient) >= ambients_.size() ||
        static_cast<std::size_t>(cod_ambient) >= ambients_.size())
        throw Error(Errc::VertexOutOfRange, "unknown ambient tree");
    ambient(dom_ambient).require_vertex(dom_cut);
    ambient(cod_ambient).require_vertex(cod_cut);
    DomainElement e{dom_ambient, dom_cut, cod_ambient, cod_cut, std::move(values)};
    auto m = as_map(e);
    if (!is_rigid(m))
        throw Error(Errc::NotRigid, "element is not a rigid surjection");
    if (!is_sealed(m))
        throw Error(Errc::NotSealed, "element is not sealed");
    return e;
}

TreeMap Space::as_map(const DomainElement& e) const
{
    return TreeMap(initial_subtree(ambient(e.dom_ambient), e.dom_cut).tree, initial_subtree(ambient(e.cod_ambient), e.cod_cut).tree, e.values);
}

bool Space::composable(const DomainElement& g, const DomainElement& f) const noexcept
{
    return f.dom_ambient == g.cod_ambient && f.dom_cut <= g.cod_cut;
}

DomainElement Space::mul(const DomainElement& g, const DomainElement& f) const
{
    if (!composable(g, f))
        throw Error(Errc::NotComposable, "dom(f) is not an initial subtree of cod(g)");
    int gi = index_of(g);
    auto j = gi >= 0 ? injections_[static_cast<std::size_t>(gi)] : rigid_injection_values(as_map(g));
    if (j.empty())
        throw Error(Errc::NotRigid, "g is not a rigid surjection");
    const Vertex top = j[static_cast<std::size_t>(f.dom_cut)];
    DomainElement out{g.dom_ambient, top, f.cod_ambient, f.cod_cut, {}};
    out.values.reserve(static_cast<std::size_t>(top) + 1);
    for (Vertex x = 0; x <= top; ++x)
        out.values.push_back(f.values[static_cast<std::size_t>(g.values[static_cast<std::size_t>(x)])]);
    return out;
}

DomainElement Space::standard_truncation(const Space& space, const DomainElement& f)
{
    if (f.cod_cut == 0)
        return f;
    const Vertex v = f.cod_cut - 1;
    int fi = space.index_of(f);
    auto i = fi >= 0 ? space.injections_[static_cast<std::size_t>(fi)] : rigid_injection_values(space.as_map(f));
    const Vertex top = i[static_cast<std::size_t>(v)];
    return {f.dom_ambient, top, f.cod_ambient, v, std::vector<Vertex>(f.values.begin(), f.values.begin() + top + 1)};
}

DomainElement Space::truncate(const DomainElement& f) const { return truncation_(*this, f); }

void Space::set_truncation(Truncation t)
{
    truncation_ = t ? std::move(t) : Truncation(&Space::standard_truncation);
    trunc_cache_.assign(elements_.size(), -2);
}

int Space::mul_index(int g, int f) const
{
    const auto& eg = element(g);
    const auto& ef = element(f);
    if (!composable(eg, ef))
        return -1;
    auto key = pair_key(g, f);
    auto it = mul_cache_.find(key);
    if (it != mul_cache_.end())
        return it->second;
    int r = index_of(mul(eg, ef));
    if (r < 0)
        throw std::logic_error("product left the space");
    mul_cache_.emplace(key, r);
    return r;
}

int Space::truncate_index(int f) const
{
    int& slot = trunc_cache_[static_cast<std::size_t>(f)];
    if (slot == -2)
        slot = index_of(truncate(element(f)));
    return slot;
}

const std::vector<int>& Space::right_factors(int a) const
{
    const auto& ea = element(a);
    auto key = pair_key(ea.cod_ambient, ea.cod_cut);
    auto it = right_cache_.find(key);
    if (it != right_cache_.end())
        return it->second;
    std::vector<int> out;
    for (Vertex c = 0; c <= ea.cod_cut; ++c)
        for (int x : by_dom_[static_cast<std::size_t>(ea.cod_ambient)][static_cast<std::size_t>(c)])
            out.push_back(x);
    return right_cache_.emplace(key, std::move(out)).first->second;
}

bool Space::extends_index(int b, int a) const
{
    auto key = pair_key(b, a);
    auto it = extends_cache_.find(key);
    if (it != extends_cache_.end())
        return it->second;
    bool ok = true;
    for (int x : right_factors(a)) {
        int bx = mul_index(b, x);
        if (bx < 0 || bx != mul_index(a, x)) {
            ok = false;
            break;
        }
    }
    extends_cache_.emplace(key, ok);
    return ok;
}

bool Space::extends(const DomainElement& b, const DomainElement& a) const
{
    int bi = index_of(b);
    int ai = index_of(a);
    if (bi < 0 || ai < 0)
        throw Error(Errc::InvalidArgument, "extends: element outside the space");
    return extends_index(bi, ai);
}

// ------------------------------------------------------------ families

bool is_family(const Space& space, const std::vector<int>& elements, FamilyKind kind)
{
    if (elements.empty())
        return false;
    const auto& first = space.element(elements.front());
    for (int i : elements) {
        const auto& e = space.element(i);
        if (e.dom_ambient != first.dom_ambient || e.cod_ambient != first.cod_ambient || e.cod_cut != first.cod_cut)
            return false;
    }
    return kind == FamilyKind::P || first.cod_cut == space.ambient(first.cod_ambient).size() - 1;
}

FamilySet make_family(const Space& space, std::vector<int> elements, FamilyKind kind)
{
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (!is_family(space, elements, kind))
        throw Error(Errc::InvalidArgument, "elements do not form a family of the requested kind");
    const auto& first = space.element(elements.front());
    return {kind, std::move(elements), first.dom_ambient, first.cod_ambient, first.cod_cut};
}

std::optional<FamilySet> product(const Space& space, const FamilySet& f1, const FamilySet& f2)
{
    if (f1.kind != FamilyKind::F || f2.kind != FamilyKind::F || f2.d != f1.r)
        return std::nullopt;
    std::vector<int> out;
    for (int a : f1.elements)
        for (int b : f2.elements) {
            int ab = space.mul_index(a, b);
            if (ab < 0)
                throw std::logic_error("F1•F2 defined but some product is not");
            out.push_back(ab);
        }
    return make_family(space, std::move(out), FamilyKind::F);
}

std::optional<FamilySet> act(const Space& space, const FamilySet& f, const FamilySet& p)
{
    if (f.kind != FamilyKind::F || p.d != f.r)
        return std::nullopt;
    std::vector<int> out;
    for (int a : f.elements)
        for (int x : p.elements) {
            int ax = space.mul_index(a, x);
            if (ax < 0)
                throw std::logic_error("F▪P defined but some product is not");
            out.push_back(ax);
        }
    return make_family(space, std::move(out), FamilyKind::P);
}

FamilySet truncate_family(const Space& space, const FamilySet& p)
{
    std::vector<int> out;
    for (int x : p.elements)
        out.push_back(space.truncate_index(x));
    return make_family(space, std::move(out), FamilyKind::P);
}

std::vector<int> fiber(const Space& space, const FamilySet& p, int y)
{
    std::vector<int> out;
    for (int x : p.elements)
        if (space.truncate_index(x) == y)
            out.push_back(x);
    return out;
}

std::vector<int> extenders(const Space& space, const FamilySet& f, int a)
{
    std::vector<int> out;
    for (int g : f.elements)
        if (space.extends_index(g, a))
            out.push_back(g);
    return out;
}

std::vector<FamilySet> sample_F(const Space& space)
{
    const int na = static_cast<int>(space.ambients().size());
    std::vector<std::vector<std::vector<int>>> full(static_cast<std::size_t>(na), std::vector<std::vector<int>>(static_cast<std::size_t>(na)));
    for (int i = 0; i < space.size(); ++i) {
        const auto& e = space.element(i);
        if (e.cod_cut == space.ambient(e.cod_ambient).size() - 1)
            full[static_cast<std::size_t>(e.dom_ambient)][static_cast<std::size_t>(e.cod_ambient)].push_back(i);
    }
    std::vector<FamilySet> out;
    for (int d = 0; d < na; ++d)
        for (int r = 0; r < na; ++r) {
            const auto& all = full[static_cast<std::size_t>(d)][static_cast<std::size_t>(r)];
            if (all.empty())
                continue;
            out.push_back(make_family(space, all, FamilyKind::F));
            if (all.size() > 1)
                for (int i : all)
                    out.push_back(make_family(space, {i}, FamilyKind::F));
        }
    return out;
}

std::vector<FamilySet> sample_P(const Space& space, int pair_limit)
{
    std::map<std::tuple<int, int, Vertex>, std::vector<int>> full;
    for (int i = 0; i < space.size(); ++i) {
        const auto& e = space.element(i);
        full[{e.dom_ambient, e.cod_ambient, e.cod_cut}].push_back(i);
    }
    std::vector<FamilySet> out;
    for (const auto& [key, all] : full) {
        out.push_back(make_family(space, all, FamilyKind::P));
        if (all.size() == 1)
            continue;
        for (int i : all)
            out.push_back(make_family(space, {i}, FamilyKind::P));
        if (all.size() > 2 && static_cast<int>(all.size()) <= pair_limit)
            for (std::size_t a = 0; a < all.size(); ++a)
                for (std::size_t b = a + 1; b < all.size(); ++b)
                    out.push_back(make_family(space, {all[a], all[b]}, FamilyKind::P));
    }
    return out;
}

// ------------------------------------------------------------ axioms

std::vector<AxiomReport> check_space_axioms(const Space& space)
{
    const int n = space.size();
    AxiomReport assoc{"associativity", 0, 0, {}}, ax1{"(i)", 0, 0, {}}, ax2{"(ii)", 0, 0, {}}, ax3{"(iii)", 0, 0, {}};

    // Elements grouped by their domain ambient, for norm comparisons.
    std::map<int, std::vector<int>> by_dom;
    for (int i = 0; i < n; ++i)
        by_dom[space.element(i).dom_ambient].push_back(i);

    for (int a = 0; a < n; ++a) {
        const int da = space.truncate_index(a);
        ++ax2.checked;
        if (da < 0 || !Space::norm_le(space.element(da), space.element(a)))
            note(ax2, space, {a}, "|∂a| is not <= |a|");

        for (int b : space.right_factors(a)) {
            const int ab = space.mul_index(a, b);
            // (i)
            const int db = space.truncate_index(b);
            if (db >= 0) {
                const int a_db = space.mul_index(a, db);
                if (a_db >= 0) {
                    ++ax1.checked;
                    if (space.truncate_index(ab) != a_db)
                        note(ax1, space, {a, b}, "∂(a·b) differs from a·∂b");
                }
            }
            // associativity: a·(b·c) versus (a·b)·c
            for (int c : space.right_factors(b)) {
                const int bc = space.mul_index(b, c);
                const int a_bc = space.mul_index(a, bc);
                const int ab_c = space.mul_index(ab, c);
                if (a_bc >= 0 && ab_c >= 0) {
                    ++assoc.checked;
                    if (a_bc != ab_c)
                        note(assoc, space, {a, b, c}, "a·(b·c) differs from (a·b)·c");
                }
            }
            // (iii) with b in the role of c: every b' with |b'| <= |b|.
            const auto& eb = space.element(b);
            for (int b2 : by_dom[eb.dom_ambient]) {
                if (!Space::norm_le(space.element(b2), eb))
                    continue;
                ++ax3.checked;
                const int ab2 = space.mul_index(a, b2);
                if (ab2 < 0)
                    note(ax3, space, {a, b2, b}, "a·b undefined although |b| <= |c| and a·c is defined");
                else if (!Space::norm_le(space.element(ab2), space.element(ab)))
                    note(ax3, space, {a, b2, b}, "|a·b| is not <= |a·c|");
            }
        }
    }
    return {assoc, ax1, ax2, ax3};
}

std::vector<AxiomReport> check_domain_axioms(const Space& space, const std::vector<FamilySet>& fs, const std::vector<FamilySet>& ps)
{
    AxiomReport pa{"(A)", 0, 0, {}}, pb{"(B)", 0, 0, {}}, pc{"(C)", 0, 0, {}}, lin{"linear", 0, 0, {}}, van{"vanishing", 0, 0, {}}, pw{"pointwise", 0, 0, {}};

    std::map<int, std::vector<std::size_t>> f_by_r;
    for (std::size_t i = 0; i < fs.size(); ++i)
        f_by_r[fs[i].r].push_back(i);

    auto first_of = [&](const FamilySet& s) { return s.elements.front(); };

    // F•G and F▪P are given pointwise and land in F and P respectively.
    for (const auto& g : fs)
        for (std::size_t fi : f_by_r[g.d]) {
            ++pw.checked;
            try {
                auto fg = product(space, fs[fi], g);
                if (!fg || fg->d != fs[fi].d || fg->r != g.r)
                    note(pw, space, {first_of(fs[fi]), first_of(g)}, "F•G has the wrong shape");
            } catch (const std::exception& e) {
                note(pw, space, {first_of(fs[fi]), first_of(g)}, e.what());
            }
        }
    for (const auto& p : ps)
        for (std::size_t fi : f_by_r[p.d]) {
            ++pw.checked;
            try {
                auto fp = act(space, fs[fi], p);
                if (!fp || fp->d != fs[fi].d)
                    note(pw, space, {first_of(fs[fi]), first_of(p)}, "F▪P has the wrong shape");
            } catch (const std::exception& e) {
                note(pw, space, {first_of(fs[fi]), first_of(p)}, e.what());
            }
        }

    for (const auto& p : ps) {
        // (A): F▪(G▪P) defined implies (F•G)▪P defined. G▪P has d = d(G).
        for (std::size_t gi : f_by_r[p.d])
            for (std::size_t fi : f_by_r[fs[gi].d]) {
                ++pa.checked;
                auto fg = product(space, fs[fi], fs[gi]);
                if (!fg || !act(space, *fg, p))
                    note(pa, space, {first_of(fs[fi]), first_of(fs[gi]), first_of(p)}, "(F•G)▪P undefined");
            }

        // (B)
        std::vector<int> dp;
        for (int x : p.elements)
            dp.push_back(space.truncate_index(x));
        ++pb.checked;
        if (std::find(dp.begin(), dp.end(), -1) != dp.end() || !is_family(space, dp, FamilyKind::P))
            note(pb, space, {first_of(p)}, "∂P is not a P-family");
        else {
            auto dfam = make_family(space, dp, FamilyKind::P);
            // (C): F▪∂P defined; the candidate G = F is tried first, then
            // every sampled G with G▪P defined.
            for (std::size_t fi : f_by_r[dfam.d]) {
                ++pc.checked;
                const auto& f = fs[fi];
                auto good = [&](const FamilySet& g) {
                    if (!act(space, g, p))
                        return false;
                    for (int a : f.elements)
                        if (std::none_of(g.elements.begin(), g.elements.end(), [&](int c) { return space.extends_index(c, a); }))
                            return false;
                    return true;
                };
                bool found = good(f);
                for (std::size_t gi : f_by_r[p.d]) {
                    if (found)
                        break;
                    found = good(fs[gi]);
                }
                if (!found)
                    note(pc, space, {first_of(f), first_of(p)}, "no G in the sample extends every f");
            }
        }

        // linear
        ++lin.checked;
        for (int x : p.elements)
            for (int y : p.elements)
                if (!Space::norm_le(space.element(x), space.element(y)) && !Space::norm_le(space.element(y), space.element(x))) {
                    note(lin, space, {x, y}, "norms are incomparable");
                    goto linear_done;
                }
    linear_done:

        // vanishing: ∂^t P is a singleton for t = |rng| - 1.
        ++van.checked;
        std::set<int> cur(p.elements.begin(), p.elements.end());
        bool broken = false;
        for (Vertex t = 0; t < p.r_cut && !broken; ++t) {
            std::set<int> next;
            for (int x : cur) {
                int dx = space.truncate_index(x);
                if (dx < 0)
                    broken = true;
                next.insert(dx);
            }
            cur = std::move(next);
        }
        if (broken || cur.size() != 1)
            note(van, space, {first_of(p)}, "∂^t P is not a single element");
    }
    return {pa, pb, pc, lin, van, pw};
}

// ------------------------------------------------------------ (R) and (LP)

namespace {

ConditionReport decide_condition(const Space& space, const std::vector<int>& family, const std::vector<int>& targets, int b,
                                 std::uint64_t max_nodes)
{
    ConditionReport out;
    out.family = family;
    std::map<int, int> item_of;
    ConstraintSystem sys;
    for (int f : family) {
        Group g;
        for (int x : targets) {
            int fx = space.mul_index(f, x);
            if (fx < 0)
                throw Error(Errc::NotComposable, "f·x undefined");
            auto [it, fresh] = item_of.emplace(fx, static_cast<int>(out.items.size()));
            if (fresh)
                out.items.push_back(fx);
            g.push_back(it->second);
        }
        sys.constraints.push_back({std::move(g)});
    }
    sys.items = static_cast<int>(out.items.size());
    auto res = solve(sys, b, max_nodes);
    out.verdict = res.verdict;
    out.coloring = std::move(res.coloring);
    out.stats = res.stats;
    return out;
}

}  // namespace

ConditionReport check_R(const Space& space, const FamilySet& f, const FamilySet& p, int b, std::uint64_t max_nodes)
{
    if (!act(space, f, p))
        throw Error(Errc::NotComposable, "F▪P is undefined");
    return decide_condition(space, f.elements, p.elements, b, max_nodes);
}

ConditionReport check_LP(const Space& space, const FamilySet& p, int y, const FamilySet& f, int a, int b, std::uint64_t max_nodes)
{
    if (!act(space, f, p))
        throw Error(Errc::NotComposable, "F▪P is undefined");
    if (space.mul_index(a, y) < 0)
        throw Error(Errc::NotComposable, "a·y is undefined");
    auto py = fiber(space, p, y);
    if (py.empty())
        throw Error(Errc::InvalidArgument, "y is not in ∂P");
    return decide_condition(space, extenders(space, f, a), py, b, max_nodes);
}

RamConsistency ram_consistency(const Space& space, const std::vector<FamilySet>& fs, const std::vector<FamilySet>& ps, int b,
                               std::uint64_t max_nodes)
{
    RamConsistency out;
    std::map<int, std::vector<std::size_t>> f_by_r;
    for (std::size_t i = 0; i < fs.size(); ++i)
        f_by_r[fs[i].r].push_back(i);

    for (std::size_t pi = 0; pi < ps.size(); ++pi) {
        const auto& p = ps[pi];
        if (p.r_cut == 0)
            continue;
        ++out.families;
        std::set<int> ys;
        for (int x : p.elements)
            ys.insert(space.truncate_index(x));

        bool lp = true;
        for (int y : ys) {
            bool found = false;
            for (std::size_t fi : f_by_r[p.d]) {
                const auto& f = fs[fi];
                // Only an a that is an initial restriction f^w of some
                // f ∈ F has F_a non-empty; other a cannot witness (LP).
                std::set<int> as;
                for (int g : f.elements) {
                    const auto& eg = space.element(g);
                    auto inj = rigid_injection_values(space.as_map(eg));
                    for (Vertex w = 0; w <= eg.cod_cut; ++w) {
                        const Vertex top = inj[static_cast<std::size_t>(w)];
                        int a = space.index_of({eg.dom_ambient, top, eg.cod_ambient, w,
                                                std::vector<Vertex>(eg.values.begin(), eg.values.begin() + top + 1)});
                        if (a >= 0 && space.mul_index(a, y) >= 0 && space.extends_index(g, a))
                            as.insert(a);
                    }
                }
                for (int a : as)
                    if (check_LP(space, p, y, f, a, b, max_nodes).verdict == Verdict::Holds) {
                        found = true;
                        break;
                    }
                if (found)
                    break;
            }
            if (!found) {
                lp = false;
                break;
            }
        }
        bool r = false;
        for (std::size_t fi : f_by_r[p.d])
            if (check_R(space, fs[fi], p, b, max_nodes).verdict == Verdict::Holds) {
                r = true;
                break;
            }
        out.lp_found += lp;
        out.r_found += r;
        if (lp && !r)
            out.gaps.push_back(static_cast<int>(pi));
    }
    return out;
}

}  // namespace ramsey
