#ifndef THETAKIT_FIBRANCY_HPP
#define THETAKIT_FIBRANCY_HPP

// Set-level checkers for the Segal, completeness, groupoid and truncation
// conditions, with the homotopy category, equivalences and iterated mapping
// objects they rest on. Spaces are read as sets and weak equivalences as
// bijections throughout.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cells.hpp"
#include "errors.hpp"
#include "intertwine.hpp"
#include "ncat.hpp"
#include "presheaf.hpp"
#include "theta.hpp"
#include "window.hpp"

namespace thetakit {

struct SegalShape {
    ThetaObject theta;
    int suspensions = 0;
    int source_size = 0;
    std::uint64_t target_size = 0;
    bool bijective = false;
    std::string witness;
};

struct DiscreteSegalReport {
    std::vector<SegalShape> shapes;

    bool passes() const
    {
        return std::all_of(shapes.begin(), shapes.end(), [](const SegalShape& s) { return s.bijective; });
    }

    std::string text() const
    {
        std::ostringstream os;
        os << "segal: " << (passes() ? "pass" : "fail") << " (" << shapes.size() << " shapes)\n";
        for (const auto& s : shapes) {
            os << "  " << s.theta.str() << ": " << s.source_size << " vs " << s.target_size << " "
               << (s.bijective ? "ok" : "FAIL");
            if (!s.witness.empty())
                os << " [" << s.witness << "]";
            os << "\n";
        }
        return os.str();
    }
};

/// Writes theta = sigma^k [r](theta_1..theta_r) with k maximal.
inline std::pair<int, ThetaObject> strip_suspensions(ThetaObject theta)
{
    int k = 0;
    while (theta.arity() == 1) {
        theta = theta.child(1);
        ++k;
    }
    return {k, theta};
}

/// The i-th spine edge sigma^k [1](theta_i) -> sigma^k [r](theta_1..theta_r).
inline ThetaMorphism spine_edge(int k, const ThetaObject& core, int i)
{
    const ThetaObject& ci = core.child(i);
    const ThetaObject edge = ThetaObject::make(core.level(), {ci});
    ThetaMorphism f{edge, core, MonotoneMap(core.arity(), {i - 1, i}), {identity_theta(ci)}};
    return suspension_power(k, f);
}

/// X(theta) against the iterated fiber product of the X(sigma^k [1](theta_i))
/// over X(sigma^k [0]).
inline SegalShape segal_shape(const FinPresheaf& x, const ThetaObject& theta)
{
    const Window& w = x.window();
    const auto [k, core] = strip_suspensions(theta);
    const int r = core.arity();
    if (r < 2)
        throw ArgumentError("no Segal condition at " + theta.str());
    SegalShape s;
    s.theta = theta;
    s.suspensions = k;
    const int t = w.require(theta);
    s.source_size = x.size(t);
    std::vector<int> edge_obj(r + 1), edge_map(r + 1), head(r + 1), tail(r + 1);
    for (int i = 1; i <= r; ++i) {
        const ThetaMorphism e = spine_edge(k, core, i);
        const ThetaObject edge = ThetaObject::make(core.level(), {core.child(i)});
        edge_obj[i] = w.require(e.source());
        edge_map[i] = w.rank(e);
        head[i] = w.rank(suspension_power(k, vertex_morphism(edge, 0)));
        tail[i] = w.rank(suspension_power(k, vertex_morphism(edge, 1)));
    }
    const int base = x.size(w.require(sigma_power(k, w.level())));
    // chains counted by their last vertex
    std::vector<std::uint64_t> ways(base, 0);
    for (int y = 0; y < x.size(edge_obj[1]); ++y)
        ++ways[x.apply(tail[1], y)];
    for (int i = 2; i <= r; ++i) {
        std::vector<std::uint64_t> next(base, 0);
        for (int y = 0; y < x.size(edge_obj[i]); ++y)
            next[x.apply(tail[i], y)] += ways[x.apply(head[i], y)];
        ways = std::move(next);
    }
    for (auto v : ways)
        s.target_size += v;
    std::map<std::vector<int>, int> image;
    std::optional<std::pair<int, int>> clash;
    for (int e = 0; e < s.source_size; ++e) {
        std::vector<int> tuple;
        for (int i = 1; i <= r; ++i)
            tuple.push_back(x.apply(edge_map[i], e));
        auto [it, fresh] = image.emplace(tuple, e);
        if (!fresh && !clash)
            clash = std::pair{it->second, e};
    }
    s.bijective = !clash && image.size() == s.target_size;
    if (clash) {
        s.witness = "elements " + x.label(t, clash->first) + " and " + x.label(t, clash->second) + " share a spine";
    } else if (!s.bijective) {
        std::vector<int> chain;
        auto rec = [&](auto&& self, int i) -> bool {
            if (i > r)
                return !image.count(chain);
            for (int y = 0; y < x.size(edge_obj[i]); ++y) {
                if (i > 1 && x.apply(head[i], y) != x.apply(tail[i - 1], chain.back()))
                    continue;
                chain.push_back(y);
                if (self(self, i + 1))
                    return true;
                chain.pop_back();
            }
            return false;
        };
        if (rec(rec, 1)) {
            std::ostringstream os;
            os << "chain (";
            for (int i = 1; i <= r; ++i)
                os << (i > 1 ? ", " : "") << x.label(edge_obj[i], chain[i - 1]);
            os << ") has no filler";
            s.witness = os.str();
        }
    }
    return s;
}

/// Every window shape carrying a Segal condition.
inline DiscreteSegalReport check_segal_discrete(const FinPresheaf& x)
{
    DiscreteSegalReport rep;
    const Window& w = x.window();
    for (const auto& theta : w.objects())
        if (strip_suspensions(theta).second.arity() >= 2)
            rep.shapes.push_back(segal_shape(x, theta));
    return rep;
}

/// A finite category with composition stored as a full table (-1 where
/// undefined); comp[g * morphisms + f] = g o f.
struct FiniteCategory {
    int objects = 0;
    std::vector<int> src;
    std::vector<int> tgt;
    std::vector<int> identity;
    std::vector<int> comp;

    int morphisms() const { return static_cast<int>(src.size()); }
    int compose(int g, int f) const { return comp[static_cast<std::size_t>(g) * morphisms() + f]; }

    std::optional<std::string> check_axioms() const
    {
        const int m = morphisms();
        for (int o = 0; o < objects; ++o)
            if (src[identity[o]] != o || tgt[identity[o]] != o)
                return "identity of " + std::to_string(o) + " has wrong endpoints";
        for (int f = 0; f < m; ++f) {
            if (compose(identity[tgt[f]], f) != f || compose(f, identity[src[f]]) != f)
                return "unit law fails at " + std::to_string(f);
            for (int g = 0; g < m; ++g) {
                const int gf = compose(g, f);
                if ((gf >= 0) != (src[g] == tgt[f]))
                    return "composition defined off composable pairs";
                if (gf >= 0 && (src[gf] != src[f] || tgt[gf] != tgt[g]))
                    return "composite has wrong endpoints";
            }
        }
        for (int f = 0; f < m; ++f)
            for (int g = 0; g < m; ++g) {
                if (src[g] != tgt[f])
                    continue;
                for (int h = 0; h < m; ++h)
                    if (src[h] == tgt[g] && compose(h, compose(g, f)) != compose(compose(h, g), f))
                        return "associativity fails";
            }
        return std::nullopt;
    }

    /// Morphisms with a left and a right inverse.
    std::vector<char> isomorphisms() const
    {
        const int m = morphisms();
        std::vector<char> out(m, 0);
        for (int f = 0; f < m; ++f) {
            bool left = false;
            bool right = false;
            for (int g = 0; g < m && !(left && right); ++g) {
                if (src[g] != tgt[f] || tgt[g] != src[f])
                    continue;
                left = left || compose(g, f) == identity[src[f]];
                right = right || compose(f, g) == identity[tgt[f]];
            }
            out[f] = left && right;
        }
        return out;
    }

    /// Pairs (u, v) with vu = 1 and uv = 1: functors out of the chaotic
    /// groupoid on two objects.
    std::vector<std::pair<int, int>> inverse_pairs() const
    {
        std::vector<std::pair<int, int>> out;
        const int m = morphisms();
        for (int u = 0; u < m; ++u)
            for (int v = 0; v < m; ++v)
                if (src[v] == tgt[u] && tgt[v] == src[u] && compose(v, u) == identity[src[u]] &&
                    compose(u, v) == identity[tgt[u]])
                    out.emplace_back(u, v);
        return out;
    }
};

namespace detail {

struct SimplexData {
    int obj0 = -1;
    int obj1 = -1;
    int obj2 = -1;
    int d0 = -1; // vertex 0 of an edge
    int d1 = -1; // vertex 1 of an edge
    int degen = -1;
    int e01 = -1;
    int e12 = -1;
    int e02 = -1;
};

inline SimplexData simplex_data(const Window& w)
{
    const int n = w.level();
    if (n < 1)
        throw ArgumentError("the homotopy category needs level >= 1");
    SimplexData s;
    const ThetaObject s2 = ThetaObject::simplex(n, 2);
    if (w.index_of(s2) < 0)
        throw WindowExhausted("the homotopy category needs [2] in the window", s2.str());
    s.obj0 = w.terminal();
    s.obj1 = w.require(ThetaObject::simplex(n, 1));
    s.obj2 = w.require(s2);
    s.d0 = w.rank(vertex_morphism(ThetaObject::simplex(n, 1), 0));
    s.d1 = w.rank(vertex_morphism(ThetaObject::simplex(n, 1), 1));
    s.degen = w.to_terminal(s.obj1);
    s.e01 = w.rank(simplex_morphism(n, MonotoneMap(2, {0, 1})));
    s.e12 = w.rank(simplex_morphism(n, MonotoneMap(2, {1, 2})));
    s.e02 = w.rank(simplex_morphism(n, MonotoneMap(2, {0, 2})));
    return s;
}

} // namespace detail

/// hX: objects X[0], morphisms X([1](t)), composition through the Segal
/// bijection at [2](t, t).
inline FiniteCategory homotopy_category(const FinPresheaf& x)
{
    const Window& w = x.window();
    const detail::SimplexData s = detail::simplex_data(w);
    const SegalShape seg = segal_shape(x, w.object(s.obj2));
    if (!seg.bijective)
        throw ArgumentError("Segal failure at " + seg.theta.str() + ": " + std::to_string(seg.source_size) + " vs " +
                            std::to_string(seg.target_size));
    FiniteCategory h;
    h.objects = x.size(s.obj0);
    const int m = x.size(s.obj1);
    for (int f = 0; f < m; ++f) {
        h.src.push_back(x.apply(s.d0, f));
        h.tgt.push_back(x.apply(s.d1, f));
    }
    for (int o = 0; o < h.objects; ++o)
        h.identity.push_back(x.apply(s.degen, o));
    h.comp.assign(static_cast<std::size_t>(m) * m, -1);
    for (int z = 0; z < x.size(s.obj2); ++z) {
        const int f = x.apply(s.e01, z);
        const int g = x.apply(s.e12, z);
        h.comp[static_cast<std::size_t>(g) * m + f] = x.apply(s.e02, z);
    }
    return h;
}

/// T^*X restricted to the window is the nerve of hX.
inline bool tstar_is_nerve(const FinPresheaf& x)
{
    const Window& w = x.window();
    const FiniteCategory h = homotopy_category(x);
    const int n = w.level();
    for (int m = 0;; ++m) {
        const ThetaObject sm = ThetaObject::simplex(n, m);
        if (w.index_of(sm) < 0)
            break;
        const int t = w.require(sm);
        if (m == 0) {
            if (x.size(t) != h.objects)
                return false;
            continue;
        }
        std::vector<int> edges;
        for (int i = 1; i <= m; ++i)
            edges.push_back(w.rank(simplex_morphism(n, MonotoneMap(m, {i - 1, i}))));
        std::set<std::vector<int>> seen;
        for (int e = 0; e < x.size(t); ++e) {
            std::vector<int> chain;
            for (int f : edges)
                chain.push_back(x.apply(f, e));
            if (!seen.insert(chain).second)
                return false;
        }
        std::vector<std::uint64_t> ways(h.objects, 1);
        for (int i = 0; i < m; ++i) {
            std::vector<std::uint64_t> next(h.objects, 0);
            for (int f = 0; f < h.morphisms(); ++f)
                next[h.tgt[f]] += ways[h.src[f]];
            ways = std::move(next);
        }
        std::uint64_t total = 0;
        for (auto v : ways)
            total += v;
        if (seen.size() != total)
            return false;
    }
    return true;
}

struct EquivalenceReport {
    std::vector<char> equiv; // over X([1](t))
    std::uint64_t count = 0;
    std::uint64_t inverse_pairs = 0;
    bool z_checked = false;
    std::uint64_t z_maps = 0;
    std::uint64_t z_direct = 0;
    std::string note;
};

/// X^equiv by left/right inverses in hX, by inverse pairs (the E route) and,
/// when [3] is in the window, by maps out of Z and by the direct X[3] filter.
/// Any disagreement raises InvariantViolation.
inline EquivalenceReport equivalence_report(const FinPresheaf& x)
{
    const Window& w = x.window();
    const FiniteCategory h = homotopy_category(x);
    EquivalenceReport rep;
    rep.equiv = h.isomorphisms();
    for (char c : rep.equiv)
        rep.count += c;
    const auto pairs = h.inverse_pairs();
    rep.inverse_pairs = pairs.size();
    std::vector<char> by_pairs(h.morphisms(), 0);
    for (auto [u, v] : pairs)
        by_pairs[u] = 1;
    if (by_pairs != rep.equiv)
        throw InvariantViolation("inverse-pair route disagrees with hX isomorphisms");
    const int n = w.level();
    const ThetaObject s3 = ThetaObject::simplex(n, 3);
    if (w.index_of(s3) < 0) {
        rep.note = "Z route skipped: [3] is outside the window";
        return rep;
    }
    rep.z_checked = true;
    FinPresheaf y = t_star(x);
    const Window::Ptr& dw = y.window_ptr();
    ZObject z = build_z(dw);
    const int e1 = dw->require(ThetaObject::simplex(1, 1));
    std::vector<char> by_z(h.morphisms(), 0);
    rep.z_maps = nat_hom(z.z, y, [&](const PresheafMap& psi) {
        by_z[psi(e1, z.iz)] = 1;
        return true;
    });
    const int t3 = dw->require(ThetaObject::simplex(1, 3));
    auto face = [&](const char* d) { return dw->rank(simplex_morphism(1, MonotoneMap::parse(d, 3))); };
    const int f02 = face("02");
    const int f13 = face("13");
    const int f12 = face("12");
    std::vector<char> degenerate(h.morphisms(), 0);
    for (int o = 0; o < h.objects; ++o)
        degenerate[h.identity[o]] = 1;
    std::vector<char> by_direct(h.morphisms(), 0);
    for (int e = 0; e < y.size(t3); ++e)
        if (degenerate[y.apply(f02, e)] && degenerate[y.apply(f13, e)]) {
            ++rep.z_direct;
            by_direct[y.apply(f12, e)] = 1;
        }
    if (rep.z_maps != rep.z_direct || by_z != by_direct)
        throw InvariantViolation("maps out of Z disagree with the direct X[3] filter");
    if (by_z != rep.equiv)
        throw InvariantViolation("Z route disagrees with hX isomorphisms");
    return rep;
}

inline std::vector<char> equivalences(const FinPresheaf& x) { return equivalence_report(x).equiv; }

/// A presheaf on Theta_{n-k} with the indices of its elements inside
/// X(sigma^k c).
struct UMap {
    FinPresheaf presheaf;
    std::vector<std::vector<int>> members;
};

namespace detail {

inline int find_member(const std::vector<int>& members, int y)
{
    auto it = std::find(members.begin(), members.end(), y);
    return it == members.end() ? -1 : static_cast<int>(it - members.begin());
}

/// The two (j-1)-cell endpoints of a j-cell of X.
inline std::pair<int, int> cell_endpoints(const FinPresheaf& x, int j, int y)
{
    const Window& w = x.window();
    const int n = w.level();
    return {x.apply(w.rank(cell_face(j, n, 0)), y), x.apply(w.rank(cell_face(j, n, 1)), y)};
}

} // namespace detail

/// map_X(f0, f1) for parallel (k-1)-cells, by iterating the mapping
/// presheaf construction k times.
inline UMap umap(const FinPresheaf& x, int k, int f0, int f1)
{
    const Window& w = x.window();
    const int n = w.level();
    if (k < 1 || k > n)
        throw ArgumentError("umap needs 1 <= k <= n");
    const int cells = x.size(w.require(sigma_power(k - 1, n)));
    if (f0 < 0 || f1 < 0 || f0 >= cells || f1 >= cells)
        throw ArgumentError("umap cells out of range");
    if (k == 1) {
        MappingPresheaf m = mapping_presheaf(x, f0, f1);
        return {m.presheaf, m.members};
    }
    const auto e0 = detail::cell_endpoints(x, k - 1, f0);
    const auto e1 = detail::cell_endpoints(x, k - 1, f1);
    if (e0 != e1)
        throw ArgumentError("umap needs parallel cells");
    MappingPresheaf m = mapping_presheaf(x, e0.first, e0.second);
    const Window& lw = m.presheaf.window();
    const int lc = lw.require(sigma_power(k - 2, n - 1));
    const int g0 = detail::find_member(m.members[lc], f0);
    const int g1 = detail::find_member(m.members[lc], f1);
    UMap inner = umap(m.presheaf, k - 1, g0, g1);
    const Window& iw = inner.presheaf.window();
    for (int c = 0; c < iw.object_count(); ++c) {
        ThetaObject up = iw.object(c);
        for (int i = 0; i < k - 1; ++i)
            up = suspension(up);
        const int li = lw.require(up);
        for (int& e : inner.members[c])
            e = m.members[li][e];
    }
    return inner;
}

/// The same object from its defining formula: elements of X(sigma^k c)
/// whose two sigma^{k-1}[0] faces are f0 and f1.
inline UMap umap_direct(const FinPresheaf& x, int k, int f0, int f1)
{
    const Window& w = x.window();
    const int n = w.level();
    if (k < 1 || k > n)
        throw ArgumentError("umap needs 1 <= k <= n");
    Window::Ptr lw = Window::get(n - k, w.bound() - k);
    UMap out;
    out.members.resize(lw->object_count());
    std::vector<std::vector<int>> pos(lw->object_count());
    std::vector<int> sizes(lw->object_count());
    auto up = [&](ThetaObject c) {
        for (int i = 0; i < k; ++i)
            c = suspension(c);
        return c;
    };
    for (int c = 0; c < lw->object_count(); ++c) {
        const ThetaObject sc = suspension(lw->object(c));
        const int t = w.require(up(lw->object(c)));
        const int v0 = w.rank(suspension_power(k - 1, vertex_morphism(sc, 0)));
        const int v1 = w.rank(suspension_power(k - 1, vertex_morphism(sc, 1)));
        pos[c].assign(x.size(t), -1);
        for (int e = 0; e < x.size(t); ++e)
            if (x.apply(v0, e) == f0 && x.apply(v1, e) == f1) {
                pos[c][e] = static_cast<int>(out.members[c].size());
                out.members[c].push_back(e);
            }
        sizes[c] = static_cast<int>(out.members[c].size());
    }
    std::vector<std::vector<int>> acts(lw->morphism_count());
    for (int g = 0; g < lw->morphism_count(); ++g) {
        const int sg = w.rank(suspension_power(k, lw->morphism(g)));
        for (int e : out.members[lw->dst(g)])
            acts[g].push_back(pos[lw->src(g)][x.apply(sg, e)]);
    }
    out.presheaf = FinPresheaf(lw, std::move(sizes), std::move(acts), false);
    return out;
}

/// The k-equivalences among X(sigma^k[0]): k-cells that are isomorphisms in
/// h(map_X(p0, p1)) for their (k-2)-cell endpoints p0, p1.
inline std::vector<char> k_equivalence_set(const FinPresheaf& x, int k)
{
    const Window& w = x.window();
    const int n = w.level();
    if (k < 1 || k > n)
        throw ArgumentError("k-equivalences need 1 <= k <= n");
    if (k == 1)
        return equivalences(x);
    const int t = w.require(sigma_power(k, n));
    std::vector<char> out(x.size(t), 0);
    std::map<std::pair<int, int>, std::vector<int>> groups;
    for (int g = 0; g < x.size(t); ++g) {
        const int f0 = detail::cell_endpoints(x, k, g).first;
        groups[detail::cell_endpoints(x, k - 1, f0)].push_back(g);
    }
    for (const auto& [ends, gs] : groups) {
        UMap u = umap(x, k - 1, ends.first, ends.second);
        const Window& uw = u.presheaf.window();
        const int edge = uw.require(ThetaObject::simplex(uw.level(), 1));
        const std::vector<char> eq = equivalences(u.presheaf);
        for (int g : gs)
            out[g] = eq[detail::find_member(u.members[edge], g)];
    }
    return out;
}

inline bool is_k_equivalence(const FinPresheaf& x, int k, int g) { return k_equivalence_set(x, k).at(g) != 0; }

struct CompletenessLevel {
    int k = 0;
    int lower_cells = 0;
    int equivalences = 0;
    bool injective = false;
    bool image_ok = false;
    std::string witness;
};

struct CompletenessReport {
    bool segal = false;
    std::vector<CompletenessLevel> levels;
    std::string note;

    bool complete() const
    {
        return segal && std::all_of(levels.begin(), levels.end(),
                                    [](const CompletenessLevel& l) { return l.injective && l.image_ok; });
    }

    std::string text() const
    {
        std::ostringstream os;
        os << "complete: " << (complete() ? "pass" : "fail") << "\n";
        if (!segal)
            os << "  segal condition fails\n";
        for (const auto& l : levels) {
            os << "  k=" << l.k << ": " << l.lower_cells << (l.injective && l.image_ok ? " = " : " != ")
               << l.equivalences;
            if (!l.witness.empty())
                os << " [" << l.witness << "]";
            os << "\n";
        }
        if (!note.empty())
            os << "  note: " << note << "\n";
        return os.str();
    }
};

/// X(i_k): X(sigma^{k-1}[0]) -> X(sigma^k[0]) is injective with image the
/// k-equivalences, for k = 1..n.
inline CompletenessReport check_complete_discrete(const FinPresheaf& x)
{
    CompletenessReport rep;
    rep.segal = check_segal_discrete(x).passes();
    if (!rep.segal)
        return rep;
    const Window& w = x.window();
    const int n = w.level();
    for (int k = 1; k <= n; ++k) {
        CompletenessLevel l;
        l.k = k;
        const int lo = w.require(sigma_power(k - 1, n));
        const int ik = w.rank(cell_collapse(k, n));
        l.lower_cells = x.size(lo);
        const std::vector<char> eq = k_equivalence_set(x, k);
        std::vector<char> hit(eq.size(), 0);
        l.injective = true;
        for (int y = 0; y < l.lower_cells; ++y) {
            char& slot = hit[x.apply(ik, y)];
            if (slot)
                l.injective = false;
            slot = 1;
        }
        l.equivalences = static_cast<int>(std::count(eq.begin(), eq.end(), 1));
        l.image_ok = hit == eq;
        if (!l.injective || !l.image_ok) {
            l.witness = std::to_string(l.lower_cells) + " != " + std::to_string(l.equivalences);
            for (std::size_t g = 0; g < eq.size(); ++g)
                if (eq[g] && !hit[g]) {
                    l.witness += ", non-identity equivalence " + x.label(w.require(sigma_power(k, n)), g);
                    break;
                }
        }
        rep.levels.push_back(l);
    }
    if (n >= 1 && w.index_of(ThetaObject::simplex(n, 3)) < 0)
        rep.note = "Z route skipped: [3] is outside the window";
    return rep;
}

struct GroupoidReport {
    bool segal = false;
    bool groupoid_local = false; // every k-cell is a k-equivalence
    bool condition2 = false;     // every X(i_k) is a bijection
    bool condition3 = false;     // every X[0] -> X(theta) is a bijection
    std::string witness;

    bool passes() const { return condition2; }
    bool conditions_agree() const { return condition2 == condition3; }

    std::string text() const
    {
        auto yes = [](bool b) { return b ? "yes" : "no"; };
        std::ostringstream os;
        os << "groupoid: " << (passes() ? "pass" : "fail") << "\n";
        os << "  segal: " << yes(segal) << "\n";
        os << "  every cell an equivalence: " << yes(groupoid_local) << "\n";
        os << "  X(i_k) bijective: " << yes(condition2) << "\n";
        os << "  X[0] -> X(theta) bijective: " << yes(condition3) << "\n";
        if (!witness.empty())
            os << "  witness: " << witness << "\n";
        return os.str();
    }
};

inline GroupoidReport check_groupoid_discrete(const FinPresheaf& x)
{
    GroupoidReport rep;
    const Window& w = x.window();
    const int n = w.level();
    const int p = x.size(w.terminal());
    rep.condition3 = true;
    for (int a = 0; a < w.object_count() && rep.condition3; ++a) {
        const auto& act = x.action(w.to_terminal(a));
        std::vector<int> img(act);
        std::sort(img.begin(), img.end());
        const bool bij = x.size(a) == p && std::adjacent_find(img.begin(), img.end()) == img.end();
        if (!bij) {
            rep.condition3 = false;
            rep.witness = "X[0] -> X(" + w.object(a).str() + ") is " + std::to_string(p) + " -> " +
                          std::to_string(x.size(a));
        }
    }
    rep.segal = check_segal_discrete(x).passes();
    if (!rep.segal) {
        if (rep.witness.empty())
            rep.witness = "segal condition fails";
        return rep;
    }
    rep.groupoid_local = true;
    rep.condition2 = true;
    for (int k = 1; k <= n; ++k) {
        const std::vector<char> eq = k_equivalence_set(x, k);
        if (std::count(eq.begin(), eq.end(), 1) != static_cast<long>(eq.size()))
            rep.groupoid_local = false;
        const int lo = w.require(sigma_power(k - 1, n));
        const int ik = w.rank(cell_collapse(k, n));
        std::vector<int> img = x.action(ik);
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        if (static_cast<int>(img.size()) != x.size(lo) || img.size() != eq.size()) {
            if (rep.condition2 && rep.witness.empty())
                rep.witness = "X(i_" + std::to_string(k) + ") is " + std::to_string(x.size(lo)) + " -> " +
                              std::to_string(eq.size());
            rep.condition2 = false;
        }
    }
    return rep;
}

/// (|X(O_k)|, |X(dO_k)|), the second counted as natural maps.
inline std::pair<std::uint64_t, std::uint64_t> moduli(const FinPresheaf& x, int k)
{
    const Window::Ptr& w = x.window_ptr();
    if (k < 0 || k > w->level())
        throw ArgumentError("moduli need 0 <= k <= n");
    CellBoundary b = cell_boundary(w, k);
    b.boundary.set_presented(true);
    return {static_cast<std::uint64_t>(x.size(w->require(sigma_power(k, w->level())))), nat_hom(b.boundary, x)};
}

struct TruncationReport {
    int k = 0;
    bool passes = false;
    std::vector<std::uint64_t> fiber_sizes; // over X(dO_n)
    std::string note;

    std::string text() const
    {
        std::ostringstream os;
        os << "truncation k=" << k << ": " << (passes ? "pass" : "fail") << "\n  fiber sizes:";
        for (auto f : fiber_sizes)
            os << " " << f;
        os << "\n";
        if (!note.empty())
            os << "  note: " << note << "\n";
        return os.str();
    }
};

/// Fibers of X(O_n) -> X(dO_n): all singletons (k = -2), at most singletons
/// (k = -1), anything (k >= 0).
inline TruncationReport check_truncation_discrete(const FinPresheaf& x, int k)
{
    if (k < -2)
        throw ArgumentError("truncation level must be >= -2");
    const Window::Ptr& w = x.window_ptr();
    const int n = w->level();
    TruncationReport rep;
    rep.k = k;
    CellBoundary b = cell_boundary(w, n);
    b.boundary.set_presented(true);
    std::map<std::vector<std::vector<int>>, int> index;
    nat_hom(b.boundary, x, [&](const PresheafMap& m) {
        index.emplace(m.comp, static_cast<int>(index.size()));
        return true;
    });
    rep.fiber_sizes.assign(index.size(), 0);
    const int t = w->require(sigma_power(n, n));
    for (int y = 0; y < x.size(t); ++y) {
        std::vector<std::vector<int>> comp(w->object_count());
        for (int a = 0; a < w->object_count(); ++a)
            for (int e = 0; e < b.boundary.size(a); ++e)
                comp[a].push_back(x.apply(w->hom_begin(a, t) + b.inclusion.comp[a][e], y));
        ++rep.fiber_sizes.at(index.at(comp));
    }
    const auto mx = rep.fiber_sizes.empty() ? 0 : *std::max_element(rep.fiber_sizes.begin(), rep.fiber_sizes.end());
    const auto mn = rep.fiber_sizes.empty() ? 1 : *std::min_element(rep.fiber_sizes.begin(), rep.fiber_sizes.end());
    if (k == -2)
        rep.passes = mx <= 1 && mn == 1;
    else if (k == -1)
        rep.passes = mx <= 1;
    else
        rep.passes = true;
    if (k >= 1)
        rep.note = "vacuous for set-valued presheaves";
    return rep;
}

struct RigidityComparison {
    bool rigid = false;
    bool segal = false;
    bool complete = false;
    std::string witness;

    bool agree() const { return rigid == (segal && complete); }
};

/// is_rigid(C) against the Segal and completeness verdict on dnerve(C).
inline RigidityComparison check_rigid_iff_complete(const StrictNCat& c, const Window::Ptr& w)
{
    RigidityComparison out;
    out.rigid = is_rigid(c);
    FinPresheaf x = dnerve(c, w);
    CompletenessReport rep = check_complete_discrete(x);
    out.segal = rep.segal;
    out.complete = rep.complete();
    for (const auto& l : rep.levels) {
        out.witness += (out.witness.empty() ? "" : "; ") + ("k=" + std::to_string(l.k) + ": ") +
                       std::to_string(l.lower_cells) + (l.injective && l.image_ok ? " = " : " != ") +
                       std::to_string(l.equivalences);
    }
    return out;
}

} // namespace thetakit

#endif // THETAKIT_FIBRANCY_HPP
