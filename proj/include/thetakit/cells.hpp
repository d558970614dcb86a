#ifndef THETAKIT_CELLS_HPP
#define THETAKIT_CELLS_HPP

// Distinguished presheaves: T_# and T^*, the cells O_k with their boundaries,
// the walking isomorphism E (by formula) and the finite object Z.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "delta.hpp"
#include "errors.hpp"
#include "intertwine.hpp"
#include "presheaf.hpp"
#include "theta.hpp"
#include "window.hpp"

namespace thetakit {

/// (T_# Y)(theta) = Y[arity theta]; Y lives on the simplex window (1, bound).
inline FinPresheaf t_sharp(const FinPresheaf& y, const Window::Ptr& w)
{
    const Window& dw = y.window();
    if (dw.level() != 1)
        throw ArgumentError("t_sharp needs a presheaf on the simplex category");
    if (w->level() < 1)
        throw ArgumentError("t_sharp needs a target level >= 1");
    std::vector<int> rank_of(w->object_count());
    std::vector<int> sizes(w->object_count());
    for (int a = 0; a < w->object_count(); ++a) {
        rank_of[a] = dw.require(ThetaObject::simplex(1, w->arity(a)));
        sizes[a] = y.size(rank_of[a]);
    }
    std::vector<std::vector<int>> acts(w->morphism_count());
    for (int f = 0; f < w->morphism_count(); ++f)
        acts[f] = y.action(dw.rank(simplex_morphism(1, w->delta(f))));
    return FinPresheaf(w, std::move(sizes), std::move(acts), false);
}

/// T_# on maps: the components are read off by arity.
inline PresheafMap t_sharp_map(const PresheafMap& f, const Window& dw, const Window& w)
{
    PresheafMap out;
    for (int a = 0; a < w.object_count(); ++a)
        out.comp.push_back(f.comp[dw.require(ThetaObject::simplex(1, w.arity(a)))]);
    return out;
}

/// (T^* X)[m] = X([m](t..t)) for m up to the window bound.
inline FinPresheaf t_star(const FinPresheaf& x)
{
    const Window& w = x.window();
    if (w.level() < 1)
        throw ArgumentError("t_star needs level >= 1");
    Window::Ptr dw = Window::get(1, w.bound());
    std::vector<int> sizes(dw->object_count());
    for (int a = 0; a < dw->object_count(); ++a)
        sizes[a] = x.size(w.require(ThetaObject::simplex(w.level(), dw->arity(a))));
    std::vector<std::vector<int>> acts(dw->morphism_count());
    for (int f = 0; f < dw->morphism_count(); ++f)
        acts[f] = x.action(w.rank(simplex_morphism(w.level(), dw->delta(f))));
    return FinPresheaf(dw, std::move(sizes), std::move(acts), false);
}

/// sigma^{k-1} delta^v: sigma^{k-1}[0] -> sigma^k[0] at level n.
inline ThetaMorphism cell_face(int k, int n, int v)
{
    if (k < 1 || k > n)
        throw ArgumentError("cell faces need 1 <= k <= n");
    const ThetaObject inner = ThetaObject::simplex(n - k + 1, 1);
    return suspension_power(k - 1, vertex_morphism(inner, v));
}

/// sigma^{k-1} of [1](t) -> [0]: sigma^k[0] -> sigma^{k-1}[0].
inline ThetaMorphism cell_collapse(int k, int n)
{
    if (k < 1 || k > n)
        throw ArgumentError("cell collapse needs 1 <= k <= n");
    return suspension_power(k - 1, to_terminal(ThetaObject::simplex(n - k + 1, 1)));
}

inline FinPresheaf cell(const Window::Ptr& w, int k) { return yoneda(w, sigma_power(k, w->level())); }

/// The maximal proper subobject of O_k: maps x into sigma^k[0] admitting no
/// g with x g = id.
inline Sub cell_boundary_maximal(const Window::Ptr& w, int k)
{
    const int t = w->require(sigma_power(k, w->level()));
    FinPresheaf ok = yoneda(w, w->object(t));
    const int id = w->identity(t);
    Sub out = subpresheaf(ok, [&](int a, int e) {
        const int x = w->hom_begin(a, t) + e;
        for (int g = w->hom_begin(t, a); g < w->hom_begin(t, a) + w->hom_size(t, a); ++g)
            if (w->compose(x, g) == id)
                return false;
        return true;
    });
    out.presheaf.set_presented(true);
    return out;
}

struct CellBoundary {
    FinPresheaf boundary;
    PresheafMap inclusion; // e_k into O_k
    PresheafMap s;         // O_{k-1} -> boundary
    PresheafMap t;
};

/// dO_k as the pushout O_{k-1} +_{dO_{k-1}} O_{k-1}, mapped into O_k by
/// (s_k, t_k); dO_0 is empty.
inline CellBoundary cell_boundary(const Window::Ptr& w, int k)
{
    const int n = w->level();
    if (k < 0 || k > n)
        throw ArgumentError("cell dimension outside 0..n");
    FinPresheaf ok = cell(w, k);
    if (k == 0) {
        FinPresheaf empty = initial_presheaf(w);
        PresheafMap inc;
        inc.comp.resize(w->object_count());
        return {empty, inc, {}, {}};
    }
    CellBoundary lower = cell_boundary(w, k - 1);
    FinPresheaf ok1 = cell(w, k - 1);
    Colimit po = pushout(lower.boundary, ok1, ok1, lower.inclusion, lower.inclusion);
    PresheafMap s = yoneda_map(*w, w->rank(cell_face(k, n, 0)));
    PresheafMap t = yoneda_map(*w, w->rank(cell_face(k, n, 1)));
    auto into = induced_from_colimit(po, {s, t});
    if (!into)
        throw InvariantViolation("s_k and t_k disagree on the boundary of O_" + std::to_string(k - 1));
    return {po.presheaf, *into, po.legs[0], po.legs[1]};
}

struct BoundaryComparison {
    bool injective = false;
    bool same_image = false;
    std::vector<int> sizes;

    bool ok() const { return injective && same_image; }
};

/// The two constructions of dO_k agree levelwise.
inline BoundaryComparison compare_boundaries(const Window::Ptr& w, int k)
{
    BoundaryComparison out;
    CellBoundary po = cell_boundary(w, k);
    Sub mx = cell_boundary_maximal(w, k);
    FinPresheaf ok = cell(w, k);
    out.injective = is_levelwise_injective(po.inclusion, ok);
    out.same_image = true;
    for (int a = 0; a < w->object_count(); ++a) {
        std::vector<int> img = po.inclusion.comp[a];
        std::sort(img.begin(), img.end());
        out.same_image = out.same_image && img == mx.inclusion.comp[a];
    }
    out.sizes = po.boundary.sizes();
    return out;
}

struct CellShiftReport {
    bool cell_ok = true;
    bool boundary_ok = true;
    bool faces_ok = true;

    bool ok() const { return cell_ok && boundary_ok && faces_ok; }
};

/// V[1] carries O_k, dO_k, s_k, t_k one level down to O_{k+1}, dO_{k+1},
/// s_{k+1}, t_{k+1}.
inline CellShiftReport check_v_cell_shift(const Window::Ptr& w, int k)
{
    CellShiftReport rep;
    const Window::Ptr& lw = w->lower_ptr();
    FinPresheaf lo = cell(lw, k);
    CellBoundary lb = cell_boundary(lw, k);
    VPresheaf vo = v_object(w, {&lo});
    VPresheaf vb = v_object(w, {&lb.boundary});
    FinPresheaf up = cell(w, k + 1);
    rep.cell_ok = vo.presheaf.sizes() == up.sizes() && vo.presheaf.actions() == up.actions();
    PresheafMap vinc = v_map(vb, vo, MonotoneMap::identity(1),
                             [&](int, int, int c, int x) { return lb.inclusion.comp[c][x]; });
    Sub mx = cell_boundary_maximal(w, k + 1);
    rep.boundary_ok = is_levelwise_injective(vinc, vo.presheaf);
    for (int a = 0; a < w->object_count() && rep.boundary_ok; ++a) {
        std::vector<int> img = vinc.comp[a];
        std::sort(img.begin(), img.end());
        rep.boundary_ok = img == mx.inclusion.comp[a];
    }
    if (k >= 1) {
        FinPresheaf lo1 = cell(lw, k - 1);
        VPresheaf vo1 = v_object(w, {&lo1});
        for (int v = 0; v <= 1; ++v) {
            PresheafMap lower_face = yoneda_map(*lw, lw->rank(cell_face(k, lw->level(), v)));
            PresheafMap shifted = v_map(vo1, vo, MonotoneMap::identity(1),
                                        [&](int, int, int c, int x) { return lower_face.comp[c][x]; });
            PresheafMap direct = yoneda_map(*w, w->rank(cell_face(k + 1, w->level(), v)));
            rep.faces_ok = rep.faces_ok && shifted.comp == direct.comp;
        }
    }
    return rep;
}

/// The chaotic nerve E: E_m is the set of functions [m] -> {0, 1}, encoded
/// as bitmasks; never tabulated.
struct WalkingIso {
    static std::uint64_t size(int m)
    {
        if (m < 0 || m > 62)
            throw ArgumentError("E_m is only encoded for 0 <= m <= 62");
        return std::uint64_t{1} << (m + 1);
    }

    static std::uint64_t act(const MonotoneMap& d, std::uint64_t s)
    {
        std::uint64_t out = 0;
        for (int i = 0; i <= d.src_rank(); ++i)
            out |= ((s >> d(i)) & 1u) << i;
        return out;
    }
};

/// Z = F[3] +_{F[1] + F[1]} (F[0] + F[0]) along (delta^02, delta^13), with
/// i_Z the class of delta^12.
struct ZObject {
    FinPresheaf z;
    PresheafMap from_f3;
    int iz = -1;
};

inline ZObject build_z(const Window::Ptr& dw)
{
    if (dw->level() != 1 || dw->bound() < 3)
        throw WindowExhausted("Z needs the simplex window up to [3]", "[3]");
    FinPresheaf f3 = yoneda(dw, ThetaObject::simplex(1, 3));
    FinPresheaf f1 = yoneda(dw, ThetaObject::simplex(1, 1));
    FinPresheaf f0 = yoneda(dw, ThetaObject::simplex(1, 0));
    FinPresheaf two_edges = coproduct(f1, f1);
    FinPresheaf two_points = coproduct(f0, f0);
    auto face = [&](const char* d) {
        return yoneda_map(*dw, dw->rank(simplex_morphism(1, MonotoneMap::parse(d, 3))));
    };
    PresheafMap a = face("02");
    PresheafMap b = face("13");
    PresheafMap into3;
    PresheafMap collapse;
    for (int o = 0; o < dw->object_count(); ++o) {
        into3.comp.push_back(a.comp[o]);
        into3.comp.back().insert(into3.comp.back().end(), b.comp[o].begin(), b.comp[o].end());
        collapse.comp.emplace_back();
        for (int e = 0; e < f1.size(o); ++e)
            collapse.comp.back().push_back(0);
        for (int e = 0; e < f1.size(o); ++e)
            collapse.comp.back().push_back(1);
    }
    Colimit po = pushout(two_edges, f3, two_points, into3, collapse);
    ZObject out{po.presheaf, po.legs[0], -1};
    const int e1 = dw->require(ThetaObject::simplex(1, 1));
    const int t3 = dw->require(ThetaObject::simplex(1, 3));
    const int d12 = dw->rank(simplex_morphism(1, MonotoneMap::parse("12", 3)));
    out.iz = out.from_f3.comp[e1][d12 - dw->hom_begin(e1, t3)];
    return out;
}

} // namespace thetakit

#endif // THETAKIT_CELLS_HPP
