#ifndef THETAKIT_INTERTWINE_HPP
#define THETAKIT_INTERTWINE_HPP

// The intertwining functor V on window presheaves: V[m](A_1..A_m), its
// subobjects V_K, the maps V(sigma, {f_jk}), the coproduct and product
// decompositions, Segal subobjects, and mapping objects one level down.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "delta.hpp"
#include "errors.hpp"
#include "presheaf.hpp"
#include "theta.hpp"
#include "window.hpp"

namespace thetakit {

/// V[m](A) tabulated on a window, keeping the (delta, factors) key of each
/// element. Key layout: delta(0..q) followed by a_j for j in (delta(0), delta(q)].
struct VPresheaf {
    FinPresheaf presheaf;
    int m = 0;
    std::vector<std::vector<std::vector<int>>> keys;

    struct Block {
        int offset = 0;
        std::vector<int> radix;
    };
    std::vector<std::vector<Block>> blocks;
    std::vector<std::vector<int>> block_at; // delta code -> block index or -1
    std::vector<int> arity;

    const Block* block(int a, std::uint64_t code) const
    {
        const int b = block_at[a][code];
        return b < 0 ? nullptr : &blocks[a][b];
    }

    std::uint64_t delta_code(const int* d, int q) const
    {
        std::uint64_t code = 0;
        for (int i = 0; i <= q; ++i)
            code = code * static_cast<std::uint64_t>(m + 1) + static_cast<std::uint64_t>(d[i]);
        return code;
    }

    int find(int a, const std::vector<int>& key) const
    {
        const int q = arity[a];
        if (static_cast<int>(key.size()) < q + 1)
            return -1;
        for (int i = 0; i <= q; ++i)
            if (key[i] < 0 || key[i] > m || (i > 0 && key[i] < key[i - 1]))
                return -1;
        const Block* bp = block(a, delta_code(key.data(), q));
        if (!bp)
            return -1;
        const Block& b = *bp;
        if (key.size() != static_cast<std::size_t>(q + 1) + b.radix.size())
            return -1;
        int idx = 0;
        for (std::size_t t = 0; t < b.radix.size(); ++t) {
            const int v = key[q + 1 + t];
            if (v < 0 || v >= b.radix[t])
                return -1;
            idx = idx * b.radix[t] + v;
        }
        return b.offset + idx;
    }

    MonotoneMap delta(int a, int e) const
    {
        const auto& k = keys[a][e];
        const int q = presheaf.window().arity(a);
        return MonotoneMap(m, std::vector<int>(k.begin(), k.begin() + q + 1));
    }

    /// a_j of element e at object a.
    int factor(int a, int e, int j) const
    {
        const auto& k = keys[a][e];
        const int q = presheaf.window().arity(a);
        return k[q + 1 + (j - k[0] - 1)];
    }

    /// JSON-compatible text {"delta":"..","factors":[[..],..]} grouped by i.
    std::string element_text(int a, int e, const std::vector<const FinPresheaf*>& inputs) const
    {
        const Window& w = presheaf.window();
        const MonotoneMap d = delta(a, e);
        std::string s = "{\"delta\":\"" + d.to_string() + "\",\"factors\":[";
        for (int i = 1; i <= w.arity(a); ++i) {
            s += i > 1 ? ",[" : "[";
            for (int j = d(i - 1) + 1; j <= d(i); ++j) {
                if (j > d(i - 1) + 1)
                    s += ",";
                s += "\"" + inputs[j - 1]->label(w.child(a, i), factor(a, e, j)) + "\"";
            }
            s += "]";
        }
        return s + "]}";
    }
};

namespace detail {

inline void require_lower(const Window::Ptr& w, const std::vector<const FinPresheaf*>& inputs)
{
    if (w->level() < 1)
        throw ArgumentError("V needs a window of level >= 1");
    for (const auto* x : inputs)
        if (&x->window() != w->lower())
            throw ArgumentError("V inputs must live on the window one level down");
}

} // namespace detail

/// V_K(A_1..A_m) on w; K = nullptr means K = F[m].
inline VPresheaf v_subobject(const Window::Ptr& w, const std::vector<const FinPresheaf*>& inputs,
                             const SimplicialSubset* k)
{
    detail::require_lower(w, inputs);
    const int m = static_cast<int>(inputs.size());
    if (k && k->ambient_rank() != m)
        throw ArgumentError("cover rank does not match the number of inputs");
    VPresheaf out;
    out.m = m;
    out.keys.resize(w->object_count());
    out.blocks.resize(w->object_count());
    out.block_at.resize(w->object_count());
    for (int a = 0; a < w->object_count(); ++a) {
        out.arity.push_back(w->arity(a));
        std::size_t cells = 1;
        for (int i = 0; i <= w->arity(a); ++i)
            cells *= static_cast<std::size_t>(m + 1);
        out.block_at[a].assign(cells, -1);
    }
    for (int a = 0; a < w->object_count(); ++a) {
        const int q = w->arity(a);
        for (const auto& d : enumerate_delta(q, m)) {
            if (k && !k->contains(d))
                continue;
            std::vector<int> radix;
            for (int i = 1; i <= q; ++i)
                for (int j = d(i - 1) + 1; j <= d(i); ++j)
                    radix.push_back(inputs[j - 1]->size(w->child(a, i)));
            bool empty = false;
            for (int r : radix)
                empty = empty || r == 0;
            if (empty)
                continue;
            std::vector<int> key(d.values());
            key.resize(q + 1 + radix.size(), 0);
            out.block_at[a][out.delta_code(key.data(), q)] = static_cast<int>(out.blocks[a].size());
            out.blocks[a].push_back(VPresheaf::Block{static_cast<int>(out.keys[a].size()), radix});
            while (true) {
                out.keys[a].push_back(key);
                int t = static_cast<int>(radix.size()) - 1;
                while (t >= 0 && ++key[q + 1 + t] == radix[t]) {
                    key[q + 1 + t] = 0;
                    --t;
                }
                if (t < 0)
                    break;
            }
        }
    }
    std::vector<int> sizes(w->object_count());
    for (int a = 0; a < w->object_count(); ++a)
        sizes[a] = static_cast<int>(out.keys[a].size());
    std::vector<std::vector<int>> acts(w->morphism_count());
    for (int f = 0; f < w->morphism_count(); ++f) {
        const int a2 = w->src(f);
        const int a = w->dst(f);
        const MonotoneMap& rho = w->delta(f);
        const auto& g = w->comps(f);
        const int q = w->arity(a);
        const int q2 = w->arity(a2);
        acts[f].reserve(sizes[a]);
        std::vector<int> nd(q2 + 1);
        const VPresheaf::Block* tb = nullptr;
        int block_end = 0;
        for (int e = 0; e < sizes[a]; ++e) {
            const auto& key = out.keys[a][e];
            const int* dv = key.data();
            if (e == block_end) {
                const auto& sb = *out.block(a, out.delta_code(dv, q));
                int count = 1;
                for (int r : sb.radix)
                    count *= r;
                block_end = e + count;
                for (int i = 0; i <= q2; ++i)
                    nd[i] = dv[rho(i)];
                tb = out.block(a2, out.delta_code(nd.data(), q2));
                if (!tb)
                    throw InvariantViolation("V action leaves its element set");
            }
            int idx = 0;
            std::size_t t = 0;
            for (int i2 = 1; i2 <= q2; ++i2)
                for (int kk = rho(i2 - 1) + 1; kk <= rho(i2); ++kk) {
                    const int gid = g[kk - rho(0) - 1];
                    for (int j = dv[kk - 1] + 1; j <= dv[kk]; ++j)
                        idx = idx * tb->radix[t++] + inputs[j - 1]->apply(gid, key[q + 1 + (j - dv[0] - 1)]);
                }
            if (t != tb->radix.size())
                throw InvariantViolation("V action leaves its element set");
            acts[f].push_back(tb->offset + idx);
        }
    }
    bool presented = m <= 1;
    for (const auto* x : inputs)
        presented = presented && x->presented();
    out.presheaf = FinPresheaf(w, std::move(sizes), std::move(acts), presented);
    return out;
}

inline VPresheaf v_object(const Window::Ptr& w, const std::vector<const FinPresheaf*>& inputs)
{
    return v_subobject(w, inputs, nullptr);
}

/// f_jk applied at lower-window object c to x.
using VComponent = std::function<int(int j, int k, int c, int x)>;

inline int v_identity_component(int, int, int, int x) { return x; }

/// V(sigma, {f_jk}): V[m](A) -> V[m'](B), (delta, a) |-> (sigma delta, b_k = f_jk(a_j)).
inline PresheafMap v_map(const VPresheaf& src, const VPresheaf& dst, const MonotoneMap& sigma, const VComponent& f)
{
    const Window& w = src.presheaf.window();
    if (sigma.src_rank() != src.m || sigma.dst_rank() != dst.m)
        throw ArgumentError("v_map: sigma does not match the V ranks");
    PresheafMap out;
    for (int a = 0; a < w.object_count(); ++a) {
        const int q = w.arity(a);
        out.comp.emplace_back();
        for (int e = 0; e < src.presheaf.size(a); ++e) {
            const MonotoneMap d = src.delta(a, e);
            const MonotoneMap sd = compose(sigma, d);
            std::vector<int> key(sd.values());
            for (int i = 1; i <= q; ++i)
                for (int j = d(i - 1) + 1; j <= d(i); ++j)
                    for (int k = sigma(j - 1) + 1; k <= sigma(j); ++k)
                        key.push_back(f(j, k, w.child(a, i), src.factor(a, e, j)));
            const int img = dst.find(a, key);
            if (img < 0)
                throw InvariantViolation("v_map lands outside its target (delta " + sd.to_string() + ")");
            out.comp.back().push_back(img);
        }
    }
    return out;
}

/// The map out of a colimit induced by maps out of its nodes; nullopt when
/// the maps do not agree on identified elements.
inline std::optional<PresheafMap> induced_from_colimit(const Colimit& c, const std::vector<PresheafMap>& maps)
{
    PresheafMap out;
    for (int a = 0; a < static_cast<int>(c.presheaf.sizes().size()); ++a) {
        out.comp.emplace_back(c.presheaf.size(a), -1);
        for (std::size_t v = 0; v < maps.size(); ++v)
            for (std::size_t e = 0; e < maps[v].comp[a].size(); ++e) {
                int& slot = out.comp[a][c.legs[v].comp[a][e]];
                const int img = maps[v].comp[a][e];
                if (slot >= 0 && slot != img)
                    return std::nullopt;
                slot = img;
            }
        for (int s : out.comp[a])
            if (s < 0)
                return std::nullopt;
    }
    return out;
}

struct DecompositionReport {
    bool partition_ok = true;
    bool well_defined = true;
    bool bijective = true;
    std::string witness;

    bool ok() const { return partition_ok && well_defined && bijective; }
};

/// The class G(p) of delta: [q] -> [m+1+n] (p in 0..q+1).
inline int g_class(const MonotoneMap& d, int m)
{
    const int q = d.src_rank();
    if (d(0) >= m + 1)
        return 0;
    if (d(q) <= m)
        return q + 1;
    for (int p = 1; p <= q; ++p)
        if (d(p - 1) <= m && d(p) >= m + 1)
            return p;
    return -1;
}

/// Every delta lies in exactly one G(p).
inline bool check_g_partition(int q, int m, int n)
{
    for (const auto& d : enumerate_delta(q, m + 1 + n)) {
        int hits = 0;
        if (d(0) >= m + 1)
            ++hits;
        if (d(q) <= m)
            ++hits;
        for (int p = 1; p <= q; ++p)
            if (d(p - 1) <= m && d(p) >= m + 1)
                ++hits;
        if (hits != 1 || g_class(d, m) < 0)
            return false;
    }
    return true;
}

/// V[m](A) + V[n](B) -> V[m+1+n](A, empty, B) is a levelwise bijection.
inline DecompositionReport check_coproduct_decomposition(const Window::Ptr& w,
                                                         const std::vector<const FinPresheaf*>& as,
                                                         const std::vector<const FinPresheaf*>& bs)
{
    DecompositionReport rep;
    const int m = static_cast<int>(as.size());
    const int n = static_cast<int>(bs.size());
    for (int q = 0; q <= w->bound(); ++q)
        rep.partition_ok = rep.partition_ok && check_g_partition(q, m, n);
    FinPresheaf empty = initial_presheaf(w->lower_ptr());
    std::vector<const FinPresheaf*> mid(as);
    mid.push_back(&empty);
    mid.insert(mid.end(), bs.begin(), bs.end());
    VPresheaf va = v_object(w, as);
    VPresheaf vb = v_object(w, bs);
    VPresheaf vt = v_object(w, mid);
    std::vector<int> left(m + 1), right(n + 1);
    for (int i = 0; i <= m; ++i)
        left[i] = i;
    for (int i = 0; i <= n; ++i)
        right[i] = m + 1 + i;
    PresheafMap fa = v_map(va, vt, MonotoneMap(m + 1 + n, left), v_identity_component);
    PresheafMap fb = v_map(vb, vt, MonotoneMap(m + 1 + n, right), v_identity_component);
    PresheafMap both;
    for (int a = 0; a < w->object_count(); ++a) {
        both.comp.push_back(fa.comp[a]);
        both.comp.back().insert(both.comp.back().end(), fb.comp[a].begin(), fb.comp[a].end());
        // elements with delta in G(p), 1 <= p <= q, need a factor from the empty input
        for (int e = 0; e < vt.presheaf.size(a); ++e) {
            const int p = g_class(vt.delta(a, e), m);
            if (p >= 1 && p <= w->arity(a)) {
                rep.partition_ok = false;
                rep.witness = "middle summand nonempty at " + w->object(a).str();
            }
        }
    }
    if (!is_levelwise_bijective(both, vt.presheaf)) {
        rep.bijective = false;
        for (int a = 0; a < w->object_count() && rep.witness.empty(); ++a)
            if (static_cast<int>(both.comp[a].size()) != vt.presheaf.size(a))
                rep.witness = w->object(a).str() + ": " + std::to_string(both.comp[a].size()) +
                              " != " + std::to_string(vt.presheaf.size(a));
    }
    return rep;
}

/// colim(V[2](A,B) <- V[1](A x B) -> V[2](B,A)) -> V[1](A) x V[1](B) is a
/// levelwise bijection.
struct ProductDecomposition {
    DecompositionReport report;
    std::vector<int> pushout_sizes;
    std::vector<int> product_sizes;
};

inline ProductDecomposition check_product_decomposition(const Window::Ptr& w, const FinPresheaf& a,
                                                        const FinPresheaf& b)
{
    ProductDecomposition out;
    FinPresheaf ab = product(a, b);
    VPresheaf vab2 = v_object(w, {&a, &b});
    VPresheaf vba2 = v_object(w, {&b, &a});
    VPresheaf vprod = v_object(w, {&ab});
    VPresheaf va = v_object(w, {&a});
    VPresheaf vb = v_object(w, {&b});
    const MonotoneMap d02 = MonotoneMap::parse("02");
    // components f_11: A x B -> first input, f_12: A x B -> second input
    auto proj_ab = [&](int, int k, int c, int x) { return k == 1 ? x / b.size(c) : x % b.size(c); };
    auto proj_ba = [&](int, int k, int c, int x) { return k == 1 ? x % b.size(c) : x / b.size(c); };
    PresheafMap to_ab = v_map(vprod, vab2, d02, proj_ab);
    PresheafMap to_ba = v_map(vprod, vba2, d02, proj_ba);
    Colimit po = pushout(vprod.presheaf, vab2.presheaf, vba2.presheaf, to_ab, to_ba);
    FinPresheaf target = product(va.presheaf, vb.presheaf);
    const MonotoneMap d011 = MonotoneMap::parse("011");
    const MonotoneMap d001 = MonotoneMap::parse("001");
    PresheafMap ab_to = product_pairing(v_map(vab2, va, d011, v_identity_component),
                                        v_map(vab2, vb, d001, v_identity_component), vb.presheaf);
    PresheafMap ba_to = product_pairing(v_map(vba2, va, d001, v_identity_component),
                                        v_map(vba2, vb, d011, v_identity_component), vb.presheaf);
    auto induced = induced_from_colimit(po, {ab_to, ba_to});
    out.pushout_sizes = po.presheaf.sizes();
    out.product_sizes = target.sizes();
    if (!induced) {
        out.report.well_defined = false;
        out.report.witness = "comparison maps disagree on V[1](A x B)";
        return out;
    }
    if (!is_levelwise_bijective(*induced, target)) {
        out.report.bijective = false;
        for (int o = 0; o < w->object_count(); ++o)
            if (po.presheaf.size(o) != target.size(o) && out.report.witness.empty())
                out.report.witness = w->object(o).str() + ": " + std::to_string(po.presheaf.size(o)) + " != " +
                                     std::to_string(target.size(o));
        if (out.report.witness.empty())
            out.report.witness = "comparison not injective";
    }
    return out;
}

/// V_{G[m]}(A) against the colimit of V[1](A_i) glued end to start over V[0].
inline DecompositionReport check_spine_colimit(const Window::Ptr& w, const std::vector<const FinPresheaf*>& as)
{
    DecompositionReport rep;
    const int m = static_cast<int>(as.size());
    const SimplicialSubset g = SimplicialSubset::spine(m);
    VPresheaf vg = v_subobject(w, as, &g);
    VPresheaf v0 = v_object(w, {});
    std::vector<VPresheaf> v1;
    for (int i = 0; i < m; ++i)
        v1.push_back(v_object(w, {as[i]}));
    Diagram d;
    for (int i = 0; i < m; ++i)
        d.nodes.push_back(&v1[i].presheaf);
    std::vector<VPresheaf> joints(m > 0 ? m - 1 : 0, v0);
    for (int i = 0; i + 1 < m; ++i) {
        d.nodes.push_back(&joints[i].presheaf);
        const int jn = m + i;
        d.arrows.push_back({jn, i, v_map(v0, v1[i], MonotoneMap(1, {1}), v_identity_component)});
        d.arrows.push_back({jn, i + 1, v_map(v0, v1[i + 1], MonotoneMap(1, {0}), v_identity_component)});
    }
    if (m == 0)
        d.nodes.push_back(&v0.presheaf);
    Colimit c = colimit(d, w);
    std::vector<PresheafMap> maps;
    for (int i = 0; i < m; ++i)
        maps.push_back(v_map(v1[i], vg, MonotoneMap(m, {i, i + 1}), v_identity_component));
    for (int i = 0; i + 1 < m; ++i)
        maps.push_back(v_map(v0, vg, MonotoneMap(m, {i + 1}), v_identity_component));
    if (m == 0)
        maps.push_back(identity_map(v0.presheaf));
    auto induced = induced_from_colimit(c, maps);
    if (!induced) {
        rep.well_defined = false;
        rep.witness = "spine legs disagree";
        return rep;
    }
    if (!is_levelwise_bijective(*induced, vg.presheaf)) {
        rep.bijective = false;
        rep.witness = "spine colimit comparison not bijective";
    }
    return rep;
}

/// se: G[m](c_1..c_m) as a subpresheaf of F([m](c_1..c_m)).
inline Sub segal_subobject(const Window::Ptr& w, const ThetaObject& theta)
{
    const int t = w->require(theta);
    const SimplicialSubset g = SimplicialSubset::spine(theta.arity());
    return subpresheaf(yoneda(w, theta), [&](int a, int e) { return g.contains(w->delta(w->hom_begin(a, t) + e)); });
}

/// M_X(x_0..x_m)(c_1..c_m): elements of X([m](c)) with the given vertices.
inline std::vector<int> mapping_object(const FinPresheaf& x, const std::vector<int>& vertices, const ThetaObject& theta)
{
    const Window& w = x.window();
    const int t = w.require(theta);
    if (static_cast<int>(vertices.size()) != theta.arity() + 1)
        throw ArgumentError("mapping_object needs arity + 1 vertices");
    for (int v : vertices)
        if (v < 0 || v >= x.size(w.terminal()))
            throw ArgumentError("vertex outside X[0]");
    std::vector<int> vmor;
    for (int i = 0; i <= theta.arity(); ++i)
        vmor.push_back(w.rank(vertex_morphism(theta, i)));
    std::vector<int> out;
    for (int e = 0; e < x.size(t); ++e) {
        bool ok = true;
        for (int i = 0; i <= theta.arity() && ok; ++i)
            ok = x.apply(vmor[i], e) == vertices[i];
        if (ok)
            out.push_back(e);
    }
    return out;
}

/// M_X(x0, x1) as a presheaf on the window one level down, with the indices
/// of its elements inside X([1](c)).
struct MappingPresheaf {
    FinPresheaf presheaf;
    std::vector<std::vector<int>> members;
};

inline MappingPresheaf mapping_presheaf(const FinPresheaf& x, int x0, int x1)
{
    const Window& w = x.window();
    if (w.level() < 1)
        throw ArgumentError("mapping presheaves need level >= 1");
    const Window::Ptr& lw = w.lower_ptr();
    MappingPresheaf out;
    std::vector<std::vector<int>> pos(lw->object_count());
    out.members.resize(lw->object_count());
    std::vector<int> sizes(lw->object_count());
    for (int c = 0; c < lw->object_count(); ++c) {
        const ThetaObject sc = suspension(lw->object(c));
        if (w.index_of(sc) < 0)
            throw WindowExhausted("mapping presheaf needs the suspension in the window", sc.str());
        out.members[c] = mapping_object(x, {x0, x1}, sc);
        pos[c].assign(x.size(w.require(sc)), -1);
        for (int e = 0; e < static_cast<int>(out.members[c].size()); ++e)
            pos[c][out.members[c][e]] = e;
        sizes[c] = static_cast<int>(out.members[c].size());
    }
    std::vector<std::vector<int>> acts(lw->morphism_count());
    for (int g = 0; g < lw->morphism_count(); ++g) {
        const int sg = w.rank(suspension(lw->morphism(g)));
        for (int y : out.members[lw->dst(g)])
            acts[g].push_back(pos[lw->src(g)][x.apply(sg, y)]);
    }
    out.presheaf = FinPresheaf(lw, std::move(sizes), std::move(acts), false);
    return out;
}

struct MappingLemmaReport {
    std::uint64_t via_v = 0;
    std::uint64_t via_mapping = 0;
    bool bijection_ok = true;

    bool ok() const { return via_v == via_mapping && bijection_ok; }
};

/// Maps V[1](A) -> X with endpoints (x0, x1) against maps A -> M_X(x0, x1);
/// the bijection sends psi to its restriction along delta = 01.
inline MappingLemmaReport check_mapping_lemma(const FinPresheaf& x, const FinPresheaf& a, int x0, int x1)
{
    const Window::Ptr& w = x.window_ptr();
    MappingLemmaReport rep;
    VPresheaf va = v_object(w, {&a});
    MappingPresheaf mx = mapping_presheaf(x, x0, x1);
    const int t = w->terminal();
    const int e0 = va.find(t, {0});
    const int e1 = va.find(t, {1});
    std::map<std::vector<std::vector<int>>, int> seen;
    const Window& lw = *w->lower();
    rep.via_v = 0;
    nat_hom(va.presheaf, x, [&](const PresheafMap& psi) {
        if (psi(t, e0) != x0 || psi(t, e1) != x1)
            return true;
        ++rep.via_v;
        PresheafMap r;
        for (int c = 0; c < lw.object_count(); ++c) {
            const int sc = w->require(suspension(lw.object(c)));
            r.comp.emplace_back();
            for (int e = 0; e < a.size(c); ++e) {
                const int y = psi(sc, va.find(sc, {0, 1, e}));
                int at = -1;
                for (int z = 0; z < static_cast<int>(mx.members[c].size()); ++z)
                    if (mx.members[c][z] == y)
                        at = z;
                if (at < 0) {
                    rep.bijection_ok = false;
                    return false;
                }
                r.comp.back().push_back(at);
            }
        }
        if (check_natural(r, a, mx.presheaf) || !seen.emplace(r.comp, 0).second)
            rep.bijection_ok = false;
        return rep.bijection_ok;
    });
    rep.via_mapping = nat_hom(a, mx.presheaf);
    return rep;
}

} // namespace thetakit

#endif // THETAKIT_INTERTWINE_HPP
