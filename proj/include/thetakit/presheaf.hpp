#ifndef THETAKIT_PRESHEAF_HPP
#define THETAKIT_PRESHEAF_HPP

// Finite set-valued presheaves tabulated on a Window. Elements of X(a) are
// 0..size(a)-1; action(f)[x] is X(f)(x) for f: a -> b and x in X(b).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "theta.hpp"
#include "window.hpp"

namespace thetakit {

class FinPresheaf {
public:
    FinPresheaf() = default;

    FinPresheaf(Window::Ptr w, std::vector<int> sizes, std::vector<std::vector<int>> actions, bool presented = false)
        : w_(std::move(w)), sizes_(std::move(sizes)), act_(std::move(actions)), presented_(presented)
    {
        if (static_cast<int>(sizes_.size()) != w_->object_count())
            throw ArgumentError("presheaf needs one set per window object");
        if (static_cast<int>(act_.size()) != w_->morphism_count())
            throw ArgumentError("presheaf needs one action per window morphism");
        for (int f = 0; f < w_->morphism_count(); ++f) {
            if (static_cast<int>(act_[f].size()) != sizes_[w_->dst(f)])
                throw ArgumentError("action of morphism " + std::to_string(f) + " has the wrong length");
            for (int y : act_[f])
                if (y < 0 || y >= sizes_[w_->src(f)])
                    throw ArgumentError("action of morphism " + std::to_string(f) + " leaves its target set");
        }
    }

    /// Builds a presheaf from keyed elements: elems(a) lists X(a), act(f, key)
    /// gives the key of X(f)(key) in X(src f).
    template <class Key, class Elems, class Act>
    static FinPresheaf tabulate(Window::Ptr w, Elems&& elems, Act&& act, bool presented = false)
    {
        const int n = w->object_count();
        std::vector<std::vector<Key>> keys(n);
        std::vector<std::map<Key, int>> index(n);
        std::vector<int> sizes(n);
        for (int a = 0; a < n; ++a) {
            keys[a] = elems(a);
            for (int x = 0; x < static_cast<int>(keys[a].size()); ++x)
                if (!index[a].emplace(keys[a][x], x).second)
                    throw InvariantViolation("duplicate element at " + w->object(a).str());
            sizes[a] = static_cast<int>(keys[a].size());
        }
        std::vector<std::vector<int>> actions(w->morphism_count());
        for (int f = 0; f < w->morphism_count(); ++f) {
            const int a = w->src(f);
            const int b = w->dst(f);
            auto& row = actions[f];
            row.resize(keys[b].size());
            for (std::size_t x = 0; x < keys[b].size(); ++x) {
                auto it = index[a].find(act(f, keys[b][x]));
                if (it == index[a].end())
                    throw InvariantViolation("action of " + w->morphism(f).to_string() + " leaves the element set at " +
                                             w->object(a).str());
                row[x] = it->second;
            }
        }
        return FinPresheaf(std::move(w), std::move(sizes), std::move(actions), presented);
    }

    const Window::Ptr& window_ptr() const noexcept { return w_; }
    const Window& window() const noexcept { return *w_; }
    int size(int a) const { return sizes_.at(a); }
    const std::vector<int>& sizes() const noexcept { return sizes_; }
    int at(const ThetaObject& o) const { return sizes_.at(w_->require(o)); }
    int apply(int f, int x) const { return act_[f][x]; }
    const std::vector<int>& action(int f) const { return act_[f]; }
    const std::vector<std::vector<int>>& actions() const noexcept { return act_; }

    /// Every element of X(a) is generated inside the window together with its
    /// relations; required on the source of nat_hom.
    bool presented() const noexcept { return presented_; }
    void set_presented(bool p) { presented_ = p; }

    bool has_labels() const noexcept { return !labels_.empty(); }
    std::string label(int a, int x) const
    {
        if (labels_.empty())
            return std::to_string(x);
        return labels_[a][x];
    }
    void set_labels(std::vector<std::vector<std::string>> labels)
    {
        if (labels.size() != sizes_.size())
            throw ArgumentError("one label list per object");
        for (std::size_t a = 0; a < labels.size(); ++a)
            if (static_cast<int>(labels[a].size()) != sizes_[a])
                throw ArgumentError("label count mismatch at " + w_->object(static_cast<int>(a)).str());
        labels_ = std::move(labels);
    }

    std::uint64_t total_size() const
    {
        return std::accumulate(sizes_.begin(), sizes_.end(), std::uint64_t{0});
    }

private:
    Window::Ptr w_;
    std::vector<int> sizes_;
    std::vector<std::vector<int>> act_;
    std::vector<std::vector<std::string>> labels_;
    bool presented_ = false;
};

/// Identity and composition laws; exhaustive for small windows, otherwise
/// `samples` random composable pairs. Returns a description of the first
/// failure, if any.
inline std::optional<std::string> check_functoriality(const FinPresheaf& x, int exhaustive_limit = 200,
                                                      int samples = 4000, std::uint32_t seed = 7)
{
    const Window& w = x.window();
    for (int a = 0; a < w.object_count(); ++a) {
        const auto& row = x.action(w.identity(a));
        for (int e = 0; e < x.size(a); ++e)
            if (row[e] != e)
                return "identity of " + w.object(a).str() + " acts nontrivially";
    }
    auto check_pair = [&](int g, int f) -> std::optional<std::string> {
        const int gf = w.compose(g, f);
        for (int e = 0; e < x.size(w.dst(g)); ++e)
            if (x.apply(gf, e) != x.apply(f, x.apply(g, e)))
                return "X(g o f) != X(f) X(g) for g=" + w.morphism(g).to_string() + " f=" + w.morphism(f).to_string();
        return std::nullopt;
    };
    if (w.morphism_count() <= exhaustive_limit) {
        for (int g = 0; g < w.morphism_count(); ++g)
            for (int f : w.into(w.src(g)))
                if (auto bad = check_pair(g, f))
                    return bad;
        return std::nullopt;
    }
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(0, w.morphism_count() - 1);
    for (int s = 0; s < samples; ++s) {
        const int g = pick(rng);
        const auto& fs = w.into(w.src(g));
        const int f = fs[std::uniform_int_distribution<int>(0, static_cast<int>(fs.size()) - 1)(rng)];
        if (auto bad = check_pair(g, f))
            return bad;
    }
    return std::nullopt;
}

/// Componentwise map X -> Y.
struct PresheafMap {
    std::vector<std::vector<int>> comp;

    int operator()(int a, int x) const { return comp[a][x]; }
};

inline PresheafMap identity_map(const FinPresheaf& x)
{
    PresheafMap m;
    for (int a = 0; a < x.window().object_count(); ++a) {
        m.comp.emplace_back(x.size(a));
        std::iota(m.comp.back().begin(), m.comp.back().end(), 0);
    }
    return m;
}

inline PresheafMap compose_maps(const PresheafMap& g, const PresheafMap& f)
{
    PresheafMap h;
    h.comp.resize(f.comp.size());
    for (std::size_t a = 0; a < f.comp.size(); ++a)
        for (int y : f.comp[a])
            h.comp[a].push_back(g.comp[a][y]);
    return h;
}

inline std::optional<std::string> check_natural(const PresheafMap& m, const FinPresheaf& x, const FinPresheaf& y)
{
    const Window& w = x.window();
    if (&w != &y.window())
        return std::string("maps need a shared window");
    if (static_cast<int>(m.comp.size()) != w.object_count())
        return std::string("map needs one component per object");
    for (int a = 0; a < w.object_count(); ++a) {
        if (static_cast<int>(m.comp[a].size()) != x.size(a))
            return "component at " + w.object(a).str() + " has the wrong length";
        for (int v : m.comp[a])
            if (v < 0 || v >= y.size(a))
                return "component at " + w.object(a).str() + " leaves the target";
    }
    for (int f = 0; f < w.morphism_count(); ++f) {
        const int a = w.src(f);
        const int b = w.dst(f);
        for (int e = 0; e < x.size(b); ++e)
            if (m.comp[a][x.apply(f, e)] != y.apply(f, m.comp[b][e]))
                return "naturality fails along " + w.morphism(f).to_string();
    }
    return std::nullopt;
}

inline bool is_levelwise_injective(const PresheafMap& m, const FinPresheaf& y)
{
    for (std::size_t a = 0; a < m.comp.size(); ++a) {
        std::vector<char> seen(y.size(static_cast<int>(a)), 0);
        for (int v : m.comp[a]) {
            if (seen[v])
                return false;
            seen[v] = 1;
        }
    }
    return true;
}

inline bool is_levelwise_bijective(const PresheafMap& m, const FinPresheaf& y)
{
    for (std::size_t a = 0; a < m.comp.size(); ++a)
        if (static_cast<int>(m.comp[a].size()) != y.size(static_cast<int>(a)))
            return false;
    return is_levelwise_injective(m, y);
}

inline FinPresheaf initial_presheaf(Window::Ptr w)
{
    std::vector<std::vector<int>> acts(w->morphism_count());
    std::vector<int> sizes(w->object_count(), 0);
    return FinPresheaf(std::move(w), std::move(sizes), std::move(acts), true);
}

/// The constant presheaf on a k-element set; terminal for k = 1.
inline FinPresheaf constant_presheaf(Window::Ptr w, int k)
{
    std::vector<int> id(k);
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<int>> acts(w->morphism_count(), id);
    std::vector<int> sizes(w->object_count(), k);
    return FinPresheaf(std::move(w), std::move(sizes), std::move(acts), true);
}

inline FinPresheaf terminal_presheaf(Window::Ptr w) { return constant_presheaf(std::move(w), 1); }

/// F(theta) restricted to the window; elements are local hom indices.
inline FinPresheaf yoneda(const Window::Ptr& w, const ThetaObject& theta)
{
    const int t = w->require(theta);
    std::vector<int> sizes(w->object_count());
    for (int a = 0; a < w->object_count(); ++a)
        sizes[a] = w->hom_size(a, t);
    std::vector<std::vector<int>> acts(w->morphism_count());
    for (int f = 0; f < w->morphism_count(); ++f) {
        const int b = w->dst(f);
        const int begin = w->hom_begin(b, t);
        for (int e = 0; e < sizes[b]; ++e)
            acts[f].push_back(w->local_index(w->compose(begin + e, f)));
    }
    return FinPresheaf(w, std::move(sizes), std::move(acts), true);
}

/// The map F(a) -> F(b) given by postcomposition with window morphism g: a -> b.
inline PresheafMap yoneda_map(const Window& w, int g)
{
    PresheafMap m;
    const int a = w.src(g);
    for (int c = 0; c < w.object_count(); ++c) {
        m.comp.emplace_back();
        const int begin = w.hom_begin(c, a);
        for (int e = 0; e < w.hom_size(c, a); ++e)
            m.comp.back().push_back(w.local_index(w.compose(g, begin + e)));
    }
    return m;
}

/// Element x of X(a) as the map F(a) -> X.
inline PresheafMap yoneda_element_map(const FinPresheaf& x, int a, int e)
{
    const Window& w = x.window();
    PresheafMap m;
    for (int c = 0; c < w.object_count(); ++c) {
        m.comp.emplace_back();
        const int begin = w.hom_begin(c, a);
        for (int h = 0; h < w.hom_size(c, a); ++h)
            m.comp.back().push_back(x.apply(begin + h, e));
    }
    return m;
}

inline void require_same_window(const FinPresheaf& x, const FinPresheaf& y)
{
    if (&x.window() != &y.window())
        throw ArgumentError("presheaves live on different windows");
}

/// Elements are pairs (x, y) encoded x * |Y(a)| + y.
inline FinPresheaf product(const FinPresheaf& x, const FinPresheaf& y)
{
    require_same_window(x, y);
    const Window& w = x.window();
    std::vector<int> sizes(w.object_count());
    for (int a = 0; a < w.object_count(); ++a)
        sizes[a] = x.size(a) * y.size(a);
    std::vector<std::vector<int>> acts(w.morphism_count());
    for (int f = 0; f < w.morphism_count(); ++f) {
        const int a = w.src(f);
        const int b = w.dst(f);
        for (int e = 0; e < sizes[b]; ++e)
            acts[f].push_back(x.apply(f, e / y.size(b)) * y.size(a) + y.apply(f, e % y.size(b)));
    }
    return FinPresheaf(x.window_ptr(), std::move(sizes), std::move(acts), false);
}

inline PresheafMap product_projection(const FinPresheaf& x, const FinPresheaf& y, int which)
{
    PresheafMap m;
    for (int a = 0; a < x.window().object_count(); ++a) {
        m.comp.emplace_back();
        for (int e = 0; e < x.size(a) * y.size(a); ++e)
            m.comp.back().push_back(which == 0 ? e / y.size(a) : e % y.size(a));
    }
    return m;
}

/// The pairing (f, g): Z -> X x Y.
inline PresheafMap product_pairing(const PresheafMap& f, const PresheafMap& g, const FinPresheaf& y)
{
    PresheafMap m;
    for (std::size_t a = 0; a < f.comp.size(); ++a) {
        m.comp.emplace_back();
        for (std::size_t e = 0; e < f.comp[a].size(); ++e)
            m.comp.back().push_back(f.comp[a][e] * y.size(static_cast<int>(a)) + g.comp[a][e]);
    }
    return m;
}

/// X first, then Y.
inline FinPresheaf coproduct(const FinPresheaf& x, const FinPresheaf& y)
{
    require_same_window(x, y);
    const Window& w = x.window();
    std::vector<int> sizes(w.object_count());
    for (int a = 0; a < w.object_count(); ++a)
        sizes[a] = x.size(a) + y.size(a);
    std::vector<std::vector<int>> acts(w.morphism_count());
    for (int f = 0; f < w.morphism_count(); ++f) {
        const int a = w.src(f);
        const int b = w.dst(f);
        for (int e = 0; e < x.size(b); ++e)
            acts[f].push_back(x.apply(f, e));
        for (int e = 0; e < y.size(b); ++e)
            acts[f].push_back(x.size(a) + y.apply(f, e));
    }
    return FinPresheaf(x.window_ptr(), std::move(sizes), std::move(acts), x.presented() && y.presented());
}

inline PresheafMap coproduct_injection(const FinPresheaf& x, const FinPresheaf& y, int which)
{
    PresheafMap m;
    for (int a = 0; a < x.window().object_count(); ++a) {
        m.comp.emplace_back();
        const int n = which == 0 ? x.size(a) : y.size(a);
        for (int e = 0; e < n; ++e)
            m.comp.back().push_back(which == 0 ? e : x.size(a) + e);
    }
    return m;
}

/// Levelwise subset closed under the action; also returns the inclusion.
struct Sub {
    FinPresheaf presheaf;
    PresheafMap inclusion;
};

template <class Keep>
Sub subpresheaf(const FinPresheaf& x, Keep&& keep)
{
    const Window& w = x.window();
    std::vector<std::vector<int>> members(w.object_count());
    std::vector<std::vector<int>> pos(w.object_count());
    for (int a = 0; a < w.object_count(); ++a) {
        pos[a].assign(x.size(a), -1);
        for (int e = 0; e < x.size(a); ++e)
            if (keep(a, e)) {
                pos[a][e] = static_cast<int>(members[a].size());
                members[a].push_back(e);
            }
    }
    std::vector<int> sizes(w.object_count());
    for (int a = 0; a < w.object_count(); ++a)
        sizes[a] = static_cast<int>(members[a].size());
    std::vector<std::vector<int>> acts(w.morphism_count());
    for (int f = 0; f < w.morphism_count(); ++f) {
        const int a = w.src(f);
        const int b = w.dst(f);
        for (int e : members[b]) {
            const int img = pos[a][x.apply(f, e)];
            if (img < 0)
                throw InvariantViolation("subset at " + w.object(b).str() + " is not closed under " +
                                         w.morphism(f).to_string());
            acts[f].push_back(img);
        }
    }
    Sub out{FinPresheaf(x.window_ptr(), std::move(sizes), std::move(acts), false), PresheafMap{std::move(members)}};
    if (x.has_labels()) {
        std::vector<std::vector<std::string>> labels(w.object_count());
        for (int a = 0; a < w.object_count(); ++a)
            for (int e : out.inclusion.comp[a])
                labels[a].push_back(x.label(a, e));
        out.presheaf.set_labels(std::move(labels));
    }
    return out;
}

/// The image of m: X -> Y as a subpresheaf of Y.
inline Sub image(const PresheafMap& m, const FinPresheaf& y)
{
    std::vector<std::vector<char>> hit(y.window().object_count());
    for (int a = 0; a < y.window().object_count(); ++a) {
        hit[a].assign(y.size(a), 0);
        for (int v : m.comp[a])
            hit[a][v] = 1;
    }
    return subpresheaf(y, [&](int a, int e) { return hit[a][e] != 0; });
}

/// A diagram of presheaves on a shared window.
struct Diagram {
    struct Arrow {
        int from;
        int to;
        PresheafMap map;
    };
    std::vector<const FinPresheaf*> nodes;
    std::vector<Arrow> arrows;
};

struct Colimit {
    FinPresheaf presheaf;
    std::vector<PresheafMap> legs;
};

/// Levelwise quotient of the disjoint union; classes are ordered by their
/// least (node, element) representative.
inline Colimit colimit(const Diagram& d, const Window::Ptr& w)
{
    for (const auto* x : d.nodes)
        if (&x->window() != w.get())
            throw ArgumentError("colimit: presheaves live on different windows");
    const int objs = w->object_count();
    const int nodes = static_cast<int>(d.nodes.size());
    std::vector<std::vector<int>> offset(objs, std::vector<int>(nodes + 1, 0));
    std::vector<std::vector<int>> cls(objs);
    std::vector<int> sizes(objs);
    for (int a = 0; a < objs; ++a) {
        for (int v = 0; v < nodes; ++v)
            offset[a][v + 1] = offset[a][v] + d.nodes[v]->size(a);
        const int total = offset[a][nodes];
        std::vector<int> parent(total);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int u) {
            while (parent[u] != u)
                u = parent[u] = parent[parent[u]];
            return u;
        };
        for (const auto& ar : d.arrows)
            for (int e = 0; e < d.nodes[ar.from]->size(a); ++e) {
                int u = find(offset[a][ar.from] + e);
                int v = find(offset[a][ar.to] + ar.map.comp[a][e]);
                if (u != v)
                    parent[std::max(u, v)] = std::min(u, v);
            }
        cls[a].assign(total, -1);
        std::vector<int> root_class(total, -1);
        int next = 0;
        for (int u = 0; u < total; ++u) {
            const int r = find(u);
            if (root_class[r] < 0)
                root_class[r] = next++;
            cls[a][u] = root_class[r];
        }
        sizes[a] = next;
    }
    std::vector<std::vector<int>> acts(w->morphism_count());
    for (int f = 0; f < w->morphism_count(); ++f) {
        const int a = w->src(f);
        const int b = w->dst(f);
        acts[f].assign(sizes[b], -1);
        for (int v = 0; v < nodes; ++v)
            for (int e = 0; e < d.nodes[v]->size(b); ++e) {
                const int c = cls[b][offset[b][v] + e];
                const int img = cls[a][offset[a][v] + d.nodes[v]->apply(f, e)];
                if (acts[f][c] < 0)
                    acts[f][c] = img;
                else if (acts[f][c] != img)
                    throw InvariantViolation("colimit diagram is not natural");
            }
    }
    bool presented = true;
    for (const auto* x : d.nodes)
        presented = presented && x->presented();
    Colimit out{FinPresheaf(w, std::move(sizes), std::move(acts), presented), {}};
    for (int v = 0; v < nodes; ++v) {
        PresheafMap leg;
        for (int a = 0; a < objs; ++a) {
            leg.comp.emplace_back();
            for (int e = 0; e < d.nodes[v]->size(a); ++e)
                leg.comp.back().push_back(cls[a][offset[a][v] + e]);
        }
        out.legs.push_back(std::move(leg));
    }
    return out;
}

/// Pushout of B <- A -> C; legs are (B, C).
inline Colimit pushout(const FinPresheaf& a, const FinPresheaf& b, const FinPresheaf& c, const PresheafMap& f,
                       const PresheafMap& g)
{
    Diagram d;
    d.nodes = {&b, &c, &a};
    d.arrows = {{2, 0, f}, {2, 1, g}};
    Colimit out = colimit(d, a.window_ptr());
    out.legs.pop_back();
    return out;
}

struct Limit {
    FinPresheaf presheaf;
    std::vector<PresheafMap> legs;
};

/// Levelwise compatible families; families are ordered lexicographically.
inline Limit limit(const Diagram& d, const Window::Ptr& w)
{
    const int objs = w->object_count();
    const int nodes = static_cast<int>(d.nodes.size());
    std::vector<std::vector<std::vector<int>>> fam(objs);
    for (int a = 0; a < objs; ++a) {
        std::vector<int> cur(nodes, -1);
        auto rec = [&](auto&& self, int v) -> void {
            if (v == nodes) {
                fam[a].push_back(cur);
                return;
            }
            for (int e = 0; e < d.nodes[v]->size(a); ++e) {
                cur[v] = e;
                bool ok = true;
                for (const auto& ar : d.arrows)
                    if (ar.from <= v && ar.to <= v && ar.map.comp[a][cur[ar.from]] != cur[ar.to]) {
                        ok = false;
                        break;
                    }
                if (ok)
                    self(self, v + 1);
            }
            cur[v] = -1;
        };
        rec(rec, 0);
    }
    Limit out{FinPresheaf::tabulate<std::vector<int>>(
                  w, [&](int a) { return fam[a]; },
                  [&](int f, const std::vector<int>& fm) {
                      std::vector<int> r(nodes);
                      for (int v = 0; v < nodes; ++v)
                          r[v] = d.nodes[v]->apply(f, fm[v]);
                      return r;
                  }),
              {}};
    for (int v = 0; v < nodes; ++v) {
        PresheafMap leg;
        for (int a = 0; a < objs; ++a) {
            leg.comp.emplace_back();
            for (const auto& fm : fam[a])
                leg.comp.back().push_back(fm[v]);
        }
        out.legs.push_back(std::move(leg));
    }
    return out;
}

/// Pullback of X -> Z <- Y; legs are (X, Y).
inline Limit pullback(const FinPresheaf& x, const FinPresheaf& y, const FinPresheaf& z, const PresheafMap& f,
                      const PresheafMap& g)
{
    Diagram d;
    d.nodes = {&x, &y, &z};
    PresheafMap h;
    for (int a = 0; a < x.window().object_count(); ++a) {
        h.comp.emplace_back();
        for (int e = 0; e < x.size(a); ++e)
            h.comp.back().push_back(f.comp[a][e]);
    }
    d.arrows = {{0, 2, std::move(h)}, {1, 2, g}};
    Limit out = limit(d, x.window_ptr());
    out.legs.pop_back();
    return out;
}

/// X(terminal).
inline std::vector<std::string> global_sections(const FinPresheaf& x)
{
    const int t = x.window().terminal();
    std::vector<std::string> out;
    for (int e = 0; e < x.size(t); ++e)
        out.push_back(x.label(t, e));
    return out;
}

/// Enumerates natural maps A -> X; the callback returns false to stop.
/// A must be window-presented so that the answer is the hom in all presheaves.
inline std::uint64_t nat_hom(const FinPresheaf& a, const FinPresheaf& x,
                             const std::function<bool(const PresheafMap&)>& visit = {})
{
    require_same_window(a, x);
    if (!a.presented())
        throw WindowExhausted("nat_hom source is not window-presented", "source presheaf");
    const Window& w = a.window();
    const int objs = w.object_count();
    PresheafMap cur;
    for (int o = 0; o < objs; ++o)
        cur.comp.emplace_back(a.size(o), -1);
    // branch points: larger objects first
    std::vector<std::pair<int, int>> order;
    for (int o = objs - 1; o >= 0; --o)
        for (int e = 0; e < a.size(o); ++e)
            order.emplace_back(o, e);
    std::uint64_t count = 0;
    bool stop = false;
    std::vector<std::pair<int, int>> trail;
    auto assign = [&](int b, int e, int v) -> bool {
        // set cur[b][e] = v and propagate along every morphism into b
        std::size_t mark = trail.size();
        for (int f : w.into(b)) {
            const int src = w.src(f);
            const int ae = a.apply(f, e);
            const int xv = x.apply(f, v);
            int& slot = cur.comp[src][ae];
            if (slot < 0) {
                slot = xv;
                trail.emplace_back(src, ae);
            } else if (slot != xv) {
                while (trail.size() > mark) {
                    cur.comp[trail.back().first][trail.back().second] = -1;
                    trail.pop_back();
                }
                return false;
            }
        }
        return true;
    };
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        while (idx < order.size() && cur.comp[order[idx].first][order[idx].second] >= 0)
            ++idx;
        if (idx == order.size()) {
            ++count;
            if (visit && !visit(cur))
                stop = true;
            return;
        }
        const auto [b, e] = order[idx];
        for (int v = 0; v < x.size(b) && !stop; ++v) {
            const std::size_t mark = trail.size();
            if (!assign(b, e, v))
                continue;
            self(self, idx + 1);
            while (trail.size() > mark) {
                cur.comp[trail.back().first][trail.back().second] = -1;
                trail.pop_back();
            }
        }
    };
    rec(rec, 0);
    return count;
}

/// Restriction to a smaller window of the same level.
inline FinPresheaf restrict_to(const FinPresheaf& x, const Window::Ptr& smaller)
{
    const Window& w = x.window();
    if (smaller->level() != w.level() || smaller->bound() > w.bound())
        throw ArgumentError("restriction needs a smaller window of the same level");
    std::vector<int> sizes(smaller->object_count());
    for (int a = 0; a < smaller->object_count(); ++a)
        sizes[a] = x.size(w.require(smaller->object(a)));
    std::vector<std::vector<int>> acts(smaller->morphism_count());
    for (int f = 0; f < smaller->morphism_count(); ++f)
        acts[f] = x.action(w.rank(smaller->morphism(f)));
    FinPresheaf out(smaller, std::move(sizes), std::move(acts), false);
    if (x.has_labels()) {
        std::vector<std::vector<std::string>> labels(smaller->object_count());
        for (int a = 0; a < smaller->object_count(); ++a)
            for (int e = 0; e < out.size(a); ++e)
                labels[a].push_back(x.label(w.require(smaller->object(a)), e));
        out.set_labels(std::move(labels));
    }
    return out;
}

} // namespace thetakit

#endif // THETAKIT_PRESHEAF_HPP
