#ifndef THETAKIT_QPATHS_HPP
#define THETAKIT_QPATHS_HPP

// Lattice-path posets Q_{m,n}, the subposets cut out by a pair alpha, the
// retraction chain contracting Q_{m,n}, the poset P_K of a cover, and
// set-level colimit comparisons for the main square.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "delta.hpp"
#include "errors.hpp"
#include "homology.hpp"
#include "intertwine.hpp"
#include "presheaf.hpp"
#include "window.hpp"

namespace thetakit {

/// A path from (0,0) to (m,n) with steps R = (1,0), U = (0,1), D = (1,1);
/// equivalently a jointly injective pair of surjections out of [p].
struct QObject {
    int m = 0;
    int n = 0;
    std::vector<std::pair<int, int>> points;

    int p() const { return static_cast<int>(points.size()) - 1; }

    MonotoneMap delta1() const
    {
        std::vector<int> v;
        for (auto [x, y] : points)
            v.push_back(x);
        return MonotoneMap(m, v);
    }

    MonotoneMap delta2() const
    {
        std::vector<int> v;
        for (auto [x, y] : points)
            v.push_back(y);
        return MonotoneMap(n, v);
    }

    std::string steps() const
    {
        std::string s;
        for (int i = 1; i <= p(); ++i) {
            const int dx = points[i].first - points[i - 1].first;
            const int dy = points[i].second - points[i - 1].second;
            s += dx == 1 && dy == 1 ? 'D' : dx == 1 ? 'R' : 'U';
        }
        return s;
    }

    bool contains(std::pair<int, int> pt) const { return std::binary_search(points.begin(), points.end(), pt); }

    static QObject from_steps(int m, int n, const std::string& s)
    {
        QObject q;
        q.m = m;
        q.n = n;
        q.points.emplace_back(0, 0);
        for (char c : s) {
            auto [x, y] = q.points.back();
            if (c == 'R')
                q.points.emplace_back(x + 1, y);
            else if (c == 'U')
                q.points.emplace_back(x, y + 1);
            else if (c == 'D')
                q.points.emplace_back(x + 1, y + 1);
            else
                throw ParseError("path steps are R, U or D", static_cast<std::size_t>(&c - s.data()));
        }
        if (q.points.back() != std::pair{m, n})
            throw ArgumentError("path " + s + " does not end at (" + std::to_string(m) + "," + std::to_string(n) + ")");
        return q;
    }

    static QObject from_maps(const MonotoneMap& d1, const MonotoneMap& d2)
    {
        if (d1.src_rank() != d2.src_rank())
            throw ArgumentError("Q objects need a common source");
        QObject q;
        q.m = d1.dst_rank();
        q.n = d2.dst_rank();
        for (int i = 0; i <= d1.src_rank(); ++i)
            q.points.emplace_back(d1(i), d2(i));
        if (q.points.front() != std::pair{0, 0} || q.points.back() != std::pair{q.m, q.n})
            throw ArgumentError("Q objects need surjective maps");
        for (int i = 1; i < static_cast<int>(q.points.size()); ++i) {
            const int dx = q.points[i].first - q.points[i - 1].first;
            const int dy = q.points[i].second - q.points[i - 1].second;
            if (dx < 0 || dy < 0 || dx > 1 || dy > 1 || dx + dy == 0)
                throw ArgumentError("Q objects need surjective, jointly injective maps");
        }
        return q;
    }
};

struct QPoset {
    int m = 0;
    int n = 0;
    std::vector<QObject> elements;
    FinitePoset order;
    std::map<std::string, int> index;

    int find(const std::string& steps) const
    {
        auto it = index.find(steps);
        return it == index.end() ? -1 : it->second;
    }

    int find(const QObject& q) const { return find(q.steps()); }
};

namespace detail {

inline bool points_subset(const QObject& a, const QObject& b)
{
    return std::includes(b.points.begin(), b.points.end(), a.points.begin(), a.points.end());
}

inline FinitePoset inclusion_order(const std::vector<QObject>& els)
{
    FinitePoset p;
    p.size = static_cast<int>(els.size());
    p.leq.assign(p.size, std::vector<char>(p.size, 0));
    for (int a = 0; a < p.size; ++a)
        for (int b = 0; b < p.size; ++b)
            p.leq[a][b] = points_subset(els[a], els[b]);
    return p;
}

} // namespace detail

/// All paths, in lexicographic order of their step strings (D < R < U).
inline QPoset enumerate_Q(int m, int n)
{
    if (m < 0 || n < 0)
        throw ArgumentError("Q_{m,n} needs m, n >= 0");
    QPoset q;
    q.m = m;
    q.n = n;
    std::string s;
    auto rec = [&](auto&& self, int x, int y) -> void {
        if (x == m && y == n) {
            q.elements.push_back(QObject::from_steps(m, n, s));
            return;
        }
        if (x < m && y < n) {
            s.push_back('D');
            self(self, x + 1, y + 1);
            s.pop_back();
        }
        if (x < m) {
            s.push_back('R');
            self(self, x + 1, y);
            s.pop_back();
        }
        if (y < n) {
            s.push_back('U');
            self(self, x, y + 1);
            s.pop_back();
        }
    };
    rec(rec, 0, 0);
    for (int i = 0; i < static_cast<int>(q.elements.size()); ++i)
        q.index.emplace(q.elements[i].steps(), i);
    q.order = detail::inclusion_order(q.elements);
    return q;
}

/// D(m,n) = D(m-1,n) + D(m,n-1) + D(m-1,n-1).
inline std::uint64_t delannoy(int m, int n)
{
    std::vector<std::vector<std::uint64_t>> t(m + 1, std::vector<std::uint64_t>(n + 1, 1));
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j)
            t[i][j] = t[i - 1][j] + t[i][j - 1] + t[i - 1][j - 1];
    return t[m][n];
}

/// G_delta(alpha): the gamma with delta_1 gamma = alpha_1 and delta_2 gamma =
/// alpha_2, when every alpha-point lies on the path.
inline std::optional<MonotoneMap> g_delta_alpha(const QObject& d, const MonotoneMap& a1, const MonotoneMap& a2)
{
    if (a1.src_rank() != a2.src_rank() || a1.dst_rank() != d.m || a2.dst_rank() != d.n)
        throw ArgumentError("alpha does not match the path");
    std::vector<int> g;
    for (int i = 0; i <= a1.src_rank(); ++i) {
        auto it = std::lower_bound(d.points.begin(), d.points.end(), std::pair{a1(i), a2(i)});
        if (it == d.points.end() || *it != std::pair{a1(i), a2(i)})
            return std::nullopt;
        g.push_back(static_cast<int>(it - d.points.begin()));
    }
    return MonotoneMap(d.p(), g);
}

/// The morphism gamma: [p] -> [p'] witnessing a <= b, when it exists.
inline std::optional<MonotoneMap> order_witness(const QObject& a, const QObject& b)
{
    return g_delta_alpha(b, a.delta1(), a.delta2());
}

/// Paths through every alpha-point, as indices into Q.
inline std::vector<int> subposet_Q_alpha(const QPoset& q, const MonotoneMap& a1, const MonotoneMap& a2)
{
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(q.elements.size()); ++i)
        if (g_delta_alpha(q.elements[i], a1, a2))
            out.push_back(i);
    return out;
}

/// Distinct alpha-points in order, after the image surjection.
inline std::vector<std::pair<int, int>> alpha_points(const MonotoneMap& a1, const MonotoneMap& a2)
{
    std::vector<std::pair<int, int>> pts;
    for (int i = 0; i <= a1.src_rank(); ++i)
        if (pts.empty() || pts.back() != std::pair{a1(i), a2(i)})
            pts.emplace_back(a1(i), a2(i));
    return pts;
}

struct AlphaProductReport {
    std::vector<std::pair<int, int>> segments;
    std::size_t subposet_size = 0;
    std::size_t product_size = 0;
    bool bijective = false;
    bool order_iso = false;

    bool ok() const { return bijective && order_iso; }
};

/// Q_{m,n,alpha} against the product of the Q_{m_j,n_j} of its segments,
/// as posets.
inline AlphaProductReport check_alpha_product(int m, int n, const MonotoneMap& a1, const MonotoneMap& a2)
{
    AlphaProductReport rep;
    const QPoset q = enumerate_Q(m, n);
    const std::vector<int> sub = subposet_Q_alpha(q, a1, a2);
    rep.subposet_size = sub.size();
    std::vector<std::pair<int, int>> cuts{{0, 0}};
    for (auto pt : alpha_points(a1, a2))
        cuts.push_back(pt);
    cuts.emplace_back(m, n);
    std::vector<QPoset> parts;
    std::vector<FinitePoset> orders;
    for (std::size_t j = 1; j < cuts.size(); ++j) {
        const int dm = cuts[j].first - cuts[j - 1].first;
        const int dn = cuts[j].second - cuts[j - 1].second;
        rep.segments.emplace_back(dm, dn);
        parts.push_back(enumerate_Q(dm, dn));
        orders.push_back(parts.back().order);
    }
    const FinitePoset prod = product_poset(orders);
    rep.product_size = static_cast<std::size_t>(prod.size);
    // path -> tuple of segment paths, read off the step string between cuts
    std::vector<int> image;
    for (int e : sub) {
        const QObject& path = q.elements[e];
        int code = 0;
        std::size_t at = 0;
        for (std::size_t j = 1; j < cuts.size(); ++j) {
            std::size_t from = at;
            while (path.points[at] != cuts[j])
                ++at;
            std::string seg = path.steps().substr(from, at - from);
            const int idx = parts[j - 1].find(seg);
            code = code * parts[j - 1].order.size + idx;
        }
        image.push_back(code);
    }
    std::vector<int> sorted = image;
    std::sort(sorted.begin(), sorted.end());
    rep.bijective = sub.size() == rep.product_size &&
                    std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    rep.order_iso = rep.bijective;
    for (std::size_t a = 0; a < sub.size() && rep.order_iso; ++a)
        for (std::size_t b = 0; b < sub.size() && rep.order_iso; ++b)
            rep.order_iso = q.order.le(sub[a], sub[b]) == prod.le(image[a], image[b]);
    return rep;
}

struct RetractionStep {
    std::string name;       // "r_k" or "r'_k"
    std::vector<int> domain; // indices into Q
    std::vector<int> codomain;
    std::vector<int> map;    // on domain positions, as indices into Q
    RetractionDirection direction = RetractionDirection::above;
};

/// X_k: paths avoiding (i, n) for i < k.
inline std::vector<int> q_subposet_X(const QPoset& q, int k)
{
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(q.elements.size()); ++e) {
        bool ok = true;
        for (int i = 0; i < k && ok; ++i)
            ok = !q.elements[e].contains({i, q.n});
        if (ok)
            out.push_back(e);
    }
    return out;
}

/// Y_k: elements of X_k that reach (k, n) only through (k, n-1).
inline std::vector<int> q_subposet_Y(const QPoset& q, int k)
{
    std::vector<int> out;
    for (int e : q_subposet_X(q, k)) {
        const QObject& p = q.elements[e];
        if (!p.contains({k, q.n}) || p.contains({k, q.n - 1}))
            out.push_back(e);
    }
    return out;
}

/// Q_{m,n} = X_0 -> Y_0 -> X_1 -> ... -> X_m -> Y_m, with r_k: X_k -> Y_k
/// splitting the diagonal into (k, n) and r'_k: Y_k -> X_{k+1} merging the
/// two moves through (k, n) into a diagonal.
inline std::vector<RetractionStep> retraction_chain(const QPoset& q)
{
    if (q.n < 1)
        throw ArgumentError("the retraction chain needs n >= 1");
    const int m = q.m;
    const int n = q.n;
    std::vector<RetractionStep> out;
    for (int k = 0; k <= m; ++k) {
        RetractionStep r;
        r.name = "r_" + std::to_string(k);
        r.domain = q_subposet_X(q, k);
        r.codomain = q_subposet_Y(q, k);
        r.direction = RetractionDirection::above;
        for (int e : r.domain) {
            QObject p = q.elements[e];
            auto it = std::find(p.points.begin(), p.points.end(), std::pair{k, n});
            if (it != p.points.end() && it != p.points.begin() && *(it - 1) == std::pair{k - 1, n - 1})
                p.points.insert(it, {k, n - 1});
            r.map.push_back(q.find(p));
        }
        out.push_back(std::move(r));
        if (k == m)
            break;
        RetractionStep s;
        s.name = "r'_" + std::to_string(k);
        s.domain = q_subposet_Y(q, k);
        s.codomain = q_subposet_X(q, k + 1);
        s.direction = RetractionDirection::below;
        for (int e : s.domain) {
            QObject p = q.elements[e];
            auto it = std::find(p.points.begin(), p.points.end(), std::pair{k, n});
            if (it != p.points.end())
                p.points.erase(it);
            s.map.push_back(q.find(p));
        }
        out.push_back(std::move(s));
    }
    return out;
}

/// Certifies one step as a retraction of posets.
inline RetractionCertificate certify_step(const QPoset& q, const RetractionStep& step)
{
    const FinitePoset dom = q.order.restrict_to(step.domain);
    std::map<int, int> pos;
    for (int i = 0; i < static_cast<int>(step.domain.size()); ++i)
        pos[step.domain[i]] = i;
    std::vector<int> sub;
    for (int e : step.codomain) {
        if (!pos.count(e))
            throw InvariantViolation(step.name + " codomain is not inside its domain");
        sub.push_back(pos[e]);
    }
    std::vector<int> r;
    for (int e : step.map)
        r.push_back(e < 0 || !pos.count(e) ? -1 : pos[e]);
    return certify_retraction(dom, sub, r, step.direction);
}

/// Whether the given subposet of Q_{m,n} is order isomorphic to Q_{m,n-1}
/// by dropping the final point.
inline bool isomorphic_to_lower_row(const QPoset& q, const std::vector<int>& sub)
{
    const QPoset lower = enumerate_Q(q.m, q.n - 1);
    if (sub.size() != lower.elements.size())
        return false;
    std::vector<int> image;
    for (int e : sub) {
        const QObject& p = q.elements[e];
        if (p.points.size() < 2 || p.points[p.points.size() - 2] != std::pair{q.m, q.n - 1})
            return false;
        image.push_back(lower.find(p.steps().substr(0, p.steps().size() - 1)));
    }
    std::vector<int> sorted = image;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return false;
    for (std::size_t a = 0; a < sub.size(); ++a)
        for (std::size_t b = 0; b < sub.size(); ++b)
            if (q.order.le(sub[a], sub[b]) != lower.order.le(image[a], image[b]))
                return false;
    return true;
}

/// The inputs A_1..A_m, B_1..B_n live on the window one level below w.
struct SquareInputs {
    Window::Ptr w;
    std::vector<const FinPresheaf*> as;
    std::vector<const FinPresheaf*> bs;
    SimplicialSubset mcover;
    SimplicialSubset ncover;
};

/// The main square for one path: the D_i, both rows and the maps g, g', f, f'.
struct MainSquare {
    QObject path;
    std::vector<int> kind; // per step: 0 = A, 1 = B, 2 = A x B
    std::vector<FinPresheaf> d;
    SimplicialSubset cover{0};
    VPresheaf top_left;    // V_L(D), L the pullback of M x N
    VPresheaf bottom_left; // V[p](D)
    PresheafMap g;         // into V_M(A) x V_N(B)
    PresheafMap g_prime;   // into V[m](A) x V[n](B)
    PresheafMap f;         // top_left -> bottom_left
};

struct SquareTargets {
    VPresheaf vm;
    VPresheaf vn;
    VPresheaf va;
    VPresheaf vb;
    FinPresheaf top_right;
    FinPresheaf bottom_right;
    PresheafMap f_prime;
};

inline SquareTargets square_targets(const SquareInputs& in)
{
    SquareTargets t;
    t.vm = v_subobject(in.w, in.as, &in.mcover);
    t.vn = v_subobject(in.w, in.bs, &in.ncover);
    t.va = v_object(in.w, in.as);
    t.vb = v_object(in.w, in.bs);
    t.top_right = product(t.vm.presheaf, t.vn.presheaf);
    t.bottom_right = product(t.va.presheaf, t.vb.presheaf);
    PresheafMap im = v_map(t.vm, t.va, MonotoneMap::identity(t.vm.m), v_identity_component);
    PresheafMap in_n = v_map(t.vn, t.vb, MonotoneMap::identity(t.vn.m), v_identity_component);
    PresheafMap p1 = compose_maps(im, product_projection(t.vm.presheaf, t.vn.presheaf, 0));
    PresheafMap p2 = compose_maps(in_n, product_projection(t.vm.presheaf, t.vn.presheaf, 1));
    t.f_prime = product_pairing(p1, p2, t.vb.presheaf);
    return t;
}

namespace detail {

/// Component of the step-j factor onto a factor of kind `to`; x encodes an
/// element of D_j at lower object c.
inline int project_factor(int from, int to, int b_size, int x)
{
    if (from == to)
        return x;
    if (from != 2)
        throw InvariantViolation("projection between incompatible factors");
    return to == 0 ? x / b_size : x % b_size;
}

/// |B_{delta_2(j)}(c)| when step j is diagonal, else unused.
inline int diagonal_b_size(const std::vector<int>& kind, const MonotoneMap& d2,
                           const std::vector<const FinPresheaf*>& bs, int j, int c)
{
    return kind[j - 1] == 2 ? bs[d2(j) - 1]->size(c) : 1;
}

} // namespace detail

inline MainSquare main_square(const SquareInputs& in, const SquareTargets& t, const QObject& path)
{
    const int m = static_cast<int>(in.as.size());
    const int n = static_cast<int>(in.bs.size());
    if (path.m != m || path.n != n)
        throw ArgumentError("path does not match the inputs");
    MainSquare sq;
    sq.path = path;
    const MonotoneMap d1 = path.delta1();
    const MonotoneMap d2 = path.delta2();
    const int p = path.p();
    sq.d.reserve(p);
    for (int i = 1; i <= p; ++i) {
        const bool right = d1(i) > d1(i - 1);
        const bool up = d2(i) > d2(i - 1);
        if (right && up) {
            sq.kind.push_back(2);
            sq.d.push_back(product(*in.as[d1(i) - 1], *in.bs[d2(i) - 1]));
        } else if (right) {
            sq.kind.push_back(0);
            sq.d.push_back(*in.as[d1(i) - 1]);
        } else {
            sq.kind.push_back(1);
            sq.d.push_back(*in.bs[d2(i) - 1]);
        }
    }
    std::vector<const FinPresheaf*> dp;
    for (const auto& x : sq.d)
        dp.push_back(&x);
    sq.cover = product_pullback_cover(d1, d2, in.mcover, in.ncover);
    sq.bottom_left = v_object(in.w, dp);
    sq.top_left = v_subobject(in.w, dp, &sq.cover);
    auto onto = [&](int want) {
        return [&, want](int j, int, int c, int x) {
            return detail::project_factor(sq.kind[j - 1], want, detail::diagonal_b_size(sq.kind, d2, in.bs, j, c), x);
        };
    };
    PresheafMap to_a = v_map(sq.bottom_left, t.va, d1, onto(0));
    PresheafMap to_b = v_map(sq.bottom_left, t.vb, d2, onto(1));
    sq.g_prime = product_pairing(to_a, to_b, t.vb.presheaf);
    PresheafMap to_m = v_map(sq.top_left, t.vm, d1, onto(0));
    PresheafMap to_n = v_map(sq.top_left, t.vn, d2, onto(1));
    sq.g = product_pairing(to_m, to_n, t.vn.presheaf);
    sq.f = v_map(sq.top_left, sq.bottom_left, MonotoneMap::identity(p), v_identity_component);
    return sq;
}

/// f' g = g' f.
inline bool square_commutes(const MainSquare& sq, const SquareTargets& t)
{
    return compose_maps(t.f_prime, sq.g).comp == compose_maps(sq.g_prime, sq.f).comp;
}

/// |D(alpha)(theta)| = prod_i (prod_j A_j(c_i) x prod_k B_k(c_i)).
inline std::uint64_t d_alpha_size(const SquareInputs& in, int theta, const MonotoneMap& a1, const MonotoneMap& a2)
{
    const Window& w = *in.w;
    std::uint64_t out = 1;
    for (int i = 1; i <= a1.src_rank(); ++i) {
        const int c = w.child(theta, i);
        for (int j = a1(i - 1) + 1; j <= a1(i); ++j)
            out *= static_cast<std::uint64_t>(in.as[j - 1]->size(c));
        for (int k = a2(i - 1) + 1; k <= a2(i); ++k)
            out *= static_cast<std::uint64_t>(in.bs[k - 1]->size(c));
    }
    return out;
}

struct AlphaCountReport {
    bool bottom_ok = true;
    bool top_ok = true;
    std::string witness;

    bool ok() const { return bottom_ok && top_ok; }
};

/// The four corners at theta against the coproducts over alpha of
/// D(alpha) x G_delta(alpha) and D(alpha), the top row restricted to alpha
/// in M x N.
inline AlphaCountReport check_square_alpha_counts(const SquareInputs& in, const SquareTargets& t, const MainSquare& sq,
                                                  int theta)
{
    AlphaCountReport rep;
    const int q = in.w->arity(theta);
    const int m = sq.path.m;
    const int n = sq.path.n;
    std::uint64_t bl = 0, br = 0, tl = 0, tr = 0;
    for (const auto& a1 : enumerate_delta(q, m))
        for (const auto& a2 : enumerate_delta(q, n)) {
            const std::uint64_t dsz = d_alpha_size(in, theta, a1, a2);
            const bool g = g_delta_alpha(sq.path, a1, a2).has_value();
            const bool in_mn = in.mcover.contains(a1) && in.ncover.contains(a2);
            br += dsz;
            bl += g ? dsz : 0;
            tr += in_mn ? dsz : 0;
            tl += g && in_mn ? dsz : 0;
        }
    rep.bottom_ok = bl == static_cast<std::uint64_t>(sq.bottom_left.presheaf.size(theta)) &&
                    br == static_cast<std::uint64_t>(t.bottom_right.size(theta));
    rep.top_ok = tl == static_cast<std::uint64_t>(sq.top_left.presheaf.size(theta)) &&
                 tr == static_cast<std::uint64_t>(t.top_right.size(theta));
    if (!rep.ok())
        rep.witness = "at " + in.w->object(theta).str() + ": bottom " + std::to_string(bl) + "/" + std::to_string(br) +
                      " top " + std::to_string(tl) + "/" + std::to_string(tr);
    return rep;
}

struct ColimCompareReport {
    bool top_bijective = false;
    bool bottom_bijective = false;
    std::vector<int> top_sizes;
    std::vector<int> bottom_sizes;
    std::string witness;

    bool ok() const { return top_bijective && bottom_bijective; }
};

/// The colimits over Q_{m,n} of both rows against V_M(A) x V_N(B) and
/// V[m](A) x V[n](B).
inline ColimCompareReport colim_compare(const SquareInputs& in)
{
    ColimCompareReport rep;
    const int m = static_cast<int>(in.as.size());
    const int n = static_cast<int>(in.bs.size());
    const QPoset q = enumerate_Q(m, n);
    const SquareTargets t = square_targets(in);
    std::vector<MainSquare> squares;
    squares.reserve(q.elements.size());
    for (const auto& path : q.elements) {
        squares.push_back(main_square(in, t, path));
        if (!square_commutes(squares.back(), t))
            throw InvariantViolation("main square does not commute at " + path.steps());
    }
    Diagram bottom;
    Diagram top;
    for (const auto& sq : squares) {
        bottom.nodes.push_back(&sq.bottom_left.presheaf);
        top.nodes.push_back(&sq.top_left.presheaf);
    }
    const int size = q.order.size;
    for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b) {
            if (!q.order.lt(a, b))
                continue;
            bool cover = true;
            for (int c = 0; c < size && cover; ++c)
                cover = !(q.order.lt(a, c) && q.order.lt(c, b));
            if (!cover)
                continue;
            const MainSquare& sa = squares[a];
            const MainSquare& sb = squares[b];
            const MonotoneMap gamma = *order_witness(sa.path, sb.path);
            const MonotoneMap d2 = sa.path.delta2();
            auto comp = [&](int j, int k, int c, int x) {
                return detail::project_factor(sa.kind[j - 1], sb.kind[k - 1],
                                              detail::diagonal_b_size(sa.kind, d2, in.bs, j, c), x);
            };
            bottom.arrows.push_back({a, b, v_map(sa.bottom_left, sb.bottom_left, gamma, comp)});
            top.arrows.push_back({a, b, v_map(sa.top_left, sb.top_left, gamma, comp)});
        }
    auto compare = [&](const Diagram& dg, bool use_top, const FinPresheaf& target, std::vector<int>& sizes) {
        Colimit c = colimit(dg, in.w);
        std::vector<PresheafMap> legs;
        for (const auto& sq : squares)
            legs.push_back(use_top ? sq.g : sq.g_prime);
        auto induced = induced_from_colimit(c, legs);
        sizes = c.presheaf.sizes();
        if (!induced)
            return false;
        return is_levelwise_bijective(*induced, target);
    };
    rep.bottom_bijective = compare(bottom, false, t.bottom_right, rep.bottom_sizes);
    rep.top_bijective = compare(top, true, t.top_right, rep.top_sizes);
    if (!rep.ok()) {
        for (int a = 0; a < in.w->object_count() && rep.witness.empty(); ++a) {
            if (!rep.bottom_bijective && rep.bottom_sizes[a] != t.bottom_right.size(a))
                rep.witness = "bottom row at " + in.w->object(a).str() + ": " + std::to_string(rep.bottom_sizes[a]) +
                              " vs " + std::to_string(t.bottom_right.size(a));
            if (!rep.top_bijective && rep.top_sizes[a] != t.top_right.size(a))
                rep.witness = "top row at " + in.w->object(a).str() + ": " + std::to_string(rep.top_sizes[a]) +
                              " vs " + std::to_string(t.top_right.size(a));
        }
        if (rep.witness.empty())
            rep.witness = "colimit comparison is not a bijection";
    }
    return rep;
}

/// P_K: injective sequential delta: [p] -> [m] lying in K, ordered by
/// factorization (inclusion of intervals).
struct PKPoset {
    std::vector<MonotoneMap> elements;
    FinitePoset order;
};

inline PKPoset build_P_K(const SimplicialSubset& k)
{
    const int m = k.ambient_rank();
    PKPoset out;
    for (int p = 0; p <= m; ++p)
        for (int a = 0; a + p <= m; ++a) {
            std::vector<int> v(p + 1);
            for (int i = 0; i <= p; ++i)
                v[i] = a + i;
            MonotoneMap d(m, v);
            if (k.contains(d))
                out.elements.push_back(d);
        }
    const int s = static_cast<int>(out.elements.size());
    out.order.size = s;
    out.order.leq.assign(s, std::vector<char>(s, 0));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            const auto& a = out.elements[i];
            const auto& b = out.elements[j];
            out.order.leq[i][j] = b(0) <= a(0) && a(a.src_rank()) <= b(b.src_rank());
        }
    return out;
}

struct PKReport {
    bool spine_identity = false; // colim V_{delta(G[p])} = V_{G[m]}
    bool cover_identity = false; // colim V_{delta(F[p])} = V_K
    bool literal_identity = false; // colim V_{delta(delta^{-1} K)} = V_{G[m]}
    std::string witness;

    bool ok() const { return spine_identity && cover_identity; }
};

/// Colimits over P_K of subobjects of V[m](A), compared with their targets.
inline PKReport p_k_colim_check(const Window::Ptr& w, const SimplicialSubset& k,
                                const std::vector<const FinPresheaf*>& as)
{
    const int m = k.ambient_rank();
    if (static_cast<int>(as.size()) != m)
        throw ArgumentError("P_K check needs one input per edge of F[m]");
    const PKPoset pk = build_P_K(k);
    PKReport rep;
    auto image_of = [&](const MonotoneMap& d, const SimplicialSubset& sub) {
        std::vector<std::uint32_t> gens;
        const int p = d.src_rank();
        for (std::uint32_t f = 1; f < (std::uint32_t{1} << (p + 1)); ++f)
            if (sub.contains_face(f)) {
                std::uint32_t img = 0;
                for (int b = 0; b <= p; ++b)
                    if ((f >> b) & 1u)
                        img |= std::uint32_t{1} << d(b);
                gens.push_back(img);
            }
        return SimplicialSubset::generated_by(m, gens);
    };
    auto run = [&](auto&& choose, const SimplicialSubset& target_cover, std::string& why) {
        std::vector<SimplicialSubset> covers;
        for (const auto& d : pk.elements)
            covers.push_back(choose(d));
        std::vector<VPresheaf> nodes;
        for (const auto& c : covers)
            nodes.push_back(v_subobject(w, as, &c));
        VPresheaf target = v_subobject(w, as, &target_cover);
        VPresheaf ambient = v_object(w, as);
        Diagram dg;
        for (const auto& v : nodes)
            dg.nodes.push_back(&v.presheaf);
        for (int a = 0; a < pk.order.size; ++a)
            for (int b = 0; b < pk.order.size; ++b)
                if (pk.order.lt(a, b))
                    dg.arrows.push_back(
                        {a, b, v_map(nodes[a], nodes[b], MonotoneMap::identity(m), v_identity_component)});
        Colimit c = colimit(dg, w);
        std::vector<PresheafMap> legs;
        for (const auto& v : nodes)
            legs.push_back(v_map(v, ambient, MonotoneMap::identity(m), v_identity_component));
        auto induced = induced_from_colimit(c, legs);
        if (!induced) {
            why = "legs disagree on the colimit";
            return false;
        }
        // the colimit must be carried bijectively onto the target subobject
        PresheafMap into_ambient = v_map(target, ambient, MonotoneMap::identity(m), v_identity_component);
        for (int a = 0; a < w->object_count(); ++a) {
            std::vector<int> lhs = induced->comp[a];
            std::vector<int> rhs = into_ambient.comp[a];
            std::sort(lhs.begin(), lhs.end());
            std::sort(rhs.begin(), rhs.end());
            if (lhs != rhs) {
                why = "at " + w->object(a).str() + ": " + std::to_string(lhs.size()) + " vs " +
                      std::to_string(rhs.size());
                return false;
            }
        }
        return true;
    };
    const SimplicialSubset spine = SimplicialSubset::spine(m);
    std::string why_spine, why_cover, why_literal;
    rep.spine_identity = run([&](const MonotoneMap& d) { return image_of(d, SimplicialSubset::spine(d.src_rank())); },
                             spine, why_spine);
    rep.cover_identity =
        run([&](const MonotoneMap& d) { return image_of(d, SimplicialSubset::full(d.src_rank())); }, k, why_cover);
    rep.literal_identity =
        run([&](const MonotoneMap& d) { return image_of(d, pullback_cover(d, k)); }, spine, why_literal);
    if (!rep.spine_identity)
        rep.witness = "spine identity " + why_spine;
    else if (!rep.cover_identity)
        rep.witness = "cover identity " + why_cover;
    return rep;
}

} // namespace thetakit

#endif // THETAKIT_QPATHS_HPP
