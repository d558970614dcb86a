#ifndef THETAKIT_NCAT_HPP
#define THETAKIT_NCAT_HPP

// Finite strict n-categories as tables, the wreath construction
// [m](C_1..C_m) with tau as its iterate on trees, strict functor enumeration,
// discrete nerves, and rigidity.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "presheaf.hpp"
#include "theta.hpp"
#include "window.hpp"

namespace thetakit {

/// Cells per dimension 0..n with source, target, identities and the
/// compositions a o_j b (defined when s_j a = t_j b), -1 where undefined.
class StrictNCat {
public:
    StrictNCat() = default;

    explicit StrictNCat(int n) : n_(n), count_(n + 1, 0), src_(n + 1), tgt_(n + 1), id_(n + 1), comp_(n + 1)
    {
        if (n < 0)
            throw ArgumentError("negative dimension");
        for (int d = 0; d <= n; ++d)
            comp_[d].resize(d);
    }

    int dimension() const noexcept { return n_; }
    int count(int d) const { return count_.at(d); }
    int total_cells() const
    {
        int t = 0;
        for (int c : count_)
            t += c;
        return t;
    }

    int source(int d, int x) const { return src_[d][x]; }
    int target(int d, int x) const { return tgt_[d][x]; }
    /// The (d+1)-cell 1_x.
    int identity(int d, int x) const { return id_[d][x]; }
    int compose(int d, int j, int a, int b) const
    {
        return comp_[d][j][static_cast<std::size_t>(a) * count_[d] + b];
    }

    /// Iterated source down to dimension j.
    int source_at(int d, int x, int j) const
    {
        while (d > j)
            x = src_[d--][x];
        return x;
    }
    int target_at(int d, int x, int j) const
    {
        while (d > j)
            x = tgt_[d--][x];
        return x;
    }
    /// Iterated identity from dimension j up to d.
    int identity_up(int j, int x, int d) const
    {
        while (j < d)
            x = id_[j++][x];
        return x;
    }
    bool is_identity(int d, int x) const { return d > 0 && id_[d - 1][src_[d][x]] == x; }

    /// Fills the tables from structure functions on cell indices.
    static StrictNCat tabulate(int n, const std::vector<int>& counts, const std::function<int(int, int)>& s,
                               const std::function<int(int, int)>& t, const std::function<int(int, int)>& id,
                               const std::function<int(int, int, int, int)>& comp)
    {
        StrictNCat c(n);
        c.count_ = counts;
        for (int d = 1; d <= n; ++d)
            for (int x = 0; x < counts[d]; ++x) {
                c.src_[d].push_back(s(d, x));
                c.tgt_[d].push_back(t(d, x));
            }
        for (int d = 0; d < n; ++d)
            for (int x = 0; x < counts[d]; ++x)
                c.id_[d].push_back(id(d, x));
        for (int d = 1; d <= n; ++d)
            for (int j = 0; j < d; ++j) {
                auto& table = c.comp_[d][j];
                table.assign(static_cast<std::size_t>(counts[d]) * counts[d], -1);
                for (int a = 0; a < counts[d]; ++a)
                    for (int b = 0; b < counts[d]; ++b)
                        if (c.source_at(d, a, j) == c.target_at(d, b, j))
                            table[static_cast<std::size_t>(a) * counts[d] + b] = comp(d, j, a, b);
            }
        return c;
    }

    /// Raw construction from explicit tables, as read from files.
    static StrictNCat from_tables(int n, std::vector<int> counts, std::vector<std::vector<int>> src,
                                  std::vector<std::vector<int>> tgt, std::vector<std::vector<int>> id,
                                  std::vector<std::vector<std::vector<int>>> comp)
    {
        StrictNCat c(n);
        c.count_ = std::move(counts);
        c.src_ = std::move(src);
        c.tgt_ = std::move(tgt);
        c.id_ = std::move(id);
        c.comp_ = std::move(comp);
        c.check_shapes();
        return c;
    }

    const std::vector<std::vector<int>>& sources() const noexcept { return src_; }
    const std::vector<std::vector<int>>& targets() const noexcept { return tgt_; }
    const std::vector<std::vector<int>>& identities() const noexcept { return id_; }
    const std::vector<std::vector<std::vector<int>>>& compositions() const noexcept { return comp_; }

    /// Globularity, units, associativity, interchange and compatibility of
    /// identities with composition; exhaustive below `exhaustive_limit` cells.
    std::optional<std::string> check_axioms(int exhaustive_limit = 200, int samples = 20000,
                                            std::uint32_t seed = 3) const
    {
        for (int d = 2; d <= n_; ++d)
            for (int x = 0; x < count_[d]; ++x) {
                if (src_[d - 1][src_[d][x]] != src_[d - 1][tgt_[d][x]] ||
                    tgt_[d - 1][src_[d][x]] != tgt_[d - 1][tgt_[d][x]])
                    return "globularity fails at " + cell_name(d, x);
            }
        for (int d = 0; d < n_; ++d)
            for (int x = 0; x < count_[d]; ++x)
                if (src_[d + 1][id_[d][x]] != x || tgt_[d + 1][id_[d][x]] != x)
                    return "identity of " + cell_name(d, x) + " has the wrong boundary";
        const bool exhaustive = total_cells() <= exhaustive_limit;
        std::mt19937 rng(seed);
        for (int d = 1; d <= n_; ++d) {
            const int nd = count_[d];
            if (nd == 0)
                continue;
            for (int j = 0; j < d; ++j) {
                auto check_pair = [&](int a, int b) -> std::optional<std::string> {
                    const int ab = compose(d, j, a, b);
                    if (ab < 0)
                        return std::nullopt;
                    // boundary of a composite
                    if (j == d - 1) {
                        if (src_[d][ab] != src_[d][b] || tgt_[d][ab] != tgt_[d][a])
                            return "boundary of " + cell_name(d, a) + " o_" + std::to_string(j) + " " + cell_name(d, b);
                    } else if (src_[d][ab] != compose(d - 1, j, src_[d][a], src_[d][b]) ||
                               tgt_[d][ab] != compose(d - 1, j, tgt_[d][a], tgt_[d][b])) {
                        return "boundary of " + cell_name(d, a) + " o_" + std::to_string(j) + " " + cell_name(d, b);
                    }
                    return std::nullopt;
                };
                auto check_unit = [&](int a) -> std::optional<std::string> {
                    const int l = identity_up(j, target_at(d, a, j), d);
                    const int r = identity_up(j, source_at(d, a, j), d);
                    if (compose(d, j, l, a) != a || compose(d, j, a, r) != a)
                        return "unit law fails for " + cell_name(d, a) + " at o_" + std::to_string(j);
                    return std::nullopt;
                };
                auto check_triple = [&](int a, int b, int c) -> std::optional<std::string> {
                    const int ab = compose(d, j, a, b);
                    const int bc = compose(d, j, b, c);
                    if (ab < 0 || bc < 0)
                        return std::nullopt;
                    if (compose(d, j, ab, c) != compose(d, j, a, bc))
                        return "associativity fails at o_" + std::to_string(j) + " in dimension " + std::to_string(d);
                    return std::nullopt;
                };
                if (exhaustive) {
                    for (int a = 0; a < nd; ++a) {
                        if (auto bad = check_unit(a))
                            return bad;
                        for (int b = 0; b < nd; ++b) {
                            if (auto bad = check_pair(a, b))
                                return bad;
                            if (compose(d, j, a, b) < 0)
                                continue;
                            for (int c = 0; c < nd; ++c)
                                if (auto bad = check_triple(a, b, c))
                                    return bad;
                        }
                    }
                } else {
                    std::uniform_int_distribution<int> pick(0, nd - 1);
                    for (int s = 0; s < samples; ++s) {
                        const int a = pick(rng), b = pick(rng), c = pick(rng);
                        if (auto bad = check_unit(a))
                            return bad;
                        if (auto bad = check_pair(a, b))
                            return bad;
                        if (auto bad = check_triple(a, b, c))
                            return bad;
                    }
                }
                // identities compose to identities one dimension up
                if (d < n_) {
                    for (int a = 0; a < nd; ++a)
                        for (int b = 0; b < nd; ++b) {
                            const int ab = compose(d, j, a, b);
                            if (ab >= 0 && compose(d + 1, j, id_[d][a], id_[d][b]) != id_[d][ab])
                                return "identities do not respect o_" + std::to_string(j);
                            if (!exhaustive && b > 64)
                                break;
                        }
                }
                // interchange for j < k < d
                for (int k = j + 1; k < d; ++k) {
                    auto check_ic = [&](int a, int b, int c, int e) -> std::optional<std::string> {
                        const int ab = compose(d, k, a, b);
                        const int ce = compose(d, k, c, e);
                        const int ac = compose(d, j, a, c);
                        const int be = compose(d, j, b, e);
                        if (ab < 0 || ce < 0 || ac < 0 || be < 0)
                            return std::nullopt;
                        if (compose(d, j, ab, ce) != compose(d, k, ac, be))
                            return "interchange fails for o_" + std::to_string(j) + ", o_" + std::to_string(k);
                        return std::nullopt;
                    };
                    if (exhaustive) {
                        for (int a = 0; a < nd; ++a)
                            for (int b = 0; b < nd; ++b) {
                                if (compose(d, k, a, b) < 0)
                                    continue;
                                for (int c = 0; c < nd; ++c) {
                                    if (compose(d, j, a, c) < 0)
                                        continue;
                                    for (int e = 0; e < nd; ++e)
                                        if (auto bad = check_ic(a, b, c, e))
                                            return bad;
                                }
                            }
                    } else {
                        std::uniform_int_distribution<int> pick(0, nd - 1);
                        for (int s = 0; s < samples; ++s)
                            if (auto bad = check_ic(pick(rng), pick(rng), pick(rng), pick(rng)))
                                return bad;
                    }
                }
            }
        }
        return std::nullopt;
    }

    std::string cell_name(int d, int x) const { return std::to_string(d) + "-cell " + std::to_string(x); }

private:
    void check_shapes() const
    {
        if (static_cast<int>(count_.size()) != n_ + 1)
            throw ArgumentError("one cell count per dimension");
        for (int d = 1; d <= n_; ++d) {
            if (static_cast<int>(src_.at(d).size()) != count_[d] || static_cast<int>(tgt_.at(d).size()) != count_[d])
                throw ArgumentError("source/target tables have the wrong size in dimension " + std::to_string(d));
            for (int x = 0; x < count_[d]; ++x)
                if (src_[d][x] < 0 || src_[d][x] >= count_[d - 1] || tgt_[d][x] < 0 || tgt_[d][x] >= count_[d - 1])
                    throw ArgumentError("source/target out of range in dimension " + std::to_string(d));
            if (static_cast<int>(comp_.at(d).size()) != d)
                throw ArgumentError("need o_j tables for j < " + std::to_string(d));
            for (int j = 0; j < d; ++j) {
                if (comp_[d][j].size() != static_cast<std::size_t>(count_[d]) * count_[d])
                    throw ArgumentError("composition table has the wrong size");
                for (int a = 0; a < count_[d]; ++a)
                    for (int b = 0; b < count_[d]; ++b) {
                        const int v = compose(d, j, a, b);
                        const bool ok = source_at(d, a, j) == target_at(d, b, j);
                        if ((v >= 0) != ok || v >= count_[d])
                            throw ArgumentError("composition table disagrees with composability");
                    }
            }
        }
        for (int d = 0; d < n_; ++d) {
            if (static_cast<int>(id_.at(d).size()) != count_[d])
                throw ArgumentError("identity table has the wrong size");
            for (int v : id_[d])
                if (v < 0 || v >= count_[d + 1])
                    throw ArgumentError("identity out of range");
        }
    }

    int n_ = 0;
    std::vector<int> count_;
    std::vector<std::vector<int>> src_, tgt_, id_;
    std::vector<std::vector<std::vector<int>>> comp_;
};

/// A strict functor as cell images per dimension.
using NFunctor = std::vector<std::vector<int>>;

/// [m](C_1..C_m) with its cell keys: 0-cells p, d-cells (p, q, x_{p+1..q}).
struct WreathCategory {
    StrictNCat cat;
    std::vector<std::vector<std::vector<int>>> keys;
    std::vector<std::map<std::vector<int>, int>> index;

    int find(int d, const std::vector<int>& key) const
    {
        auto it = index[d].find(key);
        if (it == index[d].end())
            throw InvariantViolation("unknown wreath cell");
        return it->second;
    }
};

inline WreathCategory wreath(int n, const std::vector<const StrictNCat*>& parts)
{
    if (n < 1)
        throw ArgumentError("wreath needs n >= 1");
    for (const auto* p : parts)
        if (p->dimension() != n - 1)
            throw ArgumentError("wreath parts must have dimension n - 1");
    const int m = static_cast<int>(parts.size());
    WreathCategory w;
    w.keys.resize(n + 1);
    w.index.resize(n + 1);
    for (int p = 0; p <= m; ++p)
        w.keys[0].push_back({p});
    for (int d = 1; d <= n; ++d)
        for (int p = 0; p <= m; ++p)
            for (int q = p; q <= m; ++q) {
                std::vector<int> key{p, q};
                std::vector<int> radix;
                bool empty = false;
                for (int i = p + 1; i <= q; ++i) {
                    radix.push_back(parts[i - 1]->count(d - 1));
                    empty = empty || radix.back() == 0;
                }
                if (empty)
                    continue;
                key.resize(2 + radix.size(), 0);
                while (true) {
                    w.keys[d].push_back(key);
                    int t = static_cast<int>(radix.size()) - 1;
                    while (t >= 0 && ++key[2 + t] == radix[t]) {
                        key[2 + t] = 0;
                        --t;
                    }
                    if (t < 0)
                        break;
                }
            }
    std::vector<int> counts(n + 1);
    for (int d = 0; d <= n; ++d) {
        counts[d] = static_cast<int>(w.keys[d].size());
        for (int x = 0; x < counts[d]; ++x)
            w.index[d].emplace(w.keys[d][x], x);
    }
    auto boundary = [&](int d, int x, bool src) {
        const auto& k = w.keys[d][x];
        if (d == 1)
            return src ? k[0] : k[1];
        std::vector<int> out{k[0], k[1]};
        for (int i = k[0] + 1; i <= k[1]; ++i) {
            const int c = k[2 + i - k[0] - 1];
            out.push_back(src ? parts[i - 1]->source(d - 1, c) : parts[i - 1]->target(d - 1, c));
        }
        return w.find(d - 1, out);
    };
    auto ident = [&](int d, int x) {
        const auto& k = w.keys[d][x];
        if (d == 0)
            return w.find(1, {k[0], k[0]});
        std::vector<int> out{k[0], k[1]};
        for (int i = k[0] + 1; i <= k[1]; ++i)
            out.push_back(parts[i - 1]->identity(d - 1, k[2 + i - k[0] - 1]));
        return w.find(d + 1, out);
    };
    auto comp = [&](int d, int j, int a, int b) {
        const auto& ka = w.keys[d][a];
        const auto& kb = w.keys[d][b];
        if (j == 0) {
            std::vector<int> out{kb[0], ka[1]};
            out.insert(out.end(), kb.begin() + 2, kb.end());
            out.insert(out.end(), ka.begin() + 2, ka.end());
            return w.find(d, out);
        }
        std::vector<int> out{ka[0], ka[1]};
        for (int i = ka[0] + 1; i <= ka[1]; ++i) {
            const int t = 2 + i - ka[0] - 1;
            out.push_back(parts[i - 1]->compose(d - 1, j - 1, ka[t], kb[t]));
        }
        return w.find(d, out);
    };
    w.cat = StrictNCat::tabulate(
        n, counts, [&](int d, int x) { return boundary(d, x, true); },
        [&](int d, int x) { return boundary(d, x, false); }, ident, comp);
    return w;
}

/// The terminal n-category.
inline StrictNCat terminal_ncat(int n)
{
    std::vector<int> counts(n + 1, 1);
    return StrictNCat::tabulate(
        n, counts, [](int, int) { return 0; }, [](int, int) { return 0; }, [](int, int) { return 0; },
        [](int, int, int, int) { return 0; });
}

/// tau(theta), cached by object.
inline std::shared_ptr<const WreathCategory> tau(const ThetaObject& theta)
{
    static std::mutex mu;
    static std::map<std::pair<int, std::string>, std::shared_ptr<const WreathCategory>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({theta.level(), theta.str()});
        if (it != cache.end())
            return it->second;
    }
    std::shared_ptr<const WreathCategory> out;
    if (theta.level() == 0) {
        WreathCategory w;
        w.cat = terminal_ncat(0);
        w.keys = {{{0}}};
        w.index.resize(1);
        w.index[0].emplace(std::vector<int>{0}, 0);
        out = std::make_shared<const WreathCategory>(std::move(w));
    } else {
        std::vector<std::shared_ptr<const WreathCategory>> kids;
        std::vector<const StrictNCat*> parts;
        for (const auto& c : theta.children()) {
            kids.push_back(tau(c));
            parts.push_back(&kids.back()->cat);
        }
        out = std::make_shared<const WreathCategory>(wreath(theta.level(), parts));
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::make_pair(theta.level(), theta.str()), out).first->second;
}

/// tau on morphisms: p |-> delta(p), (p, q, x) |-> (delta p, delta q, y) with
/// y_j = tau(f_ij)(x_i).
inline NFunctor tau_map(const ThetaMorphism& f)
{
    const int n = f.source().level();
    if (n == 0)
        return {{0}};
    auto ts = tau(f.source());
    auto tt = tau(f.target());
    const MonotoneMap& d = f.delta();
    const int m = f.source().arity();
    std::map<std::pair<int, int>, NFunctor> sub;
    for (int i = 1; i <= m; ++i)
        for (int j = d(i - 1) + 1; j <= d(i); ++j)
            sub.emplace(std::make_pair(i, j), tau_map(f.component(i, j)));
    NFunctor out(n + 1);
    for (int dim = 0; dim <= n; ++dim)
        for (const auto& k : ts->keys[dim]) {
            if (dim == 0) {
                out[0].push_back(d(k[0]));
                continue;
            }
            std::vector<int> y{d(k[0]), d(k[1])};
            for (int i = k[0] + 1; i <= k[1]; ++i)
                for (int j = d(i - 1) + 1; j <= d(i); ++j)
                    y.push_back(sub.at({i, j})[dim - 1][k[2 + i - k[0] - 1]]);
            out[dim].push_back(tt->find(dim, y));
        }
    return out;
}

/// Every constraint a strict functor must satisfy.
inline bool is_functor(const NFunctor& f, const StrictNCat& a, const StrictNCat& c)
{
    const int n = a.dimension();
    for (int d = 1; d <= n; ++d)
        for (int x = 0; x < a.count(d); ++x) {
            if (c.source(d, f[d][x]) != f[d - 1][a.source(d, x)] || c.target(d, f[d][x]) != f[d - 1][a.target(d, x)])
                return false;
            for (int j = 0; j < d; ++j)
                for (int y = 0; y < a.count(d); ++y) {
                    const int xy = a.compose(d, j, x, y);
                    if (xy >= 0 && c.compose(d, j, f[d][x], f[d][y]) != f[d][xy])
                        return false;
                }
        }
    for (int d = 0; d < n; ++d)
        for (int x = 0; x < a.count(d); ++x)
            if (c.identity(d, f[d][x]) != f[d + 1][a.identity(d, x)])
                return false;
    return true;
}

namespace detail {

struct CellRef {
    int d;
    int x;
};

} // namespace detail

/// Enumerates strict functors a -> c in lexicographic order of image vectors
/// (cells by dimension, then index). Full mode assigns every cell and checks
/// each constraint once its cells are assigned.
inline std::uint64_t enumerate_functors(const StrictNCat& a, const StrictNCat& c,
                                        const std::function<bool(const NFunctor&)>& visit = {})
{
    const int n = a.dimension();
    if (c.dimension() != n)
        throw ArgumentError("functors need equal dimensions");
    std::vector<detail::CellRef> order;
    for (int d = 0; d <= n; ++d)
        for (int x = 0; x < a.count(d); ++x)
            order.push_back({d, x});
    // constraints checked when their last cell (in order) is assigned
    struct Comp {
        int j, x, y, xy;
    };
    std::vector<std::vector<Comp>> comps_at(order.size());
    std::vector<std::vector<int>> pos(n + 1);
    for (std::size_t i = 0; i < order.size(); ++i)
        pos[order[i].d].push_back(static_cast<int>(i));
    for (int d = 1; d <= n; ++d)
        for (int j = 0; j < d; ++j)
            for (int x = 0; x < a.count(d); ++x)
                for (int y = 0; y < a.count(d); ++y) {
                    const int xy = a.compose(d, j, x, y);
                    if (xy < 0)
                        continue;
                    const int last = std::max({pos[d][x], pos[d][y], pos[d][xy]});
                    comps_at[last].push_back({j, x, y, xy});
                }
    NFunctor f(n + 1);
    for (int d = 0; d <= n; ++d)
        f[d].assign(a.count(d), -1);
    std::uint64_t count = 0;
    bool stop = false;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == order.size()) {
            ++count;
            if (visit && !visit(f))
                stop = true;
            return;
        }
        const auto [d, x] = order[i];
        for (int v = 0; v < c.count(d) && !stop; ++v) {
            if (d > 0 && (c.source(d, v) != f[d - 1][a.source(d, x)] || c.target(d, v) != f[d - 1][a.target(d, x)]))
                continue;
            // identities: x = 1_y with y already assigned
            if (d > 0 && a.is_identity(d, x) && c.identity(d - 1, f[d - 1][a.source(d, x)]) != v)
                continue;
            f[d][x] = v;
            bool ok = true;
            for (const auto& k : comps_at[i])
                if (c.compose(d, k.j, f[d][k.x], f[d][k.y]) != f[d][k.xy]) {
                    ok = false;
                    break;
                }
            if (ok)
                self(self, i + 1);
            f[d][x] = -1;
        }
    };
    rec(rec, 0);
    return count;
}

/// Propagate mode: branches only on cells not derivable as identities or
/// composites of non-identity cells, derives the rest, and keeps results
/// passing the full functor check.
inline std::uint64_t enumerate_functors_propagate(const StrictNCat& a, const StrictNCat& c,
                                                  const std::function<bool(const NFunctor&)>& visit = {})
{
    const int n = a.dimension();
    if (c.dimension() != n)
        throw ArgumentError("functors need equal dimensions");
    struct Step {
        int d, x;
        int kind; // 0 branch, 1 identity of (d-1, y), 2 composite y o_j z
        int j, y, z;
    };
    std::vector<Step> plan;
    std::vector<std::vector<char>> known(n + 1);
    for (int d = 0; d <= n; ++d)
        known[d].assign(a.count(d), 0);
    int remaining = 0;
    for (int d = 0; d <= n; ++d)
        remaining += a.count(d);
    while (remaining > 0) {
        bool progress = false;
        for (int d = 0; d <= n; ++d)
            for (int x = 0; x < a.count(d); ++x) {
                if (known[d][x])
                    continue;
                if (d > 0 && a.is_identity(d, x) && known[d - 1][a.source(d, x)]) {
                    plan.push_back({d, x, 1, 0, a.source(d, x), 0});
                    known[d][x] = 1;
                    --remaining;
                    progress = true;
                    continue;
                }
                bool done = false;
                for (int j = 0; j < d && !done; ++j)
                    for (int y = 0; y < a.count(d) && !done; ++y) {
                        if (!known[d][y] || a.is_identity(d, y) || y == x)
                            continue;
                        for (int z = 0; z < a.count(d) && !done; ++z) {
                            if (!known[d][z] || a.is_identity(d, z) || z == x)
                                continue;
                            if (a.compose(d, j, y, z) == x) {
                                plan.push_back({d, x, 2, j, y, z});
                                done = true;
                            }
                        }
                    }
                if (done) {
                    known[d][x] = 1;
                    --remaining;
                    progress = true;
                }
            }
        if (!progress) {
            for (int d = 0; d <= n && !progress; ++d)
                for (int x = 0; x < a.count(d) && !progress; ++x)
                    if (!known[d][x]) {
                        plan.push_back({d, x, 0, 0, 0, 0});
                        known[d][x] = 1;
                        --remaining;
                        progress = true;
                    }
        }
    }
    NFunctor f(n + 1);
    for (int d = 0; d <= n; ++d)
        f[d].assign(a.count(d), -1);
    std::vector<NFunctor> found;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == plan.size()) {
            if (is_functor(f, a, c))
                found.push_back(f);
            return;
        }
        const Step& s = plan[i];
        auto fits = [&](int v) {
            if (s.d == 0)
                return true;
            const int ps = f[s.d - 1][a.source(s.d, s.x)];
            const int pt = f[s.d - 1][a.target(s.d, s.x)];
            return (ps < 0 || c.source(s.d, v) == ps) && (pt < 0 || c.target(s.d, v) == pt);
        };
        if (s.kind == 0) {
            for (int v = 0; v < c.count(s.d); ++v)
                if (fits(v)) {
                    f[s.d][s.x] = v;
                    self(self, i + 1);
                }
            f[s.d][s.x] = -1;
            return;
        }
        const int v = s.kind == 1 ? c.identity(s.d - 1, f[s.d - 1][s.y]) : c.compose(s.d, s.j, f[s.d][s.y], f[s.d][s.z]);
        if (v < 0 || !fits(v))
            return;
        f[s.d][s.x] = v;
        self(self, i + 1);
        f[s.d][s.x] = -1;
    };
    rec(rec, 0);
    std::sort(found.begin(), found.end());
    for (const auto& g : found)
        if (visit && !visit(g))
            break;
    return found.size();
}

/// (dnerve C)(theta) = strict functors tau(theta) -> C; actions by
/// precomposition with tau of window morphisms.
inline FinPresheaf dnerve(const StrictNCat& c, const Window::Ptr& w)
{
    if (c.dimension() != w->level())
        throw ArgumentError("dnerve needs a window of level " + std::to_string(c.dimension()));
    using Key = NFunctor;
    std::vector<std::vector<Key>> elems(w->object_count());
    for (int a = 0; a < w->object_count(); ++a)
        enumerate_functors(tau(w->object(a))->cat, c, [&](const NFunctor& f) {
            elems[a].push_back(f);
            return true;
        });
    std::vector<NFunctor> taus(w->morphism_count());
    for (int f = 0; f < w->morphism_count(); ++f)
        taus[f] = tau_map(w->morphism(f));
    return FinPresheaf::tabulate<Key>(
        w, [&](int a) { return elems[a]; },
        [&](int f, const Key& g) {
            const NFunctor& t = taus[f];
            Key out(t.size());
            for (std::size_t d = 0; d < t.size(); ++d)
                for (int x : t[d])
                    out[d].push_back(g[d][x]);
            return out;
        });
}

/// A k-cell with a strict two-sided inverse for o_{k-1}.
inline bool is_k_isomorphism(const StrictNCat& c, int k, int g)
{
    if (k < 1 || k > c.dimension())
        throw ArgumentError("k-isomorphisms need 1 <= k <= n");
    const int x = c.source(k, g);
    const int y = c.target(k, g);
    for (int f = 0; f < c.count(k); ++f)
        if (c.source(k, f) == y && c.target(k, f) == x && c.compose(k, k - 1, f, g) == c.identity(k - 1, x) &&
            c.compose(k, k - 1, g, f) == c.identity(k - 1, y))
            return true;
    return false;
}

/// equiv[k][g] for k = 1..n, computed from the top dimension down: at the top
/// equivalences are isomorphisms; below, gf ~ 1 and hg ~ 1 where ~ is joined
/// by a (k+1)-equivalence.
inline std::vector<std::vector<char>> k_equivalences(const StrictNCat& c)
{
    const int n = c.dimension();
    std::vector<std::vector<char>> eq(n + 1);
    for (int k = n; k >= 1; --k) {
        eq[k].assign(c.count(k), 0);
        auto related = [&](int u, int v) {
            if (k == n)
                return u == v;
            for (int z = 0; z < c.count(k + 1); ++z)
                if (eq[k + 1][z] && c.source(k + 1, z) == u && c.target(k + 1, z) == v)
                    return true;
            return false;
        };
        for (int g = 0; g < c.count(k); ++g) {
            const int x = c.source(k, g);
            const int y = c.target(k, g);
            bool right = false, left = false;
            for (int f = 0; f < c.count(k) && !(right && left); ++f) {
                if (c.source(k, f) != y || c.target(k, f) != x)
                    continue;
                right = right || related(c.compose(k, k - 1, g, f), c.identity(k - 1, y));
                left = left || related(c.compose(k, k - 1, f, g), c.identity(k - 1, x));
            }
            eq[k][g] = right && left;
        }
    }
    return eq;
}

inline bool is_k_equivalence_ncat(const StrictNCat& c, int k, int g) { return k_equivalences(c).at(k).at(g) != 0; }

/// Every k-isomorphism is an identity.
inline bool is_rigid(const StrictNCat& c)
{
    for (int k = 1; k <= c.dimension(); ++k)
        for (int g = 0; g < c.count(k); ++g)
            if (is_k_isomorphism(c, k, g) && !c.is_identity(k, g))
                return false;
    return true;
}

/// Every k-equivalence is an identity.
inline bool is_rigid_by_equivalences(const StrictNCat& c)
{
    auto eq = k_equivalences(c);
    for (int k = 1; k <= c.dimension(); ++k)
        for (int g = 0; g < c.count(k); ++g)
            if (eq[k][g] && !c.is_identity(k, g))
                return false;
    return true;
}

} // namespace thetakit

#endif // THETAKIT_NCAT_HPP
