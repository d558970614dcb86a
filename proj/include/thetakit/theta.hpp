#ifndef THETAKIT_THETA_HPP
#define THETAKIT_THETA_HPP

// Objects of Theta_n as leveled planar trees, and morphisms (delta, {f_ij}).
//
// A morphism [m](c_1..c_m) -> [n](d_1..d_n) stores one component per
// j in (delta(0), delta(m)]; the component for j is a map c_i -> d_j where i
// is the unique index with delta(i-1) < j <= delta(i).

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "delta.hpp"
#include "errors.hpp"

namespace thetakit {

class ThetaObject {
public:
    /// The level-0 object ".".
    ThetaObject() : node_(point_node()) {}

    static ThetaObject point() { return ThetaObject(); }

    /// [m](children...) one level above the children; children must share a level.
    static ThetaObject make(int level, std::vector<ThetaObject> children)
    {
        if (level < 1)
            throw ArgumentError("[m](...) needs level >= 1");
        for (const auto& c : children)
            if (c.level() != level - 1)
                throw ArgumentError("child " + c.str() + " has level " + std::to_string(c.level()) +
                                    ", expected " + std::to_string(level - 1));
        auto n = std::make_shared<Node>();
        n->level = level;
        n->size = static_cast<int>(children.size());
        std::string text = "[" + std::to_string(children.size()) + "]";
        if (!children.empty()) {
            text += "(";
            for (std::size_t i = 0; i < children.size(); ++i) {
                if (i)
                    text += ",";
                text += children[i].str();
                n->size += children[i].size();
            }
            text += ")";
        }
        n->text = std::move(text);
        n->children = std::move(children);
        return ThetaObject(std::move(n));
    }

    /// The terminal object of Theta_level: "." at level 0, [0] above.
    static ThetaObject terminal(int level) { return level == 0 ? point() : make(level, {}); }

    /// [m](t,...,t) with t terminal one level down.
    static ThetaObject simplex(int level, int m)
    {
        if (level < 1)
            throw ArgumentError("simplex objects need level >= 1");
        return make(level, std::vector<ThetaObject>(m, terminal(level - 1)));
    }

    static ThetaObject parse(std::string_view text, int level)
    {
        std::size_t pos = 0;
        auto skip = [&] {
            while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n'))
                ++pos;
        };
        auto rec = [&](auto&& self, int lvl) -> ThetaObject {
            skip();
            if (lvl == 0) {
                if (pos >= text.size() || text[pos] != '.')
                    throw ParseError("expected '.' for a level-0 object", pos);
                ++pos;
                return point();
            }
            if (pos >= text.size() || text[pos] != '[')
                throw ParseError("expected '[' for a level-" + std::to_string(lvl) + " object", pos);
            ++pos;
            std::size_t start = pos;
            int m = 0;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
                m = m * 10 + (text[pos] - '0');
                if (m > 64)
                    throw ParseError("arity too large", start);
                ++pos;
            }
            if (pos == start)
                throw ParseError("expected an arity", pos);
            if (pos >= text.size() || text[pos] != ']')
                throw ParseError("expected ']'", pos);
            ++pos;
            skip();
            std::vector<ThetaObject> kids;
            if (pos < text.size() && text[pos] == '(') {
                ++pos;
                for (int i = 0; i < m; ++i) {
                    if (i > 0) {
                        skip();
                        if (pos >= text.size() || text[pos] != ',')
                            throw ParseError("expected ',' (arity " + std::to_string(m) + ")", pos);
                        ++pos;
                    }
                    kids.push_back(self(self, lvl - 1));
                }
                skip();
                if (pos >= text.size() || text[pos] != ')')
                    throw ParseError("expected ')' after " + std::to_string(m) + " children", pos);
                ++pos;
            } else if (m > 0) {
                if (lvl != 1)
                    throw ParseError("[" + std::to_string(m) + "] needs its children at level " + std::to_string(lvl),
                                     pos);
                kids.assign(m, point());
            }
            return make(lvl, std::move(kids));
        };
        if (level < 0)
            throw ArgumentError("negative level");
        ThetaObject out = rec(rec, level);
        skip();
        if (pos != text.size())
            throw ParseError("trailing characters", pos);
        return out;
    }

    int level() const noexcept { return node_->level; }
    int arity() const noexcept { return static_cast<int>(node_->children.size()); }
    int size() const noexcept { return node_->size; }
    const std::vector<ThetaObject>& children() const noexcept { return node_->children; }
    /// 1-based, matching c_1..c_m.
    const ThetaObject& child(int i) const { return node_->children.at(i - 1); }
    const std::string& str() const noexcept { return node_->text; }
    bool is_terminal() const noexcept { return node_->children.empty(); }

    /// Arities in preorder, level-0 leaves omitted.
    std::vector<int> arity_sequence() const
    {
        std::vector<int> out;
        auto rec = [&](auto&& self, const ThetaObject& o) -> void {
            if (o.level() == 0)
                return;
            out.push_back(o.arity());
            for (const auto& c : o.children())
                self(self, c);
        };
        rec(rec, *this);
        return out;
    }

    friend bool operator==(const ThetaObject& a, const ThetaObject& b)
    {
        return a.node_ == b.node_ || (a.level() == b.level() && a.str() == b.str());
    }

    /// Canonical order: level, size, then preorder arity sequence.
    friend bool operator<(const ThetaObject& a, const ThetaObject& b)
    {
        if (a.level() != b.level())
            return a.level() < b.level();
        if (a.size() != b.size())
            return a.size() < b.size();
        return a.arity_sequence() < b.arity_sequence();
    }

private:
    struct Node {
        int level = 0;
        int size = 0;
        std::vector<ThetaObject> children;
        std::string text = ".";
    };

    explicit ThetaObject(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static std::shared_ptr<const Node> point_node()
    {
        static const auto p = std::make_shared<const Node>();
        return p;
    }

    std::shared_ptr<const Node> node_;
};

/// All objects of the given level with size <= max_size, canonical order.
inline std::vector<ThetaObject> enumerate_objects(int level, int max_size)
{
    if (level < 0 || max_size < 0)
        throw ArgumentError("enumerate_objects needs level, max_size >= 0");
    if (level == 0)
        return {ThetaObject::point()};
    auto lower = enumerate_objects(level - 1, max_size);
    std::vector<ThetaObject> out;
    for (int m = 0; m <= max_size; ++m) {
        std::vector<ThetaObject> kids;
        auto rec = [&](auto&& self, int budget) -> void {
            if (static_cast<int>(kids.size()) == m) {
                out.push_back(ThetaObject::make(level, kids));
                return;
            }
            for (const auto& c : lower) {
                if (c.size() > budget)
                    continue;
                kids.push_back(c);
                self(self, budget - c.size());
                kids.pop_back();
            }
        };
        rec(rec, max_size - m);
    }
    std::stable_sort(out.begin(), out.end());
    return out;
}

class ThetaMorphism {
public:
    ThetaMorphism() = default;

    ThetaMorphism(ThetaObject source, ThetaObject target, MonotoneMap delta, std::vector<ThetaMorphism> components)
        : src_(std::move(source)), dst_(std::move(target)), delta_(std::move(delta)), comps_(std::move(components))
    {
        validate();
    }

    const ThetaObject& source() const noexcept { return src_; }
    const ThetaObject& target() const noexcept { return dst_; }
    const MonotoneMap& delta() const noexcept { return delta_; }
    /// Flat components ordered by j in (delta(0), delta(m)].
    const std::vector<ThetaMorphism>& components() const noexcept { return comps_; }

    /// f_ij for delta(i-1) < j <= delta(i).
    const ThetaMorphism& component(int i, int j) const
    {
        if (i < 1 || i > src_.arity() || j <= delta_(i - 1) || j > delta_(i))
            throw ArgumentError("no component (" + std::to_string(i) + "," + std::to_string(j) + ")");
        return comps_[j - delta_(0) - 1];
    }

    /// JSON-compatible text: {"delta":"..","components":[[..],..]} grouped by i.
    std::string to_string() const
    {
        std::string s = "{\"delta\":\"" + delta_.to_string() + "\",\"components\":[";
        const int m = src_.level() == 0 ? 0 : src_.arity();
        for (int i = 1; i <= m; ++i) {
            if (i > 1)
                s += ",";
            s += "[";
            for (int j = delta_(i - 1) + 1; j <= delta_(i); ++j) {
                if (j > delta_(i - 1) + 1)
                    s += ",";
                s += component(i, j).to_string();
            }
            s += "]";
        }
        return s + "]}";
    }

    friend bool operator==(const ThetaMorphism& a, const ThetaMorphism& b)
    {
        return a.src_ == b.src_ && a.dst_ == b.dst_ && a.delta_ == b.delta_ && a.comps_ == b.comps_;
    }

private:
    void validate() const
    {
        if (src_.level() != dst_.level())
            throw ArgumentError("morphism between different levels: " + src_.str() + " -> " + dst_.str());
        if (src_.level() == 0) {
            if (delta_ != MonotoneMap::identity(0) || !comps_.empty())
                throw ArgumentError("level-0 morphisms are trivial");
            return;
        }
        if (delta_.src_rank() != src_.arity() || delta_.dst_rank() != dst_.arity())
            throw ArgumentError("delta " + delta_.to_string() + " does not match " + src_.str() + " -> " + dst_.str());
        const int expected = delta_(src_.arity()) - delta_(0);
        if (static_cast<int>(comps_.size()) != expected)
            throw ArgumentError("expected " + std::to_string(expected) + " components, got " +
                                std::to_string(comps_.size()));
        for (int i = 1; i <= src_.arity(); ++i)
            for (int j = delta_(i - 1) + 1; j <= delta_(i); ++j) {
                const auto& f = comps_[j - delta_(0) - 1];
                if (!(f.source() == src_.child(i)) || !(f.target() == dst_.child(j)))
                    throw ArgumentError("component (" + std::to_string(i) + "," + std::to_string(j) +
                                        ") has the wrong endpoints");
            }
    }

    ThetaObject src_;
    ThetaObject dst_;
    MonotoneMap delta_;
    std::vector<ThetaMorphism> comps_;
};

inline ThetaMorphism identity_theta(const ThetaObject& o)
{
    if (o.level() == 0)
        return {o, o, MonotoneMap::identity(0), {}};
    std::vector<ThetaMorphism> comps;
    for (const auto& c : o.children())
        comps.push_back(identity_theta(c));
    return {o, o, MonotoneMap::identity(o.arity()), std::move(comps)};
}

/// g o f.
inline ThetaMorphism compose_theta(const ThetaMorphism& g, const ThetaMorphism& f)
{
    if (!(f.target() == g.source()))
        throw ArgumentError("cannot compose: " + f.target().str() + " vs " + g.source().str());
    if (f.source().level() == 0)
        return f;
    const MonotoneMap& d = f.delta();
    const MonotoneMap& e = g.delta();
    std::vector<ThetaMorphism> comps;
    const int m = f.source().arity();
    for (int i = 1; i <= m; ++i)
        for (int j = d(i - 1) + 1; j <= d(i); ++j)
            for (int k = e(j - 1) + 1; k <= e(j); ++k)
                comps.push_back(compose_theta(g.component(j, k), f.component(i, j)));
    return {f.source(), g.target(), compose(e, d), std::move(comps)};
}

/// The unique map to the terminal object.
inline ThetaMorphism to_terminal(const ThetaObject& o)
{
    if (o.level() == 0)
        return identity_theta(o);
    return {o, ThetaObject::terminal(o.level()), MonotoneMap::constant(o.arity(), 0, 0), {}};
}

namespace detail {

struct HomCounter {
    std::map<std::pair<std::string, std::string>, std::uint64_t> memo;
    std::uint64_t operator()(const ThetaObject& a, const ThetaObject& b)
    {
        if (a.level() != b.level())
            throw ArgumentError("hom between different levels");
        if (a.level() == 0)
            return 1;
        auto key = std::make_pair(a.str(), b.str());
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
        std::uint64_t total = 0;
        for (const auto& d : enumerate_delta(a.arity(), b.arity())) {
            std::uint64_t prod = 1;
            for (int i = 1; i <= a.arity() && prod; ++i)
                for (int j = d(i - 1) + 1; j <= d(i) && prod; ++j)
                    prod *= (*this)(a.child(i), b.child(j));
            total += prod;
        }
        memo.emplace(key, total);
        return total;
    }
};

} // namespace detail

inline std::uint64_t count_hom(const ThetaObject& a, const ThetaObject& b)
{
    detail::HomCounter c;
    return c(a, b);
}

/// All morphisms a -> b: delta in lexicographic order, then components in
/// mixed radix with the first component slowest.
inline std::vector<ThetaMorphism> enumerate_hom(const ThetaObject& a, const ThetaObject& b)
{
    if (a.level() != b.level())
        throw ArgumentError("enumerate_hom needs equal levels");
    if (a.level() == 0)
        return {identity_theta(a)};
    std::vector<ThetaMorphism> out;
    for (const auto& d : enumerate_delta(a.arity(), b.arity())) {
        std::vector<std::vector<ThetaMorphism>> factors;
        bool empty = false;
        for (int i = 1; i <= a.arity(); ++i)
            for (int j = d(i - 1) + 1; j <= d(i); ++j) {
                factors.push_back(enumerate_hom(a.child(i), b.child(j)));
                empty = empty || factors.back().empty();
            }
        if (empty)
            continue;
        std::vector<std::size_t> idx(factors.size(), 0);
        while (true) {
            std::vector<ThetaMorphism> comps;
            for (std::size_t t = 0; t < factors.size(); ++t)
                comps.push_back(factors[t][idx[t]]);
            out.emplace_back(a, b, d, std::move(comps));
            int t = static_cast<int>(factors.size()) - 1;
            while (t >= 0 && ++idx[t] == factors[t].size()) {
                idx[t] = 0;
                --t;
            }
            if (t < 0)
                break;
        }
    }
    return out;
}

/// Position of f in enumerate_hom(f.source(), f.target()).
inline std::uint64_t rank_hom(const ThetaMorphism& f)
{
    detail::HomCounter count;
    auto rec = [&](auto&& self, const ThetaMorphism& h) -> std::uint64_t {
        const auto& a = h.source();
        const auto& b = h.target();
        if (a.level() == 0)
            return 0;
        std::uint64_t offset = 0;
        for (const auto& d : enumerate_delta(a.arity(), b.arity())) {
            if (d == h.delta())
                break;
            std::uint64_t prod = 1;
            for (int i = 1; i <= a.arity() && prod; ++i)
                for (int j = d(i - 1) + 1; j <= d(i) && prod; ++j)
                    prod *= count(a.child(i), b.child(j));
            offset += prod;
        }
        std::uint64_t local = 0;
        const auto& d = h.delta();
        for (int i = 1; i <= a.arity(); ++i)
            for (int j = d(i - 1) + 1; j <= d(i); ++j)
                local = local * count(a.child(i), b.child(j)) + self(self, h.component(i, j));
        return offset + local;
    };
    return rec(rec, f);
}

/// sigma(theta) = [1](theta).
inline ThetaObject suspension(const ThetaObject& o) { return ThetaObject::make(o.level() + 1, {o}); }

inline ThetaMorphism suspension(const ThetaMorphism& f)
{
    return {suspension(f.source()), suspension(f.target()), MonotoneMap::identity(1), {f}};
}

/// sigma^k applied to the terminal object of level n - k.
inline ThetaObject sigma_power(int k, int n)
{
    if (k < 0 || k > n)
        throw ArgumentError("sigma^k[0] needs 0 <= k <= n");
    ThetaObject o = ThetaObject::terminal(n - k);
    for (int i = 0; i < k; ++i)
        o = suspension(o);
    return o;
}

inline ThetaMorphism suspension_power(int k, ThetaMorphism f)
{
    for (int i = 0; i < k; ++i)
        f = suspension(f);
    return f;
}

/// The inclusion one level up: "." becomes [0], recursively.
inline ThetaObject inclusion(const ThetaObject& o)
{
    if (o.level() == 0)
        return ThetaObject::terminal(1);
    std::vector<ThetaObject> kids;
    for (const auto& c : o.children())
        kids.push_back(inclusion(c));
    return ThetaObject::make(o.level() + 1, std::move(kids));
}

/// Re-levels o at level n >= o.level().
inline ThetaObject inclusion(const ThetaObject& o, int n)
{
    if (n < o.level())
        throw ArgumentError("cannot include level " + std::to_string(o.level()) + " into level " + std::to_string(n));
    ThetaObject r = o;
    while (r.level() < n)
        r = inclusion(r);
    return r;
}

inline ThetaMorphism inclusion(const ThetaMorphism& f)
{
    if (f.source().level() == 0)
        return identity_theta(ThetaObject::terminal(1));
    std::vector<ThetaMorphism> comps;
    for (const auto& c : f.components())
        comps.push_back(inclusion(c));
    return {inclusion(f.source()), inclusion(f.target()), f.delta(), std::move(comps)};
}

/// The morphism written simply as delta: identity components where
/// delta(i-1) < delta(i), and terminal c_i where delta(i-1) = delta(i).
inline ThetaMorphism canonical_delta_morphism(const MonotoneMap& d, const ThetaObject& source,
                                              const ThetaObject& target)
{
    if (source.level() != target.level() || source.level() < 1)
        throw ArgumentError("canonical delta morphisms need equal levels >= 1");
    if (!d.is_sequential())
        throw ArgumentError("delta " + d.to_string() + " is not sequential");
    if (d.src_rank() != source.arity() || d.dst_rank() != target.arity())
        throw ArgumentError("delta " + d.to_string() + " does not match " + source.str() + " -> " + target.str());
    std::vector<ThetaMorphism> comps;
    for (int i = 1; i <= source.arity(); ++i) {
        if (d(i) == d(i - 1)) {
            if (!source.child(i).is_terminal())
                throw ArgumentError("delta " + d.to_string() + " collapses the non-terminal child " +
                                    source.child(i).str());
            continue;
        }
        if (!(source.child(i) == target.child(d(i))))
            throw ArgumentError("delta " + d.to_string() + " needs child " + std::to_string(i) + " = " +
                                target.child(d(i)).str());
        comps.push_back(identity_theta(source.child(i)));
    }
    return {source, target, d, std::move(comps)};
}

/// [m](t..t) -> [n](t..t) for any delta; components are the unique t -> t.
inline ThetaMorphism simplex_morphism(int level, const MonotoneMap& d)
{
    const ThetaObject a = ThetaObject::simplex(level, d.src_rank());
    const ThetaObject b = ThetaObject::simplex(level, d.dst_rank());
    const ThetaObject t = ThetaObject::terminal(level - 1);
    std::vector<ThetaMorphism> comps(static_cast<std::size_t>(d(d.src_rank()) - d(0)), identity_theta(t));
    return {a, b, d, std::move(comps)};
}

/// The vertex inclusion [0] -> theta picking vertex v.
inline ThetaMorphism vertex_morphism(const ThetaObject& o, int v)
{
    if (o.level() < 1 || v < 0 || v > o.arity())
        throw ArgumentError("vertex out of range");
    return {ThetaObject::terminal(o.level()), o, MonotoneMap::constant(0, o.arity(), v), {}};
}

} // namespace thetakit

#endif // THETAKIT_THETA_HPP
