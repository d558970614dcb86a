#ifndef THETAKIT_DELTA_HPP
#define THETAKIT_DELTA_HPP

// The simplex category: weakly monotone maps [m] -> [n], their classification,
// and face-closed subobjects of the representable F[m] (covers in particular).

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace thetakit {

/// A weakly monotone map [m] -> [n], stored as its value sequence.
class MonotoneMap {
public:
    MonotoneMap() : dst_(0), values_{0} {}

    MonotoneMap(int dst_rank, std::vector<int> values) : dst_(dst_rank), values_(std::move(values))
    {
        if (values_.empty())
            throw ArgumentError("monotone map needs at least one value");
        if (dst_ < 0)
            throw ArgumentError("negative target rank");
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (values_[i] < 0 || values_[i] > dst_)
                throw ArgumentError("monotone map value out of range");
            if (i > 0 && values_[i] < values_[i - 1])
                throw ArgumentError("monotone map values must be weakly increasing");
        }
    }

    static MonotoneMap identity(int m)
    {
        std::vector<int> v(m + 1);
        for (int i = 0; i <= m; ++i)
            v[i] = i;
        return {m, std::move(v)};
    }

    static MonotoneMap constant(int m, int dst_rank, int value)
    {
        return {dst_rank, std::vector<int>(m + 1, value)};
    }

    /// Parses the digit string "0122"; the target rank defaults to the largest value.
    static MonotoneMap parse(std::string_view digits, int dst_rank = -1)
    {
        if (digits.empty())
            throw ParseError("empty monotone map", 0);
        std::vector<int> v;
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (digits[i] < '0' || digits[i] > '9')
                throw ParseError("expected a digit", i);
            v.push_back(digits[i] - '0');
        }
        if (dst_rank < 0)
            dst_rank = *std::max_element(v.begin(), v.end());
        return {dst_rank, std::move(v)};
    }

    int src_rank() const noexcept { return static_cast<int>(values_.size()) - 1; }
    int dst_rank() const noexcept { return dst_; }
    int operator()(int i) const { return values_[i]; }
    const std::vector<int>& values() const noexcept { return values_; }

    bool is_injective() const noexcept
    {
        for (std::size_t i = 1; i < values_.size(); ++i)
            if (values_[i] == values_[i - 1])
                return false;
        return true;
    }

    bool is_surjective() const noexcept
    {
        if (values_.front() != 0 || values_.back() != dst_)
            return false;
        for (std::size_t i = 1; i < values_.size(); ++i)
            if (values_[i] > values_[i - 1] + 1)
                return false;
        return true;
    }

    /// delta(i-1) + 1 >= delta(i) for i = 1..m.
    bool is_sequential() const noexcept
    {
        for (std::size_t i = 1; i < values_.size(); ++i)
            if (values_[i - 1] + 1 < values_[i])
                return false;
        return true;
    }

    /// Image as a bitmask over [n].
    std::uint32_t image_mask() const noexcept
    {
        std::uint32_t mask = 0;
        for (int v : values_)
            mask |= std::uint32_t{1} << v;
        return mask;
    }

    std::string to_string() const
    {
        std::string s;
        for (int v : values_) {
            if (v > 9)
                throw ArgumentError("digit-string serialization needs values below 10");
            s.push_back(static_cast<char>('0' + v));
        }
        return s;
    }

    friend bool operator==(const MonotoneMap&, const MonotoneMap&) = default;
    friend auto operator<=>(const MonotoneMap& a, const MonotoneMap& b)
    {
        if (auto c = a.dst_ <=> b.dst_; c != 0)
            return c;
        return a.values_ <=> b.values_;
    }

private:
    int dst_;
    std::vector<int> values_;
};

struct MapFlags {
    bool injective;
    bool surjective;
    bool sequential;
};

inline MapFlags classify(const MonotoneMap& f)
{
    return {f.is_injective(), f.is_surjective(), f.is_sequential()};
}

/// g o f; requires f.dst_rank() == g.src_rank().
inline MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f)
{
    if (f.dst_rank() != g.src_rank())
        throw ArgumentError("rank mismatch in composition: " + std::to_string(f.dst_rank()) + " vs " +
                            std::to_string(g.src_rank()));
    std::vector<int> v(f.values().size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = g(f(static_cast<int>(i)));
    return {g.dst_rank(), std::move(v)};
}

/// All monotone [m] -> [n] in lexicographic order of value sequences.
inline std::vector<MonotoneMap> enumerate_delta(int m, int n)
{
    if (m < 0 || n < 0)
        throw ArgumentError("negative rank");
    std::vector<MonotoneMap> out;
    std::vector<int> v(m + 1, 0);
    while (true) {
        out.emplace_back(n, v);
        int i = m;
        while (i >= 0 && v[i] == n)
            --i;
        if (i < 0)
            break;
        ++v[i];
        for (int k = i + 1; k <= m; ++k)
            v[k] = v[i];
    }
    return out;
}

/// Position of f in enumerate_delta(f.src_rank(), f.dst_rank()).
inline std::size_t delta_rank(const MonotoneMap& f)
{
    // weakly increasing sequences of length `slots` over `values` symbols
    auto multichoose = [](int slots, int values) -> std::size_t {
        if (slots == 0)
            return 1;
        if (values <= 0)
            return 0;
        std::size_t num = 1;
        const int top = slots + values - 1;
        const int k = std::min(slots, values - 1);
        for (int i = 1; i <= k; ++i)
            num = num * static_cast<std::size_t>(top - k + i) / static_cast<std::size_t>(i);
        return num;
    };
    const int m = f.src_rank();
    const int n = f.dst_rank();
    std::size_t rank = 0;
    int prev = 0;
    for (int i = 0; i <= m; ++i) {
        for (int v = prev; v < f(i); ++v)
            rank += multichoose(m - i, n - v + 1);
        prev = f(i);
    }
    return rank;
}

/// Injective monotone map onto the given face (bitmask over [n]).
inline MonotoneMap face_map(std::uint32_t mask, int n)
{
    std::vector<int> v;
    for (int i = 0; i <= n; ++i)
        if (mask & (std::uint32_t{1} << i))
            v.push_back(i);
    if (v.empty())
        throw ArgumentError("empty face");
    return {n, std::move(v)};
}

/// Face string, e.g. mask {0,2} -> "02".
inline std::string face_string(std::uint32_t mask)
{
    std::string s;
    for (int i = 0; i < 32; ++i)
        if (mask & (std::uint32_t{1} << i))
            s.push_back(static_cast<char>('0' + i));
    return s;
}

/// A face-closed subobject K of F[m]; membership of a monotone map is decided
/// by its image.
class SimplicialSubset {
public:
    explicit SimplicialSubset(int ambient_rank)
        : m_(ambient_rank), member_(std::size_t{1} << (ambient_rank + 1), 0)
    {
        if (ambient_rank < 0 || ambient_rank > 20)
            throw ArgumentError("ambient rank out of supported range");
    }

    /// Face closure of the given faces.
    static SimplicialSubset generated_by(int m, const std::vector<std::uint32_t>& faces)
    {
        SimplicialSubset k(m);
        for (std::uint32_t f : faces)
            k.add_closed(f);
        return k;
    }

    static SimplicialSubset full(int m) { return generated_by(m, {(std::uint32_t{1} << (m + 1)) - 1}); }

    /// Vertices plus the consecutive edges {i-1,i}.
    static SimplicialSubset spine(int m)
    {
        std::vector<std::uint32_t> gens;
        for (int i = 0; i <= m; ++i)
            gens.push_back(std::uint32_t{1} << i);
        for (int i = 1; i <= m; ++i)
            gens.push_back((std::uint32_t{1} << (i - 1)) | (std::uint32_t{1} << i));
        return generated_by(m, gens);
    }

    /// All proper faces.
    static SimplicialSubset boundary(int m)
    {
        SimplicialSubset k(m);
        const std::uint32_t top = (std::uint32_t{1} << (m + 1)) - 1;
        for (std::uint32_t f = 1; f < top; ++f)
            k.member_[f] = 1;
        return k;
    }

    static SimplicialSubset vertices(int m)
    {
        SimplicialSubset k(m);
        for (int i = 0; i <= m; ++i)
            k.member_[std::uint32_t{1} << i] = 1;
        return k;
    }

    int ambient_rank() const noexcept { return m_; }

    bool contains_face(std::uint32_t mask) const { return mask != 0 && mask < member_.size() && member_[mask]; }

    bool contains(const MonotoneMap& f) const
    {
        if (f.dst_rank() != m_)
            throw ArgumentError("map does not land in F[" + std::to_string(m_) + "]");
        return contains_face(f.image_mask());
    }

    /// Nondegenerate faces as bitmasks, ordered by dimension then value.
    std::vector<std::uint32_t> faces() const
    {
        std::vector<std::uint32_t> out;
        for (std::uint32_t f = 1; f < member_.size(); ++f)
            if (member_[f])
                out.push_back(f);
        std::sort(out.begin(), out.end(), [](std::uint32_t a, std::uint32_t b) {
            int pa = std::popcount(a), pb = std::popcount(b);
            if (pa != pb)
                return pa < pb;
            return face_string(a) < face_string(b);
        });
        return out;
    }

    std::vector<std::string> face_strings() const
    {
        std::vector<std::string> out;
        for (auto f : faces())
            out.push_back(face_string(f));
        return out;
    }

    static SimplicialSubset from_face_strings(int m, const std::vector<std::string>& faces)
    {
        std::vector<std::uint32_t> masks;
        for (const auto& s : faces) {
            std::uint32_t mask = 0;
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (s[i] < '0' || s[i] > '9' || s[i] - '0' > m)
                    throw ParseError("bad vertex in face \"" + s + "\"", i);
                mask |= std::uint32_t{1} << (s[i] - '0');
            }
            masks.push_back(mask);
        }
        return generated_by(m, masks);
    }

    /// Every face whose subfaces are all members; verifies face closure.
    bool is_face_closed() const
    {
        for (std::uint32_t f = 1; f < member_.size(); ++f) {
            if (!member_[f])
                continue;
            for (std::uint32_t sub = (f - 1) & f; sub != 0; sub = (sub - 1) & f)
                if (!member_[sub])
                    return false;
        }
        return true;
    }

    friend bool operator==(const SimplicialSubset&, const SimplicialSubset&) = default;

private:
    void add_closed(std::uint32_t f)
    {
        if (f == 0 || f >= member_.size())
            throw ArgumentError("face outside F[" + std::to_string(m_) + "]");
        member_[f] = 1;
        for (std::uint32_t sub = (f - 1) & f; sub != 0; sub = (sub - 1) & f)
            member_[sub] = 1;
    }

    int m_;
    std::vector<std::uint8_t> member_;
};

/// Cover test: (i) every sequential [1] -> [m] lies in K; (ii) for every
/// monotone g: [n] -> [m] with n <= m, if g o delta^{0n} lies in K then g does.
inline bool is_cover(const SimplicialSubset& k)
{
    const int m = k.ambient_rank();
    for (const auto& d : enumerate_delta(1, m))
        if (d.is_sequential() && !k.contains(d))
            return false;
    for (int n = 0; n <= m; ++n) {
        for (const auto& g : enumerate_delta(n, m)) {
            MonotoneMap edge(m, {g(0), g(n)});
            if (k.contains(edge) && !k.contains(g))
                return false;
        }
    }
    return true;
}

/// delta^{-1} K for sequential delta: [p] -> [m].
inline SimplicialSubset pullback_cover(const MonotoneMap& delta, const SimplicialSubset& k)
{
    if (!delta.is_sequential())
        throw ArgumentError("pullback_cover needs a sequential map, got " + delta.to_string());
    if (delta.dst_rank() != k.ambient_rank())
        throw ArgumentError("rank mismatch in pullback_cover");
    const int p = delta.src_rank();
    std::vector<std::uint32_t> gens;
    for (std::uint32_t f = 1; f < (std::uint32_t{1} << (p + 1)); ++f)
        if (k.contains(compose(delta, face_map(f, p))))
            gens.push_back(f);
    return SimplicialSubset::generated_by(p, gens);
}

/// (delta, delta')^{-1}(M x N) for sequential delta: [p] -> [m], delta': [p] -> [n].
inline SimplicialSubset product_pullback_cover(const MonotoneMap& delta, const MonotoneMap& delta2,
                                               const SimplicialSubset& mcover, const SimplicialSubset& ncover)
{
    if (!delta.is_sequential() || !delta2.is_sequential())
        throw ArgumentError("product_pullback_cover needs sequential maps");
    if (delta.src_rank() != delta2.src_rank())
        throw ArgumentError("product_pullback_cover needs a common source");
    if (delta.dst_rank() != mcover.ambient_rank() || delta2.dst_rank() != ncover.ambient_rank())
        throw ArgumentError("rank mismatch in product_pullback_cover");
    const int p = delta.src_rank();
    std::vector<std::uint32_t> gens;
    for (std::uint32_t f = 1; f < (std::uint32_t{1} << (p + 1)); ++f) {
        auto face = face_map(f, p);
        if (mcover.contains(compose(delta, face)) && ncover.contains(compose(delta2, face)))
            gens.push_back(f);
    }
    return SimplicialSubset::generated_by(p, gens);
}

/// Every face-closed subset of F[m], the empty one included; m <= 3.
inline std::vector<SimplicialSubset> enumerate_face_closed(int m)
{
    if (m < 0 || m > 3)
        throw ArgumentError("exhaustive face-closed enumeration is limited to m <= 3");
    const std::uint32_t top = std::uint32_t{1} << (m + 1);
    std::vector<std::uint32_t> order;
    for (std::uint32_t f = 1; f < top; ++f)
        order.push_back(f);
    std::stable_sort(order.begin(), order.end(),
                     [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
    std::vector<SimplicialSubset> out;
    std::vector<std::uint32_t> chosen;
    std::vector<std::uint8_t> in(top, 0);
    // a face may join once all of its codimension-one faces have
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == order.size()) {
            out.push_back(SimplicialSubset::generated_by(m, chosen));
            return;
        }
        const std::uint32_t f = order[idx];
        self(self, idx + 1);
        bool ok = true;
        if (std::popcount(f) > 1)
            for (int b = 0; b <= m && ok; ++b)
                if (((f >> b) & 1u) && !in[f & ~(std::uint32_t{1} << b)])
                    ok = false;
        if (ok) {
            in[f] = 1;
            chosen.push_back(f);
            self(self, idx + 1);
            chosen.pop_back();
            in[f] = 0;
        }
    };
    rec(rec, 0);
    return out;
}

/// Random face-closed subset of F[m]: each face joins with probability 1/2
/// when its boundary is present.
template <class Rng>
SimplicialSubset random_face_closed(int m, Rng& rng)
{
    const std::uint32_t top = std::uint32_t{1} << (m + 1);
    std::vector<std::uint32_t> order;
    for (std::uint32_t f = 1; f < top; ++f)
        order.push_back(f);
    std::stable_sort(order.begin(), order.end(),
                     [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
    std::vector<std::uint8_t> in(top, 0);
    std::vector<std::uint32_t> chosen;
    for (std::uint32_t f : order) {
        bool ok = true;
        if (std::popcount(f) > 1)
            for (int b = 0; b <= m && ok; ++b)
                if (((f >> b) & 1u) && !in[f & ~(std::uint32_t{1} << b)])
                    ok = false;
        if (ok && (rng() & 1u)) {
            in[f] = 1;
            chosen.push_back(f);
        }
    }
    return SimplicialSubset::generated_by(m, chosen);
}

} // namespace thetakit

#endif // THETAKIT_DELTA_HPP
