#ifndef THETAKIT_HOMOLOGY_HPP
#define THETAKIT_HOMOLOGY_HPP

// Order complexes of finite posets, integer Smith normal form, reduced
// homology, and certificates for retractions of posets.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace thetakit {

using BigInt = boost::multiprecision::cpp_int;

struct FinitePoset {
    int size = 0;
    std::vector<std::vector<char>> leq;

    bool le(int a, int b) const { return leq[a][b] != 0; }
    bool lt(int a, int b) const { return a != b && leq[a][b]; }

    std::optional<std::string> check() const
    {
        for (int a = 0; a < size; ++a) {
            if (!leq[a][a])
                return "not reflexive at " + std::to_string(a);
            for (int b = 0; b < size; ++b) {
                if (a != b && leq[a][b] && leq[b][a])
                    return "not antisymmetric";
                for (int c = 0; c < size; ++c)
                    if (leq[a][b] && leq[b][c] && !leq[a][c])
                        return "not transitive";
            }
        }
        return std::nullopt;
    }

    FinitePoset restrict_to(const std::vector<int>& keep) const
    {
        FinitePoset out;
        out.size = static_cast<int>(keep.size());
        out.leq.assign(out.size, std::vector<char>(out.size, 0));
        for (int i = 0; i < out.size; ++i)
            for (int j = 0; j < out.size; ++j)
                out.leq[i][j] = leq[keep[i]][keep[j]];
        return out;
    }

    static FinitePoset chain(int k)
    {
        FinitePoset p;
        p.size = k;
        p.leq.assign(k, std::vector<char>(k, 0));
        for (int i = 0; i < k; ++i)
            for (int j = i; j < k; ++j)
                p.leq[i][j] = 1;
        return p;
    }

    static FinitePoset antichain(int k)
    {
        FinitePoset p;
        p.size = k;
        p.leq.assign(k, std::vector<char>(k, 0));
        for (int i = 0; i < k; ++i)
            p.leq[i][i] = 1;
        return p;
    }
};

inline FinitePoset product_poset(const std::vector<FinitePoset>& parts)
{
    FinitePoset out;
    out.size = 1;
    for (const auto& p : parts)
        out.size *= p.size;
    out.leq.assign(out.size, std::vector<char>(out.size, 0));
    auto digits = [&](int x) {
        std::vector<int> d(parts.size());
        for (int i = static_cast<int>(parts.size()) - 1; i >= 0; --i) {
            d[i] = x % parts[i].size;
            x /= parts[i].size;
        }
        return d;
    };
    for (int a = 0; a < out.size; ++a) {
        const auto da = digits(a);
        for (int b = 0; b < out.size; ++b) {
            const auto db = digits(b);
            bool ok = true;
            for (std::size_t i = 0; i < parts.size() && ok; ++i)
                ok = parts[i].le(da[i], db[i]);
            out.leq[a][b] = ok;
        }
    }
    return out;
}

/// Sparse integer matrix, rows of (column, value) sorted by column.
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, long long>>> entries;
};

/// The order complex: degree d holds the strict chains with d + 1 elements;
/// boundary[d] maps degree d to degree d - 1 (boundary[0] is the
/// augmentation onto the empty chain).
struct ChainComplex {
    std::vector<std::vector<std::vector<int>>> basis;
    std::vector<SparseMatrix> boundary;

    int top_degree() const { return static_cast<int>(basis.size()) - 1; }
    std::size_t rank(int d) const { return d < 0 ? 1 : basis.at(d).size(); }
};

namespace detail {

inline SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b)
{
    // a: rows x k (row-major), b: k x cols, stored as rows of columns
    SparseMatrix out;
    out.rows = a.rows;
    out.cols = b.cols;
    out.entries.resize(a.rows);
    for (int i = 0; i < a.rows; ++i) {
        std::map<int, long long> acc;
        for (auto [k, v] : a.entries[i])
            for (auto [j, w] : b.entries[k])
                acc[j] += v * w;
        for (auto [j, v] : acc)
            if (v != 0)
                out.entries[i].emplace_back(j, v);
    }
    return out;
}

} // namespace detail

/// Boundary matrices are stored with one row per chain of the lower degree
/// and one column per chain of the higher degree.
inline ChainComplex nerve_complex(const FinitePoset& p)
{
    ChainComplex c;
    std::vector<std::vector<int>> level;
    for (int a = 0; a < p.size; ++a)
        level.push_back({a});
    while (!level.empty()) {
        c.basis.push_back(level);
        std::vector<std::vector<int>> next;
        for (const auto& ch : level)
            for (int b = 0; b < p.size; ++b)
                if (p.lt(ch.back(), b)) {
                    next.push_back(ch);
                    next.back().push_back(b);
                }
        level = std::move(next);
    }
    for (int d = 0; d <= c.top_degree(); ++d) {
        SparseMatrix m;
        m.cols = static_cast<int>(c.basis[d].size());
        if (d == 0) {
            m.rows = 1;
            m.entries.resize(1);
            for (int j = 0; j < m.cols; ++j)
                m.entries[0].emplace_back(j, 1);
        } else {
            std::map<std::vector<int>, int> index;
            for (int i = 0; i < static_cast<int>(c.basis[d - 1].size()); ++i)
                index.emplace(c.basis[d - 1][i], i);
            m.rows = static_cast<int>(c.basis[d - 1].size());
            m.entries.resize(m.rows);
            for (int j = 0; j < m.cols; ++j) {
                const auto& ch = c.basis[d][j];
                for (int i = 0; i <= d; ++i) {
                    std::vector<int> face = ch;
                    face.erase(face.begin() + i);
                    m.entries[index.at(face)].emplace_back(j, i % 2 == 0 ? 1 : -1);
                }
            }
        }
        c.boundary.push_back(std::move(m));
    }
    for (int d = 1; d <= c.top_degree(); ++d) {
        const SparseMatrix dd = detail::multiply(c.boundary[d - 1], c.boundary[d]);
        for (const auto& row : dd.entries)
            if (!row.empty())
                throw InvariantViolation("boundary of boundary is nonzero in degree " + std::to_string(d));
    }
    return c;
}

namespace detail {

struct Overflow {};

inline long long checked_mul(long long a, long long b)
{
    long long r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Overflow{};
    return r;
}

inline long long checked_sub(long long a, long long b)
{
    long long r;
    if (__builtin_sub_overflow(a, b, &r))
        throw Overflow{};
    return r;
}

inline BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt checked_sub(const BigInt& a, const BigInt& b) { return a - b; }

template <class Int>
Int abs_value(const Int& x)
{
    return x < 0 ? Int(-x) : x;
}

/// Dense Smith normal form by minimal-absolute-value pivoting; returns the
/// nonzero invariant factors.
template <class Int>
std::vector<Int> dense_snf(std::vector<std::vector<Int>> a)
{
    std::vector<Int> out;
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    int t = 0;
    while (t < rows && t < cols) {
        int pr = -1;
        int pc = -1;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j)
                if (a[i][j] != 0 && (pr < 0 || abs_value(a[i][j]) < abs_value(a[pr][pc]))) {
                    pr = i;
                    pc = j;
                }
        if (pr < 0)
            break;
        std::swap(a[t], a[pr]);
        for (int i = 0; i < rows; ++i)
            std::swap(a[i][t], a[i][pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0)
                    continue;
                const Int q = a[i][t] / a[t][t];
                for (int j = t; j < cols; ++j)
                    a[i][j] = checked_sub(a[i][j], checked_mul(q, a[t][j]));
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (int j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0)
                    continue;
                const Int q = a[t][j] / a[t][t];
                for (int i = t; i < rows; ++i)
                    a[i][j] = checked_sub(a[i][j], checked_mul(q, a[i][t]));
                if (a[t][j] != 0) {
                    for (int i = 0; i < rows; ++i)
                        std::swap(a[i][t], a[i][j]);
                    clean = false;
                }
            }
            if (clean) {
                // the pivot must divide the rest of the block
                for (int i = t + 1; i < rows && clean; ++i)
                    for (int j = t + 1; j < cols && clean; ++j)
                        if (a[i][j] % a[t][t] != 0) {
                            for (int k = t; k < cols; ++k)
                                a[t][k] = a[t][k] + a[i][k];
                            clean = false;
                        }
            }
        }
        out.push_back(abs_value(a[t][t]));
        ++t;
    }
    return out;
}

/// Eliminates unit pivots sparsely, then finishes densely.
template <class Int>
std::vector<Int> sparse_snf(const SparseMatrix& m)
{
    std::vector<std::map<int, Int>> rows(m.rows);
    std::vector<std::map<int, char>> col_rows(m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (auto [j, v] : m.entries[i])
            if (v != 0) {
                rows[i][j] = Int(v);
                col_rows[j][i] = 1;
            }
    std::vector<char> row_alive(m.rows, 1);
    std::vector<char> col_alive(m.cols, 1);
    std::vector<Int> out;
    bool progress = true;
    while (progress) {
        progress = false;
        int best_r = -1;
        int best_c = -1;
        std::size_t best_cost = std::numeric_limits<std::size_t>::max();
        for (int i = 0; i < m.rows; ++i) {
            if (!row_alive[i] || rows[i].size() >= best_cost)
                continue;
            for (const auto& [j, v] : rows[i])
                if (v == 1 || v == -1) {
                    const std::size_t cost = rows[i].size() * col_rows[j].size();
                    if (cost < best_cost) {
                        best_cost = cost;
                        best_r = i;
                        best_c = j;
                    }
                }
        }
        if (best_r < 0)
            break;
        progress = true;
        const Int pv = rows[best_r].at(best_c);
        std::vector<int> others;
        for (const auto& [i, one] : col_rows[best_c])
            if (i != best_r)
                others.push_back(i);
        for (int i : others) {
            const Int q = rows[i].at(best_c) * pv; // pv = +-1, so q = a_ic / pv
            for (const auto& [j, v] : rows[best_r]) {
                Int nv = checked_sub(rows[i].count(j) ? rows[i][j] : Int(0), checked_mul(q, v));
                if (nv == 0) {
                    rows[i].erase(j);
                    col_rows[j].erase(i);
                } else {
                    rows[i][j] = nv;
                    col_rows[j][i] = 1;
                }
            }
        }
        for (const auto& [j, v] : rows[best_r])
            col_rows[j].erase(best_r);
        rows[best_r].clear();
        row_alive[best_r] = 0;
        col_alive[best_c] = 0;
        out.push_back(Int(1));
    }
    std::vector<int> live_rows;
    std::vector<int> live_cols;
    for (int i = 0; i < m.rows; ++i)
        if (row_alive[i] && !rows[i].empty())
            live_rows.push_back(i);
    for (int j = 0; j < m.cols; ++j)
        if (col_alive[j] && !col_rows[j].empty())
            live_cols.push_back(j);
    std::vector<std::vector<Int>> dense(live_rows.size(), std::vector<Int>(live_cols.size(), Int(0)));
    for (std::size_t a = 0; a < live_rows.size(); ++a)
        for (std::size_t b = 0; b < live_cols.size(); ++b) {
            auto it = rows[live_rows[a]].find(live_cols[b]);
            if (it != rows[live_rows[a]].end())
                dense[a][b] = it->second;
        }
    for (auto& f : dense_snf(std::move(dense)))
        out.push_back(f);
    return out;
}

} // namespace detail

/// Nonzero invariant factors, computed in 64-bit arithmetic and redone in
/// arbitrary precision on overflow.
inline std::vector<BigInt> smith_normal_form(const SparseMatrix& m)
{
    try {
        std::vector<BigInt> out;
        for (long long f : detail::sparse_snf<long long>(m))
            out.emplace_back(f);
        return out;
    } catch (const detail::Overflow&) {
        return detail::sparse_snf<BigInt>(m);
    }
}

inline std::vector<BigInt> smith_normal_form(const std::vector<std::vector<long long>>& dense)
{
    SparseMatrix m;
    m.rows = static_cast<int>(dense.size());
    m.cols = m.rows == 0 ? 0 : static_cast<int>(dense[0].size());
    m.entries.resize(m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (dense[i][j] != 0)
                m.entries[i].emplace_back(j, dense[i][j]);
    return smith_normal_form(m);
}

/// Same computation with the 64-bit stage skipped.
inline std::vector<BigInt> smith_normal_form_big(const SparseMatrix& m) { return detail::sparse_snf<BigInt>(m); }

struct HomologyGroup {
    int degree = 0;
    std::size_t betti = 0;
    std::vector<BigInt> torsion;
};

struct HomologyReport {
    std::vector<HomologyGroup> groups; // degrees -1 .. top
    long long euler_from_ranks = 0;
    long long euler_from_betti = 0;

    bool vanishes() const
    {
        return std::all_of(groups.begin(), groups.end(),
                           [](const HomologyGroup& g) { return g.betti == 0 && g.torsion.empty(); });
    }

    std::string text() const
    {
        std::ostringstream os;
        for (const auto& g : groups) {
            os << g.degree << ": betti " << g.betti << ", torsion [";
            for (std::size_t i = 0; i < g.torsion.size(); ++i)
                os << (i ? "," : "") << g.torsion[i];
            os << "]\n";
        }
        return os.str();
    }
};

/// Reduced integer homology, degrees -1 .. top.
inline HomologyReport reduced_homology(const ChainComplex& c)
{
    HomologyReport rep;
    const int top = c.top_degree();
    std::vector<std::vector<BigInt>> factors(top + 1);
    for (int d = 0; d <= top; ++d)
        factors[d] = smith_normal_form(c.boundary[d]);
    // boundary[d]: C_d -> C_{d-1}, with C_{-1} the empty chain
    auto rank_of = [&](int d) -> std::size_t { return d >= 0 && d <= top ? factors[d].size() : 0; };
    for (int d = -1; d <= top; ++d) {
        HomologyGroup g;
        g.degree = d;
        const std::size_t dim = c.rank(d);
        g.betti = dim - rank_of(d) - rank_of(d + 1);
        if (d + 1 <= top)
            for (const auto& f : factors[d + 1])
                if (f > 1)
                    g.torsion.push_back(f);
        rep.groups.push_back(g);
        const long long sign = (d + 1) % 2 == 0 ? -1 : 1; // degree -1 has sign -1
        rep.euler_from_ranks += sign * static_cast<long long>(dim);
        rep.euler_from_betti += sign * static_cast<long long>(g.betti);
    }
    if (rep.euler_from_ranks != rep.euler_from_betti)
        throw InvariantViolation("Euler characteristic mismatch");
    return rep;
}

inline HomologyReport reduced_homology(const FinitePoset& p) { return reduced_homology(nerve_complex(p)); }

enum class RetractionDirection { below, above };

inline const char* to_string(RetractionDirection d) { return d == RetractionDirection::below ? "below" : "above"; }

struct RetractionCertificate {
    bool monotone = false;
    bool fixes = false;
    bool lands = false;
    bool comparable = false;
    std::string witness;

    bool ok() const { return monotone && fixes && lands && comparable; }
};

/// r: P -> S with r|S = id, monotone, and r(p) <= p (below) or r(p) >= p
/// (above) for every p; r is indexed by elements of P.
inline RetractionCertificate certify_retraction(const FinitePoset& p, const std::vector<int>& s,
                                                const std::vector<int>& r, RetractionDirection dir)
{
    RetractionCertificate c;
    if (static_cast<int>(r.size()) != p.size)
        throw ArgumentError("retraction must be total on P");
    std::vector<char> in_s(p.size, 0);
    for (int x : s)
        in_s.at(x) = 1;
    c.lands = std::all_of(r.begin(), r.end(), [&](int y) { return y >= 0 && y < p.size && in_s[y]; });
    if (!c.lands) {
        c.witness = "image leaves the subposet";
        return c;
    }
    c.fixes = std::all_of(s.begin(), s.end(), [&](int x) { return r[x] == x; });
    c.monotone = true;
    c.comparable = true;
    for (int a = 0; a < p.size; ++a) {
        const bool cmp = dir == RetractionDirection::below ? p.le(r[a], a) : p.le(a, r[a]);
        if (!cmp && c.comparable) {
            c.comparable = false;
            c.witness = "element " + std::to_string(a) + " is not " + to_string(dir) + " its image";
        }
        for (int b = 0; b < p.size; ++b)
            if (p.le(a, b) && !p.le(r[a], r[b]) && c.monotone) {
                c.monotone = false;
                c.witness = "order " + std::to_string(a) + " <= " + std::to_string(b) + " is not preserved";
            }
    }
    if (!c.fixes && c.witness.empty())
        c.witness = "subposet is not fixed";
    return c;
}

} // namespace thetakit

#endif // THETAKIT_HOMOLOGY_HPP
