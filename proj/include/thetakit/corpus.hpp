#ifndef THETAKIT_CORPUS_HPP
#define THETAKIT_CORPUS_HPP

// Small strict 1- and 2-categories used as test inputs: posets, monoids,
// groupoids, random subcategories of FinSet, wreath and suspension
// 2-categories, and free cells.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cells.hpp"
#include "ncat.hpp"

namespace thetakit {

/// A finite 1-category given by objects 0..k-1, morphisms with endpoints, an
/// identity per object and a composition function (g o f).
inline StrictNCat category1(int objects, const std::vector<std::pair<int, int>>& arrows,
                            const std::vector<int>& identities, const std::function<int(int, int)>& comp)
{
    std::vector<int> counts{objects, static_cast<int>(arrows.size())};
    return StrictNCat::tabulate(
        1, counts, [&](int, int x) { return arrows[x].first; }, [&](int, int x) { return arrows[x].second; },
        [&](int, int x) { return identities[x]; }, [&](int, int, int g, int f) { return comp(g, f); });
}

/// The poset on 0..k-1 with the given order relation (reflexive, transitive).
inline StrictNCat poset_category(int k, const std::function<bool(int, int)>& leq)
{
    std::vector<std::pair<int, int>> arrows;
    std::map<std::pair<int, int>, int> idx;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (leq(i, j)) {
                idx[{i, j}] = static_cast<int>(arrows.size());
                arrows.emplace_back(i, j);
            }
    std::vector<int> ids;
    for (int i = 0; i < k; ++i)
        ids.push_back(idx.at({i, i}));
    return category1(k, arrows, ids, [&](int g, int f) { return idx.at({arrows[f].first, arrows[g].second}); });
}

/// The chain [k] = 0 < 1 < ... < k.
inline StrictNCat chain_category(int k)
{
    return poset_category(k + 1, [](int i, int j) { return i <= j; });
}

/// One object; elements 0..n-1 with unit 0 and the given multiplication.
inline StrictNCat monoid_category(const std::vector<std::vector<int>>& table)
{
    const int n = static_cast<int>(table.size());
    std::vector<std::pair<int, int>> arrows(n, {0, 0});
    return category1(1, arrows, {0}, [&](int g, int f) { return table[g][f]; });
}

inline StrictNCat cyclic_group(int n)
{
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            t[a][b] = (a + b) % n;
    return monoid_category(t);
}

/// Exactly one arrow between any two of k objects.
inline StrictNCat chaotic_groupoid(int k)
{
    return poset_category(k, [](int, int) { return true; });
}

/// k objects, only identities.
inline StrictNCat discrete_category(int k)
{
    return poset_category(k, [](int i, int j) { return i == j; });
}

/// The subcategory of FinSet generated by `gens` random functions between
/// sets of size 1..max_set on `objects` objects; nullopt when the closure
/// exceeds max_arrows.
template <class Rng>
std::optional<StrictNCat> random_finset_category(Rng& rng, int objects, int gens, int max_set, int max_arrows)
{
    std::uniform_int_distribution<int> size_dist(1, max_set);
    std::vector<int> sizes(objects);
    for (auto& s : sizes)
        s = size_dist(rng);
    using Arrow = std::tuple<int, int, std::vector<int>>;
    std::set<Arrow> arrows;
    for (int o = 0; o < objects; ++o) {
        std::vector<int> id(sizes[o]);
        for (int i = 0; i < sizes[o]; ++i)
            id[i] = i;
        arrows.insert({o, o, id});
    }
    std::uniform_int_distribution<int> obj_dist(0, objects - 1);
    for (int g = 0; g < gens; ++g) {
        const int s = obj_dist(rng);
        const int t = obj_dist(rng);
        std::vector<int> fn(sizes[s]);
        for (auto& v : fn)
            v = std::uniform_int_distribution<int>(0, sizes[t] - 1)(rng);
        arrows.insert({s, t, fn});
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Arrow> cur(arrows.begin(), arrows.end());
        for (const auto& f : cur)
            for (const auto& g : cur) {
                if (std::get<1>(f) != std::get<0>(g))
                    continue;
                std::vector<int> h;
                for (int v : std::get<2>(f))
                    h.push_back(std::get<2>(g)[v]);
                if (arrows.insert({std::get<0>(f), std::get<1>(g), h}).second)
                    grew = true;
                if (static_cast<int>(arrows.size()) > max_arrows)
                    return std::nullopt;
            }
    }
    std::vector<Arrow> list(arrows.begin(), arrows.end());
    std::map<Arrow, int> idx;
    for (int i = 0; i < static_cast<int>(list.size()); ++i)
        idx[list[i]] = i;
    std::vector<std::pair<int, int>> ends;
    for (const auto& a : list)
        ends.emplace_back(std::get<0>(a), std::get<1>(a));
    std::vector<int> ids;
    for (int o = 0; o < objects; ++o) {
        std::vector<int> id(sizes[o]);
        for (int i = 0; i < sizes[o]; ++i)
            id[i] = i;
        ids.push_back(idx.at({o, o, id}));
    }
    return category1(objects, ends, ids, [&](int g, int f) {
        std::vector<int> h;
        for (int v : std::get<2>(list[f]))
            h.push_back(std::get<2>(list[g])[v]);
        return idx.at({std::get<0>(list[f]), std::get<1>(list[g]), h});
    });
}

/// One object, one 1-cell, 2-cells a commutative monoid under both compositions.
inline StrictNCat double_suspension(const std::vector<std::vector<int>>& table)
{
    const int n = static_cast<int>(table.size());
    return StrictNCat::tabulate(
        2, {1, 1, n}, [](int, int) { return 0; }, [](int, int) { return 0; }, [](int, int) { return 0; },
        [&](int d, int, int a, int b) { return d == 1 ? 0 : table[a][b]; });
}

/// Zero-dimensional category on k points.
inline StrictNCat point_set(int k)
{
    StrictNCat c = StrictNCat::tabulate(
        0, {k}, [](int, int) { return 0; }, [](int, int) { return 0; }, [](int, int) { return 0; },
        [](int, int, int, int) { return 0; });
    return c;
}

struct NamedCategory {
    std::string name;
    StrictNCat cat;
};

/// The fixed corpus: 1-categories and 2-categories of every listed kind,
/// followed by `random_count` random FinSet subcategories.
inline std::vector<NamedCategory> build_corpus(int random_count = 10, std::uint32_t seed = 17)
{
    std::vector<NamedCategory> out;
    for (int k = 0; k <= 3; ++k)
        out.push_back({"chain " + std::to_string(k), chain_category(k)});
    out.push_back({"discrete 2", discrete_category(2)});
    out.push_back({"V poset", poset_category(3, [](int i, int j) { return i == j || i == 0; })});
    out.push_back({"square poset", poset_category(4, [](int i, int j) { return (i & j) == i; })});
    out.push_back({"chaotic groupoid 2", chaotic_groupoid(2)});
    out.push_back({"chaotic groupoid 3", chaotic_groupoid(3)});
    out.push_back({"group Z2", cyclic_group(2)});
    out.push_back({"group Z3", cyclic_group(3)});
    out.push_back({"monoid {1,0}", monoid_category({{0, 1}, {1, 1}})});
    out.push_back({"monoid left-zero", monoid_category({{0, 1, 2}, {1, 1, 1}, {2, 2, 2}})});
    out.push_back({"monoid {1,a,a2}", monoid_category({{0, 1, 2}, {1, 2, 2}, {2, 2, 2}})});
    out.push_back({"Z2 + point", [] {
                       // Z2 on object 0, object 1 reached by a single arrow
                       std::vector<std::pair<int, int>> arrows{{0, 0}, {0, 0}, {1, 1}, {0, 1}};
                       return category1(2, arrows, {0, 2}, [](int g, int f) {
                           if (g == 2)
                               return f;
                           if (f == 2 || f == 0)
                               return g;
                           if (g == 3)
                               return 3;
                           return (g ^ f) & 1;
                       });
                   }()});
    // 2-categories
    auto wreath1 = [](const StrictNCat& c) {
        std::vector<const StrictNCat*> parts{&c};
        return wreath(2, parts).cat;
    };
    out.push_back({"[1](chain 1)", wreath1(chain_category(1))});
    out.push_back({"[1](chaotic groupoid 2)", wreath1(chaotic_groupoid(2))});
    out.push_back({"[1](group Z2)", wreath1(cyclic_group(2))});
    out.push_back({"[1](monoid {1,0})", wreath1(monoid_category({{0, 1}, {1, 1}}))});
    {
        StrictNCat a = chain_category(1);
        StrictNCat b = cyclic_group(2);
        std::vector<const StrictNCat*> parts{&a, &b};
        out.push_back({"[2](chain 1, group Z2)", wreath(2, parts).cat});
    }
    out.push_back({"double suspension Z2", double_suspension({{0, 1}, {1, 0}})});
    out.push_back({"double suspension {1,0}", double_suspension({{0, 1}, {1, 1}})});
    for (const char* s : {"[0]", "[1]([0])", "[1]([1])", "[2]([1],[0])", "[1]([2])", "[2]([1],[1])"})
        out.push_back({std::string("tau ") + s, tau(ThetaObject::parse(s, 2))->cat});
    std::mt19937 rng(seed);
    int made = 0;
    while (made < random_count) {
        const int objects = std::uniform_int_distribution<int>(1, 4)(rng);
        const int gens = std::uniform_int_distribution<int>(1, 3)(rng);
        auto c = random_finset_category(rng, objects, gens, 2, 12);
        if (!c)
            continue;
        out.push_back({"finset " + std::to_string(made), *c});
        ++made;
    }
    return out;
}

/// The subpresheaf of F[m] (m = ambient rank of k) on the simplices lying in k.
inline FinPresheaf simplicial_subset_presheaf(const Window::Ptr& w, const SimplicialSubset& k)
{
    const int m = k.ambient_rank();
    const int t = w->require(ThetaObject::simplex(w->level(), m));
    Sub s = subpresheaf(yoneda(w, ThetaObject::simplex(w->level(), m)),
                        [&](int a, int e) { return k.contains(w->delta(w->hom_begin(a, t) + e)); });
    return s.presheaf;
}

/// A random finite presheaf on the simplex window dw: a face-closed subset
/// of some F[m], a coproduct of two, a gluing of two along a vertex, or the
/// nerve of a random category.
template <class Rng>
FinPresheaf random_simplicial_presheaf(const Window::Ptr& dw, Rng& rng)
{
    if (dw->level() != 1)
        throw ArgumentError("random simplicial presheaves live on a level-1 window");
    const int top = std::min(dw->bound(), 3);
    auto piece = [&]() {
        const int m = std::uniform_int_distribution<int>(0, top)(rng);
        SimplicialSubset k = random_face_closed(m, rng);
        bool any = false;
        for (int v = 0; v <= m; ++v)
            any = any || k.contains_face(std::uint32_t{1} << v);
        if (!any)
            k = SimplicialSubset::generated_by(m, {1});
        return simplicial_subset_presheaf(dw, k);
    };
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0:
        return piece();
    case 1:
        return coproduct(piece(), piece());
    case 2: {
        FinPresheaf a = piece();
        FinPresheaf b = piece();
        FinPresheaf pt = yoneda(dw, ThetaObject::simplex(1, 0));
        const int t0 = dw->terminal();
        auto vertex = [&](const FinPresheaf& x) {
            const int v = std::uniform_int_distribution<int>(0, x.size(t0) - 1)(rng);
            return yoneda_element_map(x, t0, v);
        };
        return pushout(pt, a, b, vertex(a), vertex(b)).presheaf;
    }
    default:
        for (;;) {
            auto c = random_finset_category(rng, std::uniform_int_distribution<int>(1, 3)(rng), 2, 2, 8);
            if (c)
                return dnerve(*c, dw);
        }
    }
}

inline StrictNCat corpus_category(const std::string& name)
{
    for (auto& nc : build_corpus(0))
        if (nc.name == name)
            return nc.cat;
    throw ArgumentError("no corpus category named " + name);
}

/// Presheaves by name: terminal, constant:K, representable:OBJ, spine:M,
/// full:M, boundary:M, cell:K, cell-boundary:K, dnerve:CATEGORY.
inline FinPresheaf named_presheaf(const std::string& spec, const Window::Ptr& w)
{
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto number = [&]() {
        try {
            std::size_t used = 0;
            const int v = std::stoi(arg, &used);
            if (used != arg.size() || v < 0)
                throw ArgumentError("");
            return v;
        } catch (const std::exception&) {
            throw ArgumentError("presheaf " + spec + " needs a non-negative integer argument");
        }
    };
    if (kind == "terminal" && arg.empty())
        return terminal_presheaf(w);
    if (kind == "constant")
        return constant_presheaf(w, number());
    if (kind == "representable")
        return yoneda(w, ThetaObject::parse(arg, w->level()));
    if (kind == "spine")
        return simplicial_subset_presheaf(w, SimplicialSubset::spine(number()));
    if (kind == "full")
        return simplicial_subset_presheaf(w, SimplicialSubset::full(number()));
    if (kind == "boundary")
        return simplicial_subset_presheaf(w, SimplicialSubset::boundary(number()));
    if (kind == "cell")
        return cell(w, number());
    if (kind == "cell-boundary")
        return cell_boundary(w, number()).boundary;
    if (kind == "dnerve") {
        StrictNCat c = corpus_category(arg);
        if (c.dimension() != w->level())
            throw ArgumentError("category " + arg + " has dimension " + std::to_string(c.dimension()) +
                                ", window level is " + std::to_string(w->level()));
        return dnerve(c, w);
    }
    throw ArgumentError("unknown presheaf " + spec);
}

} // namespace thetakit

#endif // THETAKIT_CORPUS_HPP
