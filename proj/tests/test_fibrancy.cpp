#include <gtest/gtest.h>

#include <random>

#include "thetakit/corpus.hpp"
#include "thetakit/fibrancy.hpp"

using namespace thetakit;

namespace {

int iso_count(const StrictNCat& c)
{
    int out = 0;
    for (int f = 0; f < c.count(1); ++f)
        out += is_k_isomorphism(c, 1, f);
    return out;
}

} // namespace

TEST(Segal, MonoidNerve)
{
    auto w = Window::get(1, 4);
    auto x = dnerve(monoid_category({{0, 1}, {1, 1}}), w);
    auto s = segal_shape(x, ThetaObject::simplex(1, 2));
    EXPECT_EQ(s.source_size, 4);
    EXPECT_EQ(s.target_size, 4u);
    EXPECT_TRUE(s.bijective);
    EXPECT_TRUE(check_segal_discrete(x).passes());
}

TEST(Segal, SpineFails)
{
    auto w = Window::get(1, 3);
    auto x = simplicial_subset_presheaf(w, SimplicialSubset::spine(2));
    auto s = segal_shape(x, ThetaObject::simplex(1, 2));
    EXPECT_EQ(s.source_size, 7);
    EXPECT_EQ(s.target_size, 8u);
    EXPECT_FALSE(s.bijective);
    EXPECT_NE(s.witness.find("no filler"), std::string::npos);
    auto rep = check_segal_discrete(x);
    EXPECT_FALSE(rep.passes());
    EXPECT_NE(rep.text().find("7 vs 8"), std::string::npos);
    auto full = simplicial_subset_presheaf(w, SimplicialSubset::full(2));
    EXPECT_TRUE(check_segal_discrete(full).passes());
}

TEST(Segal, RepresentablesPass)
{
    auto w = Window::get(2, 4);
    for (const auto& theta : w->objects()) {
        auto rep = check_segal_discrete(yoneda(w, theta));
        EXPECT_TRUE(rep.passes()) << theta.str() << "\n" << rep.text();
    }
    auto w3 = Window::get(3, 3);
    for (const auto& theta : w3->objects())
        EXPECT_TRUE(check_segal_discrete(yoneda(w3, theta)).passes()) << theta.str();
}

TEST(Segal, ShapesCoverWindow)
{
    auto w = Window::get(2, 4);
    auto rep = check_segal_discrete(terminal_presheaf(w));
    std::set<std::string> names;
    for (const auto& s : rep.shapes)
        names.insert(s.theta.str());
    EXPECT_TRUE(names.count("[2]([0],[0])"));
    EXPECT_TRUE(names.count("[1]([2](.,.))"));
    EXPECT_TRUE(names.count("[2]([1](.),[1](.))"));
    EXPECT_FALSE(names.count("[1]([1](.))"));
    EXPECT_EQ(rep.shapes.size(), 13u);
}

TEST(Segal, CorpusNervesPass)
{
    auto w1 = Window::get(1, 4);
    auto w2 = Window::get(2, 3);
    for (const auto& nc : build_corpus()) {
        auto x = dnerve(nc.cat, nc.cat.dimension() == 1 ? w1 : w2);
        EXPECT_TRUE(check_segal_discrete(x).passes()) << nc.name;
        EXPECT_TRUE(tstar_is_nerve(x)) << nc.name;
    }
}

TEST(HomotopyCategory, RecoversCategory)
{
    auto w = Window::get(1, 3);
    for (const auto& nc : build_corpus()) {
        if (nc.cat.dimension() != 1)
            continue;
        auto x = dnerve(nc.cat, w);
        auto h = homotopy_category(x);
        EXPECT_FALSE(h.check_axioms().has_value()) << nc.name;
        ASSERT_EQ(h.objects, nc.cat.count(0));
        ASSERT_EQ(h.morphisms(), nc.cat.count(1));
        std::vector<int> to_c(h.morphisms());
        std::vector<int> seen(nc.cat.count(1), 0);
        auto tt = tau(ThetaObject::simplex(1, 1));
        const int gen = tt->find(1, {0, 1, 0});
        int idx = 0;
        enumerate_functors(tt->cat, nc.cat, [&](const NFunctor& f) {
            to_c[idx++] = f[1][gen];
            return true;
        });
        for (int f : to_c)
            ++seen[f];
        EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; })) << nc.name;
        for (int f = 0; f < h.morphisms(); ++f)
            for (int g = 0; g < h.morphisms(); ++g)
                if (h.compose(g, f) >= 0) {
                    ASSERT_EQ(to_c[h.compose(g, f)], nc.cat.compose(1, 0, to_c[g], to_c[f])) << nc.name;
                }
    }
}

TEST(HomotopyCategory, SegalFailureRaises)
{
    auto w = Window::get(1, 3);
    auto x = simplicial_subset_presheaf(w, SimplicialSubset::spine(2));
    EXPECT_THROW(homotopy_category(x), ArgumentError);
}

TEST(Equivalences, Examples)
{
    auto w = Window::get(1, 4);
    auto g = equivalence_report(dnerve(chaotic_groupoid(2), w));
    EXPECT_EQ(g.count, 4u);
    EXPECT_TRUE(g.z_checked);
    EXPECT_EQ(g.z_maps, 4u);
    EXPECT_EQ(g.inverse_pairs, 4u);
    auto p = equivalence_report(dnerve(chain_category(1), w));
    EXPECT_EQ(p.count, 2u);
    EXPECT_EQ(p.z_maps, 2u);
    auto small = equivalence_report(dnerve(chain_category(1), Window::get(1, 2)));
    EXPECT_FALSE(small.z_checked);
    EXPECT_FALSE(small.note.empty());
}

TEST(Equivalences, ZAndEAgreeOnRandomCategories)
{
    std::mt19937 rng(5);
    auto w = Window::get(1, 4);
    auto e = chaotic_groupoid(2);
    int made = 0;
    while (made < 20) {
        auto c = random_finset_category(rng, 1 + made % 4, 3, 3, 12);
        if (!c)
            continue;
        ++made;
        auto rep = equivalence_report(dnerve(*c, w));
        const auto isos = static_cast<std::uint64_t>(iso_count(*c));
        EXPECT_EQ(rep.z_maps, isos);
        EXPECT_EQ(rep.count, isos);
        EXPECT_EQ(enumerate_functors(e, *c), isos);
    }
}

TEST(Completeness, Examples)
{
    auto w = Window::get(1, 4);
    auto poset = check_complete_discrete(dnerve(chain_category(1), w));
    EXPECT_TRUE(poset.complete());
    EXPECT_EQ(poset.levels.at(0).lower_cells, 2);
    EXPECT_EQ(poset.levels.at(0).equivalences, 2);
    auto chaotic = check_complete_discrete(dnerve(chaotic_groupoid(2), w));
    EXPECT_FALSE(chaotic.complete());
    EXPECT_NE(chaotic.levels.at(0).witness.find("2 != 4"), std::string::npos);
    auto w2 = Window::get(2, 3);
    auto two = check_complete_discrete(dnerve(corpus_category("[1](chaotic groupoid 2)"), w2));
    EXPECT_TRUE(two.levels.at(0).injective && two.levels.at(0).image_ok);
    EXPECT_FALSE(two.levels.at(1).image_ok);
}

TEST(Completeness, RigidIffComplete)
{
    auto w1 = Window::get(1, 4);
    auto w2 = Window::get(2, 3);
    int rigid = 0, not_rigid = 0;
    for (const auto& nc : build_corpus()) {
        auto r = check_rigid_iff_complete(nc.cat, nc.cat.dimension() == 1 ? w1 : w2);
        EXPECT_TRUE(r.agree()) << nc.name << ": " << r.witness;
        (r.rigid ? rigid : not_rigid) += 1;
    }
    EXPECT_GT(rigid, 0);
    EXPECT_GT(not_rigid, 0);
}

TEST(KEquivalences, MatchStrictCategory)
{
    auto w = Window::get(2, 3);
    for (const auto& nc : build_corpus()) {
        if (nc.cat.dimension() != 2)
            continue;
        auto x = dnerve(nc.cat, w);
        auto strict = k_equivalences(nc.cat);
        for (int k = 1; k <= 2; ++k) {
            auto eq = k_equivalence_set(x, k);
            const int t = w->require(sigma_power(k, 2));
            ASSERT_EQ(static_cast<int>(eq.size()), x.size(t));
            // a k-cell of the nerve is a functor from tau(sigma^k[0]); its top cell
            auto tt = tau(sigma_power(k, 2));
            int top = 0;
            while (tt->cat.is_identity(k, top))
                ++top;
            int idx = 0;
            enumerate_functors(tt->cat, nc.cat, [&](const NFunctor& f) {
                EXPECT_EQ(eq[idx] != 0, strict[k][f[k][top]] != 0) << nc.name << " k=" << k;
                ++idx;
                return true;
            });
        }
    }
}

TEST(UMap, IteratedMatchesDirect)
{
    auto w = Window::get(2, 4);
    for (const auto& theta : w->objects()) {
        auto x = yoneda(w, theta);
        const int p = x.size(w->terminal());
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b) {
                auto it = umap(x, 1, a, b);
                auto d = umap_direct(x, 1, a, b);
                ASSERT_EQ(it.members, d.members);
                ASSERT_EQ(it.presheaf.actions(), d.presheaf.actions());
            }
        const int c1 = w->require(sigma_power(1, 2));
        for (int f0 = 0; f0 < x.size(c1); ++f0)
            for (int f1 = 0; f1 < x.size(c1); ++f1) {
                auto e0 = std::pair{x.apply(w->rank(cell_face(1, 2, 0)), f0), x.apply(w->rank(cell_face(1, 2, 1)), f0)};
                auto e1 = std::pair{x.apply(w->rank(cell_face(1, 2, 0)), f1), x.apply(w->rank(cell_face(1, 2, 1)), f1)};
                if (e0 != e1) {
                    EXPECT_THROW(umap(x, 2, f0, f1), ArgumentError);
                    continue;
                }
                auto it = umap(x, 2, f0, f1);
                auto d = umap_direct(x, 2, f0, f1);
                ASSERT_EQ(it.members, d.members) << theta.str();
                ASSERT_EQ(it.presheaf.actions(), d.presheaf.actions());
            }
    }
}

TEST(Groupoid, Examples)
{
    auto w = Window::get(1, 4);
    auto c = check_groupoid_discrete(constant_presheaf(w, 3));
    EXPECT_TRUE(c.passes());
    EXPECT_TRUE(c.condition3);
    EXPECT_TRUE(c.groupoid_local);
    auto p = check_groupoid_discrete(dnerve(chain_category(1), w));
    EXPECT_FALSE(p.passes());
    EXPECT_FALSE(p.groupoid_local);
    auto g = check_groupoid_discrete(dnerve(chaotic_groupoid(2), w));
    EXPECT_TRUE(g.groupoid_local);
    EXPECT_FALSE(g.condition2);
    EXPECT_FALSE(g.condition3);
    auto w2 = Window::get(2, 3);
    EXPECT_TRUE(check_groupoid_discrete(constant_presheaf(w2, 2)).passes());
}

TEST(Groupoid, ConditionsAgreeOnCorpus)
{
    auto w1 = Window::get(1, 4);
    auto w2 = Window::get(2, 3);
    for (const auto& nc : build_corpus()) {
        auto r = check_groupoid_discrete(dnerve(nc.cat, nc.cat.dimension() == 1 ? w1 : w2));
        EXPECT_TRUE(r.conditions_agree()) << nc.name;
    }
    for (int k = 0; k <= 3; ++k) {
        EXPECT_TRUE(check_groupoid_discrete(constant_presheaf(w1, k)).conditions_agree());
        EXPECT_TRUE(check_groupoid_discrete(constant_presheaf(w2, k)).conditions_agree());
    }
    for (const auto& theta : w2->objects())
        EXPECT_TRUE(check_groupoid_discrete(yoneda(w2, theta)).conditions_agree()) << theta.str();
}

TEST(Moduli, BoundaryOfEdge)
{
    auto w = Window::get(1, 3);
    for (const auto& nc : build_corpus(3)) {
        if (nc.cat.dimension() != 1)
            continue;
        auto x = dnerve(nc.cat, w);
        auto [cells, boundary] = moduli(x, 1);
        const auto p = static_cast<std::uint64_t>(x.size(w->terminal()));
        EXPECT_EQ(boundary, p * p) << nc.name;
        EXPECT_EQ(cells, static_cast<std::uint64_t>(nc.cat.count(1)));
        EXPECT_EQ(moduli(x, 0).second, 1u);
    }
    auto w2 = Window::get(2, 3);
    auto x = yoneda(w2, ThetaObject::parse("[1]([1])", 2));
    // parallel pairs of 1-cells in the free 2-cell
    EXPECT_EQ(moduli(x, 2).second, 6u);
}

TEST(Truncation, ConstantPresheaves)
{
    auto w = Window::get(1, 3);
    EXPECT_TRUE(check_truncation_discrete(constant_presheaf(w, 1), -2).passes);
    EXPECT_FALSE(check_truncation_discrete(constant_presheaf(w, 2), -2).passes);
    EXPECT_FALSE(check_truncation_discrete(constant_presheaf(w, 3), -2).passes);
    EXPECT_TRUE(check_truncation_discrete(constant_presheaf(w, 3), -1).passes);
    EXPECT_TRUE(check_truncation_discrete(constant_presheaf(w, 0), -1).passes);
    auto w2 = Window::get(2, 3);
    // the boundary of the 2-cell is connected, so constant presheaves pass at every size
    EXPECT_TRUE(check_truncation_discrete(constant_presheaf(w2, 3), -2).passes);
    auto poset = dnerve(chain_category(1), w);
    EXPECT_FALSE(check_truncation_discrete(poset, -2).passes);
    EXPECT_TRUE(check_truncation_discrete(poset, -1).passes);
    auto two = dnerve(monoid_category({{0, 1}, {1, 1}}), w);
    EXPECT_FALSE(check_truncation_discrete(two, -1).passes);
    EXPECT_TRUE(check_truncation_discrete(two, 0).passes);
    auto high = check_truncation_discrete(two, 1);
    EXPECT_TRUE(high.passes);
    EXPECT_FALSE(high.note.empty());
    EXPECT_THROW(check_truncation_discrete(two, -3), ArgumentError);
}
