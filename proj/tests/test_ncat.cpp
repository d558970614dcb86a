#include <gtest/gtest.h>

#include "thetakit/corpus.hpp"
#include "thetakit/ncat.hpp"

using namespace thetakit;

namespace {

ThetaObject obj(const char* s, int level) { return ThetaObject::parse(s, level); }

} // namespace

TEST(NCat, TauShapes)
{
    auto t0 = tau(obj("[0]", 2))->cat;
    EXPECT_EQ(t0.count(0), 1);
    EXPECT_EQ(t0.count(1), 1);
    EXPECT_EQ(t0.count(2), 1);
    auto t2 = tau(obj("[2]", 1))->cat;
    EXPECT_EQ(t2.count(0), 3);
    EXPECT_EQ(t2.count(1), 6);
    EXPECT_EQ(t2.compose(1, 0, tau(obj("[2]", 1))->find(1, {1, 2, 0}), tau(obj("[2]", 1))->find(1, {0, 1, 0})),
              tau(obj("[2]", 1))->find(1, {0, 2, 0, 0}));
    auto t11 = tau(obj("[1]([1])", 2))->cat;
    EXPECT_EQ(t11.count(0), 2);
    EXPECT_EQ(t11.count(1), 4);  // two identities, two parallel arrows
    EXPECT_EQ(t11.count(2), 5);
    EXPECT_EQ(enumerate_functors(t11, t11), 5u);
    for (const char* s : {"[0]", "[1]([1])", "[2]([1],[2])", "[3]([0],[1],[0])", "[1]([1]([1]))"}) {
        auto o = obj(s, s[1] == '1' && s[4] == '[' && s[5] == '1' && s[6] == ']' && s[7] == '(' ? 3 : 2);
        EXPECT_FALSE(tau(o)->cat.check_axioms().has_value()) << s;
    }
}

TEST(NCat, FullyFaithfulCounts)
{
    for (auto [level, bound] : {std::pair{1, 4}, std::pair{2, 4}, std::pair{3, 3}}) {
        auto objs = enumerate_objects(level, bound);
        for (const auto& a : objs)
            for (const auto& b : objs) {
                const auto ta = tau(a);
                const auto tb = tau(b);
                ASSERT_EQ(enumerate_functors(ta->cat, tb->cat), count_hom(a, b)) << a.str() << " -> " << b.str();
            }
    }
}

TEST(NCat, PropagateModeAgrees)
{
    auto objs = enumerate_objects(2, 3);
    for (const auto& a : objs)
        for (const auto& b : objs) {
            std::vector<NFunctor> full, prop;
            enumerate_functors(tau(a)->cat, tau(b)->cat, [&](const NFunctor& f) {
                full.push_back(f);
                return true;
            });
            enumerate_functors_propagate(tau(a)->cat, tau(b)->cat, [&](const NFunctor& f) {
                prop.push_back(f);
                return true;
            });
            ASSERT_EQ(full, prop) << a.str() << " -> " << b.str();
        }
    for (const auto& nc : build_corpus(4))
        for (const auto& a : enumerate_objects(nc.cat.dimension(), 3))
            ASSERT_EQ(enumerate_functors(tau(a)->cat, nc.cat), enumerate_functors_propagate(tau(a)->cat, nc.cat))
                << nc.name << " " << a.str();
}

TEST(NCat, TauOnMorphisms)
{
    auto objs = enumerate_objects(2, 3);
    for (const auto& a : objs)
        for (const auto& b : objs)
            for (const auto& f : enumerate_hom(a, b))
                ASSERT_TRUE(is_functor(tau_map(f), tau(a)->cat, tau(b)->cat));
}

TEST(NCat, YonedaCompatibility)
{
    auto w = Window::get(2, 4);
    for (const auto& theta : w->objects()) {
        auto tt = tau(theta);
        auto dn = dnerve(tt->cat, w);
        auto f = yoneda(w, theta);
        const int t = w->require(theta);
        PresheafMap m;
        m.comp.resize(w->object_count());
        // tau(g) for g in hom(a, theta) lands at its rank among the functors
        for (int a = 0; a < w->object_count(); ++a) {
            std::vector<NFunctor> fs;
            enumerate_functors(tau(w->object(a))->cat, tt->cat, [&](const NFunctor& g) {
                fs.push_back(g);
                return true;
            });
            ASSERT_EQ(static_cast<int>(fs.size()), f.size(a));
            for (int e = 0; e < f.size(a); ++e) {
                auto img = tau_map(w->morphism(w->hom_begin(a, t) + e));
                auto it = std::lower_bound(fs.begin(), fs.end(), img);
                ASSERT_TRUE(it != fs.end() && *it == img);
                m.comp[a].push_back(static_cast<int>(it - fs.begin()));
            }
        }
        EXPECT_TRUE(is_levelwise_bijective(m, dn)) << theta.str();
        EXPECT_FALSE(check_natural(m, f, dn).has_value()) << theta.str();
    }
}

TEST(NCat, DnerveExamples)
{
    auto w = Window::get(1, 4);
    auto term = dnerve(terminal_ncat(1), w);
    for (int a = 0; a < w->object_count(); ++a)
        EXPECT_EQ(term.size(a), 1);
    // chains of composable arrows in [2]: monotone maps [m] -> [2]
    auto c = chain_category(2);
    auto x = dnerve(c, w);
    for (int m = 0; m <= 4; ++m)
        EXPECT_EQ(x.at(ThetaObject::simplex(1, m)), static_cast<int>(enumerate_delta(m, 2).size()));
    auto g = dnerve(chaotic_groupoid(2), w);
    for (int m = 0; m <= 4; ++m)
        EXPECT_EQ(g.at(ThetaObject::simplex(1, m)), 1 << (m + 1));
    EXPECT_FALSE(check_functoriality(g).has_value());
}

TEST(NCat, Rigidity)
{
    auto g = chaotic_groupoid(2);
    EXPECT_TRUE(is_k_isomorphism(g, 1, 1));
    EXPECT_FALSE(is_rigid(g));
    for (int k = 0; k <= 3; ++k)
        EXPECT_TRUE(is_rigid(chain_category(k)));
    EXPECT_TRUE(is_rigid(poset_category(4, [](int i, int j) { return (i & j) == i; })));
    EXPECT_FALSE(is_rigid(cyclic_group(2)));
    EXPECT_TRUE(is_rigid(tau(obj("[1]([1])", 2))->cat));
    for (const auto& nc : build_corpus()) {
        EXPECT_FALSE(nc.cat.check_axioms().has_value()) << nc.name;
        auto eq = k_equivalences(nc.cat);
        for (int k = 1; k <= nc.cat.dimension(); ++k)
            for (int x = 0; x < nc.cat.count(k - 1); ++x)
                EXPECT_TRUE(eq[k][nc.cat.identity(k - 1, x)]) << nc.name;
        EXPECT_EQ(is_rigid(nc.cat), is_rigid_by_equivalences(nc.cat)) << nc.name;
    }
}

TEST(NCat, AxiomViolationsDetected)
{
    // a "monoid" whose table is not associative
    auto bad = monoid_category({{0, 1, 2}, {1, 2, 0}, {2, 2, 1}});
    EXPECT_TRUE(bad.check_axioms().has_value());
}

TEST(NCat, CorpusSize)
{
    auto corpus = build_corpus();
    int ones = 0, twos = 0;
    for (const auto& nc : corpus)
        (nc.cat.dimension() == 1 ? ones : twos) += 1;
    EXPECT_GE(ones + twos, 30);
    EXPECT_GE(twos, 8);
}
