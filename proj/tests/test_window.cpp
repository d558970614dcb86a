#include <gtest/gtest.h>

#include <random>

#include "thetakit/window.hpp"

using namespace thetakit;

TEST(Window, Sizes)
{
    auto w = Window::get(2, 4);
    EXPECT_EQ(w->object_count(), 16);
    EXPECT_EQ(w->morphism_count(), 5895);
    auto w3 = Window::get(3, 3);
    EXPECT_EQ(w3->object_count(), 9);
    EXPECT_EQ(w3->morphism_count(), 668);
    EXPECT_EQ(Window::get(2, 4).get(), w.get());
    EXPECT_EQ(w->lower()->level(), 1);
    EXPECT_EQ(w->lower()->bound(), 3);
}

TEST(Window, MorphismsMatchEnumeration)
{
    for (auto [level, bound] : {std::pair{1, 4}, std::pair{2, 3}, std::pair{3, 3}}) {
        auto w = Window::get(level, bound);
        for (int a = 0; a < w->object_count(); ++a)
            for (int b = 0; b < w->object_count(); ++b) {
                auto homs = enumerate_hom(w->object(a), w->object(b));
                ASSERT_EQ(static_cast<int>(homs.size()), w->hom_size(a, b));
                for (int e = 0; e < w->hom_size(a, b); ++e) {
                    ASSERT_EQ(w->morphism(w->hom_begin(a, b) + e), homs[e]);
                    ASSERT_EQ(w->rank(homs[e]), w->hom_begin(a, b) + e);
                }
            }
    }
}

TEST(Window, ComposeMatchesFormula)
{
    auto w = Window::get(2, 4);
    std::mt19937 rng(5);
    for (int s = 0; s < 3000; ++s) {
        const int g = static_cast<int>(rng() % w->morphism_count());
        const auto& fs = w->into(w->src(g));
        const int f = fs[rng() % fs.size()];
        ASSERT_EQ(w->morphism(w->compose(g, f)), compose_theta(w->morphism(g), w->morphism(f)));
    }
    auto w3 = Window::get(2, 3);
    for (int g = 0; g < w3->morphism_count(); ++g)
        for (int f : w3->into(w3->src(g)))
            ASSERT_EQ(w3->morphism(w3->compose(g, f)), compose_theta(w3->morphism(g), w3->morphism(f)));
}

TEST(Window, AssociativityExhaustiveSizeThree)
{
    auto w = Window::get(2, 3);
    for (int h = 0; h < w->morphism_count(); ++h)
        for (int g : w->into(w->src(h)))
            for (int f : w->into(w->src(g)))
                ASSERT_EQ(w->compose(h, w->compose(g, f)), w->compose(w->compose(h, g), f));
    for (int f = 0; f < w->morphism_count(); ++f) {
        ASSERT_EQ(w->compose(w->identity(w->dst(f)), f), f);
        ASSERT_EQ(w->compose(f, w->identity(w->src(f))), f);
    }
}

TEST(Window, Exhaustion)
{
    auto w = Window::get(2, 2);
    try {
        w->require(ThetaObject::parse("[3]([0],[0],[0])", 2));
        FAIL();
    } catch (const WindowExhausted& e) {
        EXPECT_EQ(e.offending(), "[3]([0],[0],[0])");
    }
    EXPECT_EQ(w->index_of(ThetaObject::parse("[3]([0],[0],[0])", 2)), -1);
}
