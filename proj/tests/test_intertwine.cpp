#include <gtest/gtest.h>

#include "thetakit/intertwine.hpp"

using namespace thetakit;

namespace {

ThetaObject obj(const char* s, int level) { return ThetaObject::parse(s, level); }

} // namespace

TEST(Intertwine, NuMatchesYoneda)
{
    auto w = Window::get(2, 4);
    const auto& lw = w->lower_ptr();
    for (const auto& theta : w->objects()) {
        std::vector<FinPresheaf> ys;
        for (const auto& c : theta.children())
            ys.push_back(yoneda(lw, c));
        std::vector<const FinPresheaf*> in;
        for (const auto& y : ys)
            in.push_back(&y);
        auto v = v_object(w, in);
        auto f = yoneda(w, theta);
        ASSERT_EQ(v.presheaf.sizes(), f.sizes()) << theta.str();
        ASSERT_EQ(v.presheaf.actions(), f.actions()) << theta.str();
    }
}

TEST(Intertwine, Counts)
{
    auto w = Window::get(2, 4);
    auto t = terminal_presheaf(w->lower_ptr());
    auto v = v_object(w, {&t, &t});
    EXPECT_EQ(v.presheaf.at(obj("[1]([0])", 2)), 6);
    auto v0 = v_object(w, {});
    for (int a = 0; a < w->object_count(); ++a)
        EXPECT_EQ(v0.presheaf.size(a), 1);
    EXPECT_FALSE(check_functoriality(v.presheaf).has_value());
}

TEST(Intertwine, FunctorialityExhaustiveSmall)
{
    auto w = Window::get(2, 2);
    ASSERT_LE(w->morphism_count(), 200);
    auto lw = w->lower_ptr();
    auto a = yoneda(lw, obj("[1]", 1));
    auto b = coproduct(terminal_presheaf(lw), a);
    auto v = v_object(w, {&a, &b});
    EXPECT_FALSE(check_functoriality(v.presheaf).has_value());
}

TEST(Intertwine, SubobjectsOfCovers)
{
    auto w = Window::get(2, 3);
    auto lw = w->lower_ptr();
    auto a = yoneda(lw, obj("[1]", 1));
    for (int m = 0; m <= 3; ++m) {
        std::vector<const FinPresheaf*> in(m, &a);
        auto full = v_object(w, in);
        auto fk = SimplicialSubset::full(m);
        auto viaf = v_subobject(w, in, &fk);
        EXPECT_EQ(viaf.presheaf.sizes(), full.presheaf.sizes());
        EXPECT_EQ(viaf.presheaf.actions(), full.presheaf.actions());
        for (const auto& k : enumerate_face_closed(m)) {
            if (!is_cover(k))
                continue;
            auto vk = v_subobject(w, in, &k);
            for (int o = 0; o < w->object_count(); ++o)
                for (int e = 0; e < vk.presheaf.size(o); ++e)
                    ASSERT_GE(full.find(o, vk.keys[o][e]), 0);
        }
        auto verts = SimplicialSubset::vertices(m);
        auto vv = v_subobject(w, in, &verts);
        for (int o = 0; o < w->object_count(); ++o)
            for (int e = 0; e < vv.presheaf.size(o); ++e) {
                auto d = vv.delta(o, e);
                EXPECT_EQ(d(0), d(d.src_rank()));
            }
    }
}

TEST(Intertwine, SpineColimit)
{
    auto w = Window::get(2, 4);
    auto lw = w->lower_ptr();
    auto p = yoneda(lw, obj("[0]", 1));
    auto e = yoneda(lw, obj("[1]", 1));
    for (int m = 0; m <= 3; ++m) {
        std::vector<const FinPresheaf*> in;
        for (int i = 0; i < m; ++i)
            in.push_back(i % 2 ? &p : &e);
        EXPECT_TRUE(check_spine_colimit(w, in).ok()) << m;
    }
}

TEST(Intertwine, SegalSubobjectMatchesVSpine)
{
    auto w = Window::get(2, 4);
    auto lw = w->lower_ptr();
    for (const auto& theta : w->objects()) {
        auto se = segal_subobject(w, theta);
        std::vector<FinPresheaf> ys;
        for (const auto& c : theta.children())
            ys.push_back(yoneda(lw, c));
        std::vector<const FinPresheaf*> in;
        for (const auto& y : ys)
            in.push_back(&y);
        auto g = SimplicialSubset::spine(theta.arity());
        auto vg = v_subobject(w, in, &g);
        EXPECT_EQ(se.presheaf.sizes(), vg.presheaf.sizes()) << theta.str();
    }
}

TEST(Intertwine, GPartition)
{
    EXPECT_EQ(enumerate_delta(2, 3).size(), 20u);
    for (int q = 0; q <= 3; ++q)
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n)
                EXPECT_TRUE(check_g_partition(q, m, n));
}

TEST(Intertwine, CoproductDecomposition)
{
    auto w = Window::get(2, 4);
    auto lw = w->lower_ptr();
    auto t = terminal_presheaf(lw);
    auto rep = check_coproduct_decomposition(w, {}, {});
    EXPECT_TRUE(rep.ok()) << rep.witness;
    // V[1](empty) is two points
    auto empty = initial_presheaf(lw);
    auto v1 = v_object(w, {&empty});
    for (int a = 0; a < w->object_count(); ++a)
        EXPECT_EQ(v1.presheaf.size(a), 2);
    EXPECT_TRUE(check_coproduct_decomposition(w, {&t}, {}).ok());
    auto e = yoneda(lw, obj("[1]", 1));
    EXPECT_TRUE(check_coproduct_decomposition(w, {&e, &t}, {&e}).ok());
}

TEST(Intertwine, ProductDecomposition)
{
    auto w = Window::get(2, 4);
    auto lw = w->lower_ptr();
    auto t = terminal_presheaf(lw);
    auto rep = check_product_decomposition(w, t, t);
    EXPECT_TRUE(rep.report.ok()) << rep.report.witness;
    const int theta = w->require(obj("[1]([0])", 2));
    EXPECT_EQ(rep.pushout_sizes[theta], 9);
    EXPECT_EQ(rep.product_sizes[theta], 9);
    auto v2 = v_object(w, {&t, &t});
    auto v1 = v_object(w, {&t});
    EXPECT_EQ(v2.presheaf.size(theta) * 2 - v1.presheaf.size(theta), 9);
    auto f1 = yoneda(lw, obj("[1]", 1));
    EXPECT_TRUE(check_product_decomposition(w, f1, t).report.ok());
    auto empty = initial_presheaf(lw);
    EXPECT_TRUE(check_product_decomposition(w, empty, f1).report.ok());
}

TEST(Intertwine, MappingObjects)
{
    auto w = Window::get(2, 4);
    auto lw = w->lower_ptr();
    for (const auto& d : lw->objects()) {
        if (d.size() > 3)
            continue;
        auto x = yoneda(w, suspension(d));
        auto mx = mapping_presheaf(x, 0, 1);
        for (int c = 0; c < lw->object_count(); ++c)
            EXPECT_EQ(mx.presheaf.size(c), lw->hom_size(c, lw->require(d)));
        EXPECT_FALSE(check_functoriality(mx.presheaf).has_value());
    }
    auto x2 = yoneda(w, obj("[2]([1],[0])", 2));
    for (int c = 0; c < lw->object_count(); ++c) {
        const auto sc = suspension(lw->object(c));
        if (w->index_of(sc) < 0)
            continue;
        EXPECT_EQ(mapping_object(x2, {0, 2}, sc).size(),
                  static_cast<std::size_t>(lw->hom_size(c, lw->require(obj("[1]", 1))) *
                                           lw->hom_size(c, lw->require(obj("[0]", 1)))));
    }
    EXPECT_EQ(mapping_object(x2, {1}, ThetaObject::terminal(2)).size(), 1u);
}

TEST(Intertwine, MappingLemma)
{
    auto w = Window::get(2, 3);
    auto lw = w->lower_ptr();
    std::vector<FinPresheaf> xs = {yoneda(w, obj("[2]([1],[0])", 2)), yoneda(w, obj("[1]([2])", 2)),
                                   product(yoneda(w, obj("[1]([1])", 2)), yoneda(w, obj("[1]([0])", 2)))};
    std::vector<FinPresheaf> as = {yoneda(lw, obj("[1]", 1)), yoneda(lw, obj("[0]", 1)),
                                   coproduct(yoneda(lw, obj("[1]", 1)), yoneda(lw, obj("[0]", 1))),
                                   initial_presheaf(lw)};
    for (const auto& x : xs)
        for (const auto& a : as)
            for (int x0 = 0; x0 < x.size(w->terminal()); ++x0)
                for (int x1 = 0; x1 < x.size(w->terminal()); ++x1) {
                    auto rep = check_mapping_lemma(x, a, x0, x1);
                    EXPECT_TRUE(rep.ok()) << rep.via_v << " vs " << rep.via_mapping;
                }
}
