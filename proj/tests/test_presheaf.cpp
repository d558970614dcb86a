#include <gtest/gtest.h>

#include "thetakit/presheaf.hpp"

using namespace thetakit;

namespace {

ThetaObject obj(const char* s, int level) { return ThetaObject::parse(s, level); }

} // namespace

TEST(Presheaf, YonedaBasics)
{
    auto w = Window::get(2, 4);
    auto y0 = yoneda(w, ThetaObject::terminal(2));
    for (int a = 0; a < w->object_count(); ++a)
        EXPECT_EQ(y0.size(a), 1);
    auto y = yoneda(w, obj("[1]([1])", 2));
    EXPECT_EQ(y.at(obj("[1]([1])", 2)), 5);
    EXPECT_FALSE(check_functoriality(y).has_value());
    EXPECT_EQ(global_sections(yoneda(w, obj("[2]([0],[0])", 2))).size(), 3u);
    EXPECT_THROW(yoneda(Window::get(2, 2), obj("[3]([0],[0],[0])", 2)), WindowExhausted);
}

TEST(Presheaf, FunctorialityExhaustiveSmall)
{
    auto w = Window::get(2, 2);
    ASSERT_LE(w->morphism_count(), 200);
    for (const auto& o : w->objects())
        EXPECT_FALSE(check_functoriality(yoneda(w, o)).has_value());
    std::vector<int> sizes(w->object_count(), 2);
    std::vector<std::vector<int>> acts(w->morphism_count(), std::vector<int>{1, 0});
    FinPresheaf bad(w, sizes, acts);
    EXPECT_TRUE(check_functoriality(bad).has_value());
}

TEST(Presheaf, YonedaLemma)
{
    auto w = Window::get(2, 3);
    auto x = product(yoneda(w, obj("[1]([1])", 2)), yoneda(w, obj("[2]([0],[0])", 2)));
    for (int a = 0; a < w->object_count(); ++a) {
        auto ya = yoneda(w, w->object(a));
        std::vector<int> seen;
        const std::uint64_t n = nat_hom(ya, x, [&](const PresheafMap& m) {
            EXPECT_FALSE(check_natural(m, ya, x).has_value());
            seen.push_back(m(a, w->local_index(w->identity(a))));
            return true;
        });
        ASSERT_EQ(static_cast<int>(n), x.size(a));
        std::sort(seen.begin(), seen.end());
        for (int e = 0; e < x.size(a); ++e)
            EXPECT_EQ(seen[e], e);
    }
}

TEST(Presheaf, LimitsAndColimits)
{
    auto w = Window::get(2, 3);
    auto x = yoneda(w, obj("[2]([0],[0])", 2));
    auto t = terminal_presheaf(w);
    auto xt = product(x, t);
    EXPECT_EQ(xt.sizes(), x.sizes());
    EXPECT_TRUE(is_levelwise_bijective(product_projection(x, t, 0), x));

    // pushout of two vertex inclusions F[0] -> F[1]
    auto f1 = yoneda(w, obj("[1]([0])", 2));
    auto p0 = yoneda(w, ThetaObject::terminal(2));
    auto v0 = yoneda_map(*w, w->rank(vertex_morphism(obj("[1]([0])", 2), 0)));
    auto v1 = yoneda_map(*w, w->rank(vertex_morphism(obj("[1]([0])", 2), 1)));
    auto po = pushout(p0, f1, f1, v1, v0);
    for (int a = 0; a < w->object_count(); ++a)
        EXPECT_EQ(po.presheaf.size(a), 2 * f1.size(a) - 1);
    EXPECT_FALSE(check_functoriality(po.presheaf).has_value());
    EXPECT_TRUE(po.presheaf.presented());

    // colimit over a < b, a < c of singletons
    Diagram d;
    d.nodes = {&t, &t, &t};
    auto id = identity_map(t);
    d.arrows = {{0, 1, id}, {0, 2, id}};
    auto c = colimit(d, w);
    for (int a = 0; a < w->object_count(); ++a)
        EXPECT_EQ(c.presheaf.size(a), 1);

    auto g = global_sections(coproduct(x, f1));
    EXPECT_EQ(g.size(), global_sections(x).size() + global_sections(f1).size());

    // F[1] x_{F[0]} F[1] = F[1] x F[1]
    PresheafMap bang;
    for (int a = 0; a < w->object_count(); ++a)
        bang.comp.emplace_back(f1.size(a), 0);
    auto pb = pullback(f1, f1, p0, bang, bang);
    auto pr = product(f1, f1);
    EXPECT_EQ(pb.presheaf.sizes(), pr.sizes());
}

TEST(Presheaf, NatHomEdgeCases)
{
    auto w = Window::get(2, 3);
    auto x = yoneda(w, obj("[1]([1])", 2));
    EXPECT_EQ(nat_hom(initial_presheaf(w), x), 1u);
    // maps from the terminal presheaf are the compatible families
    EXPECT_EQ(nat_hom(terminal_presheaf(w), x), static_cast<std::uint64_t>(x.size(w->terminal())));
    auto px = product(x, x);
    EXPECT_THROW(nat_hom(px, x), WindowExhausted);
}

TEST(Presheaf, Subpresheaf)
{
    auto w = Window::get(2, 3);
    auto x = yoneda(w, obj("[1]([0])", 2));
    // the two endpoints: maps with constant delta
    auto sub = subpresheaf(x, [&](int a, int e) {
        const int f = w->hom_begin(a, w->require(obj("[1]([0])", 2))) + e;
        const auto& d = w->delta(f);
        return d(0) == d(d.src_rank());
    });
    EXPECT_EQ(sub.presheaf.size(w->terminal()), 2);
    EXPECT_FALSE(check_natural(sub.inclusion, sub.presheaf, x).has_value());
    EXPECT_THROW(subpresheaf(x, [&](int a, int) { return a == w->terminal(); }), InvariantViolation);
}

TEST(Presheaf, Restriction)
{
    auto big = Window::get(2, 4);
    auto small = Window::get(2, 3);
    auto x = yoneda(big, obj("[1]([1])", 2));
    auto r = restrict_to(x, small);
    auto y = yoneda(small, obj("[1]([1])", 2));
    EXPECT_EQ(r.sizes(), y.sizes());
    EXPECT_EQ(r.actions(), y.actions());
}
