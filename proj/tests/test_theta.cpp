#include <gtest/gtest.h>

#include <random>
#include <set>

#include "thetakit/theta.hpp"

using namespace thetakit;

namespace {

ThetaObject obj(const char* s, int level) { return ThetaObject::parse(s, level); }

// independent count straight from the hom formula, on strings
std::uint64_t formula_count(const ThetaObject& a, const ThetaObject& b)
{
    if (a.level() == 0)
        return 1;
    std::uint64_t total = 0;
    for (const auto& d : enumerate_delta(a.arity(), b.arity())) {
        std::uint64_t prod = 1;
        for (int i = 1; i <= a.arity(); ++i)
            for (int j = d(i - 1) + 1; j <= d(i); ++j)
                prod *= formula_count(a.child(i), b.child(j));
        total += prod;
    }
    return total;
}

} // namespace

TEST(Theta, Grammar)
{
    auto o = obj("[4]([2],[3],[0],[1])", 2);
    EXPECT_EQ(o.str(), "[4]([2](.,.),[3](.,.,.),[0],[1](.))");
    EXPECT_EQ(o.size(), 4 + 2 + 3 + 0 + 1);
    EXPECT_EQ(obj(".", 0).level(), 0);
    EXPECT_EQ(obj("[0]()", 2).str(), "[0]");
    EXPECT_THROW(obj("[2](.)", 1), ParseError);
    EXPECT_THROW(obj("[1](.", 1), ParseError);
    EXPECT_THROW(obj("[1]([1](.))", 1), Error);
    try {
        obj("[1](x)", 1);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 4u);
    }
}

TEST(Theta, ObjectEnumeration)
{
    auto l1 = enumerate_objects(1, 2);
    ASSERT_EQ(l1.size(), 3u);
    EXPECT_EQ(l1[0].str(), "[0]");
    EXPECT_EQ(l1[1].str(), "[1](.)");
    EXPECT_EQ(l1[2].str(), "[2](.,.)");
    std::set<std::string> l2;
    for (const auto& o : enumerate_objects(2, 2))
        l2.insert(o.str());
    EXPECT_EQ(l2, (std::set<std::string>{"[0]", "[1]([0])", "[2]([0],[0])", "[1]([1](.))"}));
    for (int b = 0; b <= 5; ++b)
        EXPECT_EQ(enumerate_objects(0, b).size(), 1u);
    EXPECT_EQ(enumerate_objects(2, 4).size(), 16u);
    EXPECT_EQ(enumerate_objects(3, 3).size(), 9u);
    auto all = enumerate_objects(2, 4);
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
}

TEST(Theta, HomCounts)
{
    EXPECT_EQ(enumerate_hom(obj("[1]([0])", 2), obj("[1]([0])", 2)).size(), 3u);
    EXPECT_EQ(enumerate_hom(obj("[1]([1])", 2), obj("[1]([1])", 2)).size(), 5u);
    EXPECT_EQ(enumerate_hom(obj("[1]([1])", 2), obj("[2]([1],[1])", 2)).size(), 18u);
    for (int level = 1; level <= 3; ++level)
        for (const auto& a : enumerate_objects(level, 4 - (level == 3)))
            for (const auto& b : enumerate_objects(level, 4 - (level == 3))) {
                auto homs = enumerate_hom(a, b);
                ASSERT_EQ(homs.size(), formula_count(a, b));
                ASSERT_EQ(count_hom(a, b), homs.size());
                for (std::size_t i = 0; i < homs.size(); ++i)
                    ASSERT_EQ(rank_hom(homs[i]), i);
            }
}

TEST(Theta, TerminalObject)
{
    for (int level = 0; level <= 3; ++level)
        for (const auto& a : enumerate_objects(level, 3))
            EXPECT_EQ(enumerate_hom(a, ThetaObject::terminal(level)).size(), 1u);
}

TEST(Theta, AssociativityAndUnitsExhaustive)
{
    auto objs = enumerate_objects(2, 3);
    for (const auto& a : objs)
        for (const auto& b : objs)
            for (const auto& f : enumerate_hom(a, b)) {
                ASSERT_EQ(compose_theta(identity_theta(b), f), f);
                ASSERT_EQ(compose_theta(f, identity_theta(a)), f);
            }
}

TEST(Theta, ComposeCollapse)
{
    auto a = obj("[0]", 2);
    auto b = obj("[1]([0])", 2);
    auto f = to_terminal(b);
    auto v = vertex_morphism(b, 1);
    auto h = compose_theta(v, f);
    EXPECT_EQ(h.delta().to_string(), "11");
    EXPECT_TRUE(h.components().empty());
    EXPECT_EQ(compose_theta(f, v), identity_theta(a));
}

TEST(Theta, SuspensionAndInclusion)
{
    EXPECT_EQ(sigma_power(3, 3).str(), "[1]([1]([1](.)))");
    EXPECT_EQ(sigma_power(2, 3).str(), "[1]([1]([0]))");
    std::set<std::string> seen;
    for (const auto& o : enumerate_objects(1, 4))
        EXPECT_TRUE(seen.insert(suspension(o).str()).second);
    EXPECT_EQ(inclusion(obj("[3]", 1), 2).str(), "[3]([0],[0],[0])");
    EXPECT_EQ(count_hom(inclusion(obj("[2]", 1), 2), inclusion(obj("[3]", 1), 2)),
              count_hom(obj("[2]", 1), obj("[3]", 1)));
    std::mt19937 rng(3);
    auto objs = enumerate_objects(1, 3);
    for (int s = 0; s < 200; ++s) {
        const auto& a = objs[rng() % objs.size()];
        const auto& b = objs[rng() % objs.size()];
        const auto& c = objs[rng() % objs.size()];
        auto fs = enumerate_hom(a, b);
        auto gs = enumerate_hom(b, c);
        const auto& f = fs[rng() % fs.size()];
        const auto& g = gs[rng() % gs.size()];
        EXPECT_EQ(suspension(compose_theta(g, f)), compose_theta(suspension(g), suspension(f)));
        EXPECT_EQ(inclusion(compose_theta(g, f)), compose_theta(inclusion(g), inclusion(f)));
    }
}

TEST(Theta, CanonicalDelta)
{
    auto c = obj("[1]", 1);
    auto d = obj("[2]", 1);
    auto t = ThetaObject::make(2, {c, d});
    EXPECT_NO_THROW(canonical_delta_morphism(MonotoneMap::parse("01", 2), ThetaObject::make(2, {c}), t));
    EXPECT_NO_THROW(canonical_delta_morphism(MonotoneMap::parse("12", 2), ThetaObject::make(2, {d}), t));
    EXPECT_THROW(canonical_delta_morphism(MonotoneMap::parse("02", 2), ThetaObject::make(2, {c}), t), ArgumentError);
}

TEST(Theta, MorphismText)
{
    auto f = identity_theta(obj("[1]([1])", 2));
    EXPECT_EQ(f.to_string(), R"({"delta":"01","components":[[{"delta":"01","components":[[{"delta":"0","components":[]}]]}]]})");
}
