#include <gtest/gtest.h>

#include <random>

#include "thetakit/corpus.hpp"
#include "thetakit/qpaths.hpp"

using namespace thetakit;

namespace {

MonotoneMap mm(const char* s, int dst) { return MonotoneMap::parse(s, dst); }

std::vector<SimplicialSubset> covers(int m)
{
    std::vector<SimplicialSubset> out;
    for (const auto& k : enumerate_face_closed(m))
        if (is_cover(k))
            out.push_back(k);
    return out;
}

MonotoneMap random_monotone(std::mt19937& rng, int q, int m)
{
    std::vector<int> v(q + 1);
    for (auto& x : v)
        x = std::uniform_int_distribution<int>(0, m)(rng);
    std::sort(v.begin(), v.end());
    return MonotoneMap(m, v);
}

} // namespace

TEST(QPaths, Counts)
{
    for (int m = 0; m <= 5; ++m)
        EXPECT_EQ(enumerate_Q(m, 0).elements.size(), 1u);
    EXPECT_EQ(enumerate_Q(1, 1).elements.size(), 3u);
    EXPECT_EQ(enumerate_Q(2, 2).elements.size(), 13u);
    for (int m = 0; m <= 6; ++m)
        for (int n = 0; n <= 6; ++n)
            EXPECT_EQ(enumerate_Q(m, n).elements.size(), delannoy(m, n));
}

TEST(QPaths, ObjectsAreJointlyInjectiveSurjections)
{
    auto q = enumerate_Q(3, 2);
    EXPECT_FALSE(q.order.check());
    for (const auto& p : q.elements) {
        EXPECT_TRUE(classify(p.delta1()).surjective);
        EXPECT_TRUE(classify(p.delta2()).surjective);
        auto back = QObject::from_maps(p.delta1(), p.delta2());
        EXPECT_EQ(back.steps(), p.steps());
    }
    EXPECT_THROW(QObject::from_maps(mm("011", 1), mm("011", 1)), ArgumentError);
    EXPECT_THROW(QObject::from_steps(1, 1, "RX"), ParseError);
}

TEST(QPaths, OrderWitnesses)
{
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n) {
            auto q = enumerate_Q(m, n);
            for (const auto& a : q.elements)
                for (const auto& b : q.elements) {
                    int found = 0;
                    for (const auto& g : enumerate_delta(a.p(), b.p()))
                        if (compose(b.delta1(), g) == a.delta1() && compose(b.delta2(), g) == a.delta2())
                            ++found;
                    const bool rel = q.order.le(q.find(a), q.find(b));
                    ASSERT_EQ(found, rel ? 1 : 0) << a.steps() << " " << b.steps();
                    ASSERT_EQ(order_witness(a, b).has_value(), rel);
                }
        }
    auto q = enumerate_Q(4, 4);
    for (const auto& a : q.elements)
        for (const auto& b : q.elements) {
            auto g = order_witness(a, b);
            ASSERT_EQ(g.has_value(), q.order.le(q.find(a), q.find(b)));
            if (g) {
                ASSERT_EQ(compose(b.delta1(), *g), a.delta1());
                ASSERT_EQ(compose(b.delta2(), *g), a.delta2());
            }
        }
}

TEST(QPaths, GDeltaAlpha)
{
    auto diag = QObject::from_steps(1, 1, "D");
    auto ru = QObject::from_steps(1, 1, "RU");
    auto id = MonotoneMap::identity(1);
    auto g = g_delta_alpha(diag, id, id);
    ASSERT_TRUE(g);
    EXPECT_EQ(*g, id);
    auto g2 = g_delta_alpha(ru, id, id);
    ASSERT_TRUE(g2);
    EXPECT_EQ(g2->to_string(), "02");
    EXPECT_FALSE(g_delta_alpha(ru, mm("00", 1), id));
    // non-injective alpha reduces through its image
    auto g3 = g_delta_alpha(ru, mm("001", 1), mm("001", 1));
    ASSERT_TRUE(g3);
    EXPECT_EQ(g3->to_string(), "002");
}

TEST(QPaths, AlphaSubposetIsProduct)
{
    auto id = MonotoneMap::identity(1);
    auto r = check_alpha_product(1, 1, id, id);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.subposet_size, 3u);
    ASSERT_EQ(r.segments.size(), 3u);
    EXPECT_EQ(r.segments[1], (std::pair{1, 1}));
    auto end = check_alpha_product(3, 2, mm("3", 3), mm("2", 2));
    EXPECT_TRUE(end.ok());
    EXPECT_EQ(end.subposet_size, enumerate_Q(3, 2).elements.size());
    // a staircase hitting every lattice point forces the path
    auto stair = check_alpha_product(2, 2, mm("01122", 2), mm("00112", 2));
    EXPECT_TRUE(stair.ok());
    EXPECT_EQ(stair.subposet_size, 1u);
    std::mt19937 rng(23);
    for (int t = 0; t < 50; ++t) {
        const int m = std::uniform_int_distribution<int>(0, 4)(rng);
        const int n = std::uniform_int_distribution<int>(0, 4)(rng);
        const int q = std::uniform_int_distribution<int>(0, 3)(rng);
        auto a1 = random_monotone(rng, q, m);
        auto a2 = random_monotone(rng, q, n);
        auto rep = check_alpha_product(m, n, a1, a2);
        EXPECT_TRUE(rep.ok()) << a1.to_string() << " " << a2.to_string();
    }
}

TEST(QPaths, RetractionChain)
{
    auto q11 = enumerate_Q(1, 1);
    auto chain = retraction_chain(q11);
    ASSERT_EQ(chain.size(), 3u);
    EXPECT_EQ(chain[2].name, "r_1");
    const int d = q11.find("D");
    for (std::size_t i = 0; i < chain[2].domain.size(); ++i)
        if (chain[2].domain[i] == d) {
            EXPECT_EQ(q11.elements[chain[2].map[i]].steps(), "RU");
        }
    for (int m = 0; m <= 4; ++m)
        for (int n = 1; n <= 4; ++n) {
            auto q = enumerate_Q(m, n);
            auto steps = retraction_chain(q);
            ASSERT_EQ(steps.size(), static_cast<std::size_t>(2 * m + 1));
            EXPECT_EQ(steps.front().domain.size(), q.elements.size());
            for (const auto& s : steps) {
                auto cert = certify_step(q, s);
                EXPECT_TRUE(cert.ok()) << m << "," << n << " " << s.name << ": " << cert.witness;
            }
            EXPECT_TRUE(isomorphic_to_lower_row(q, steps.back().codomain)) << m << "," << n;
        }
}

TEST(QPaths, LastXIsNotTheLowerRow)
{
    auto q = enumerate_Q(1, 1);
    auto x1 = q_subposet_X(q, 1);
    EXPECT_EQ(x1.size(), 2u);
    EXPECT_EQ(enumerate_Q(1, 0).elements.size(), 1u);
    EXPECT_FALSE(isomorphic_to_lower_row(q, x1));
}

TEST(QPaths, ReversedDirectionsFail)
{
    auto q = enumerate_Q(2, 1);
    auto steps = retraction_chain(q);
    bool some_fail = false;
    for (auto s : steps) {
        s.direction = s.direction == RetractionDirection::above ? RetractionDirection::below : RetractionDirection::above;
        some_fail = some_fail || !certify_step(q, s).ok();
    }
    EXPECT_TRUE(some_fail);
    EXPECT_TRUE(certify_step(q, steps[0]).ok());
}

TEST(QPaths, NervesAreContractible)
{
    auto c = nerve_complex(enumerate_Q(1, 1).order);
    EXPECT_EQ(c.basis[0].size(), 3u);
    EXPECT_EQ(c.basis[1].size(), 2u);
    for (int m = 0; m <= 6; ++m)
        for (int n = 0; m + n <= 6; ++n) {
            auto h = reduced_homology(enumerate_Q(m, n).order);
            EXPECT_TRUE(h.vanishes()) << m << "," << n << "\n" << h.text();
        }
}

TEST(QPaths, RetractionStepsPreserveHomology)
{
    for (int m = 0; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n) {
            auto q = enumerate_Q(m, n);
            for (const auto& s : retraction_chain(q)) {
                auto hp = reduced_homology(q.order.restrict_to(s.domain));
                auto hs = reduced_homology(q.order.restrict_to(s.codomain));
                EXPECT_EQ(hp.vanishes(), hs.vanishes());
                EXPECT_TRUE(hs.vanishes());
            }
        }
}

TEST(MainSquare, SmallExample)
{
    auto w = Window::get(2, 4);
    auto lw = w->lower_ptr();
    auto f0 = yoneda(lw, ThetaObject::simplex(1, 0));
    SquareInputs in{w, {&f0}, {&f0}, SimplicialSubset::full(1), SimplicialSubset::full(1)};
    auto rep = colim_compare(in);
    EXPECT_TRUE(rep.ok()) << rep.witness;
    const int theta = w->require(ThetaObject::parse("[1]([0])", 2));
    EXPECT_EQ(rep.bottom_sizes[theta], 9);
}

TEST(MainSquare, TerminalQ)
{
    auto w = Window::get(2, 4);
    auto lw = w->lower_ptr();
    auto a = yoneda(lw, ThetaObject::simplex(1, 1));
    SquareInputs in{w, {&a}, {}, SimplicialSubset::full(1), SimplicialSubset::full(0)};
    auto t = square_targets(in);
    auto q = enumerate_Q(1, 0);
    ASSERT_EQ(q.elements.size(), 1u);
    auto sq = main_square(in, t, q.elements[0]);
    for (int c = 0; c < w->object_count(); ++c) {
        std::vector<int> expect(t.bottom_right.size(c));
        for (int i = 0; i < t.bottom_right.size(c); ++i)
            expect[i] = i;
        EXPECT_EQ(sq.g_prime.comp[c], expect);
    }
    EXPECT_TRUE(colim_compare(in).ok());
}

TEST(MainSquare, AlphaDecomposition)
{
    auto w = Window::get(2, 4);
    auto lw = w->lower_ptr();
    auto a = yoneda(lw, ThetaObject::simplex(1, 1));
    auto b = terminal_presheaf(lw);
    SquareInputs in{w, {&a, &b}, {&b, &a}, SimplicialSubset::spine(2), SimplicialSubset::spine(2)};
    auto t = square_targets(in);
    for (const auto& path : enumerate_Q(2, 2).elements) {
        auto sq = main_square(in, t, path);
        EXPECT_TRUE(square_commutes(sq, t));
        for (int th = 0; th < w->object_count(); ++th) {
            auto rep = check_square_alpha_counts(in, t, sq, th);
            EXPECT_TRUE(rep.ok()) << path.steps() << " " << rep.witness;
        }
    }
}

TEST(MainSquare, ColimitsOfBothRows)
{
    auto w = Window::get(2, 4);
    auto lw = w->lower_ptr();
    auto t = terminal_presheaf(lw);
    for (int m = 0; m <= 2; ++m)
        for (int n = 0; n <= 2; ++n)
            for (int mc = 0; mc < 2; ++mc)
                for (int nc = 0; nc < 2; ++nc) {
                    std::vector<const FinPresheaf*> as(m, &t), bs(n, &t);
                    SquareInputs in{w, as, bs, mc ? SimplicialSubset::full(m) : SimplicialSubset::spine(m),
                                    nc ? SimplicialSubset::full(n) : SimplicialSubset::spine(n)};
                    auto rep = colim_compare(in);
                    EXPECT_TRUE(rep.ok()) << m << "," << n << " " << rep.witness;
                }
}

TEST(MainSquare, RandomInputs)
{
    auto w = Window::get(2, 4);
    auto lw = w->lower_ptr();
    std::mt19937 rng(41);
    for (int trial = 0; trial < 6; ++trial) {
        const int m = 1 + trial % 2;
        const int n = 1 + (trial / 2) % 2;
        std::vector<FinPresheaf> store;
        store.reserve(m + n);
        for (int i = 0; i < m + n; ++i)
            store.push_back(random_simplicial_presheaf(lw, rng));
        std::vector<const FinPresheaf*> as, bs;
        for (int i = 0; i < m; ++i)
            as.push_back(&store[i]);
        for (int i = 0; i < n; ++i)
            bs.push_back(&store[m + i]);
        SquareInputs in{w, as, bs, SimplicialSubset::spine(m), SimplicialSubset::full(n)};
        auto rep = colim_compare(in);
        EXPECT_TRUE(rep.ok()) << trial << " " << rep.witness;
    }
}

TEST(PK, SpineTwo)
{
    auto pk = build_P_K(SimplicialSubset::spine(2));
    std::set<std::string> names;
    for (const auto& d : pk.elements)
        names.insert(d.to_string());
    EXPECT_EQ(names, (std::set<std::string>{"0", "1", "2", "01", "12"}));
    EXPECT_FALSE(pk.order.check());
}

TEST(PK, ColimitIdentities)
{
    auto w = Window::get(2, 4);
    auto lw = w->lower_ptr();
    auto f0 = yoneda(lw, ThetaObject::simplex(1, 0));
    auto f1 = yoneda(lw, ThetaObject::simplex(1, 1));
    for (int m = 1; m <= 3; ++m) {
        std::vector<const FinPresheaf*> reps(m, &f1);
        std::vector<const FinPresheaf*> points(m, &f0);
        for (const auto& k : covers(m)) {
            for (const auto* in : {&reps, &points}) {
                auto rep = p_k_colim_check(w, k, *in);
                EXPECT_TRUE(rep.ok()) << m << " " << rep.witness;
                const bool minimal = k.face_strings() == SimplicialSubset::spine(m).face_strings();
                EXPECT_EQ(rep.literal_identity, minimal) << m;
            }
        }
    }
}

TEST(PK, FullCoverHasTerminalObject)
{
    auto pk = build_P_K(SimplicialSubset::full(3));
    int top = -1;
    for (int i = 0; i < pk.order.size; ++i)
        if (pk.elements[i].src_rank() == 3)
            top = i;
    ASSERT_GE(top, 0);
    for (int i = 0; i < pk.order.size; ++i)
        EXPECT_TRUE(pk.order.le(i, top));
}
