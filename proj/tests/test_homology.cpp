#include <gtest/gtest.h>

#include <random>

#include "thetakit/homology.hpp"

using namespace thetakit;

namespace {

BigInt bareiss_det(std::vector<std::vector<BigInt>> a)
{
    const int n = static_cast<int>(a.size());
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int r = k + 1;
            while (r < n && a[r][k] == 0)
                ++r;
            if (r == n)
                return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

ChainComplex circle()
{
    // vertices 0,1,2 and edges 01, 12, 02
    ChainComplex c;
    c.basis = {{{0}, {1}, {2}}, {{0, 1}, {1, 2}, {0, 2}}};
    SparseMatrix aug{1, 3, {{{0, 1}, {1, 1}, {2, 1}}}};
    SparseMatrix d1{3, 3, {{{0, -1}, {2, -1}}, {{0, 1}, {1, -1}}, {{1, 1}, {2, 1}}}};
    c.boundary = {aug, d1};
    return c;
}

} // namespace

TEST(Homology, Antichain)
{
    auto c = nerve_complex(FinitePoset::antichain(2));
    ASSERT_EQ(c.top_degree(), 0);
    EXPECT_EQ(c.basis[0].size(), 2u);
    auto h = reduced_homology(c);
    EXPECT_EQ(h.groups[1].degree, 0);
    EXPECT_EQ(h.groups[1].betti, 1u);
    EXPECT_FALSE(h.vanishes());
}

TEST(Homology, ChainIsSimplex)
{
    auto c = nerve_complex(FinitePoset::chain(3));
    ASSERT_EQ(c.top_degree(), 2);
    EXPECT_EQ(c.basis[0].size(), 3u);
    EXPECT_EQ(c.basis[1].size(), 3u);
    EXPECT_EQ(c.basis[2].size(), 1u);
    EXPECT_TRUE(reduced_homology(c).vanishes());
}

TEST(Homology, EmptyPoset)
{
    auto h = reduced_homology(FinitePoset::antichain(0));
    ASSERT_EQ(h.groups.size(), 1u);
    EXPECT_EQ(h.groups[0].degree, -1);
    EXPECT_EQ(h.groups[0].betti, 1u);
}

TEST(Homology, Circle)
{
    auto h = reduced_homology(circle());
    EXPECT_EQ(h.groups[1].betti, 0u);
    EXPECT_EQ(h.groups[2].betti, 1u);
    // the same circle as the face poset of the triangle boundary
    FinitePoset p = FinitePoset::antichain(6);
    const int edges[3][2] = {{0, 1}, {1, 2}, {0, 2}};
    for (int e = 0; e < 3; ++e)
        for (int v : edges[e])
            p.leq[v][3 + e] = 1;
    ASSERT_FALSE(p.check());
    auto h2 = reduced_homology(p);
    EXPECT_EQ(h2.groups[2].betti, 1u);
    EXPECT_EQ(h2.euler_from_ranks, -1 + 6 - 6);
}

TEST(Homology, Torsion)
{
    // C_1 = Z, C_0 = Z with boundary 0; C_2 = Z with boundary 2: H_1 = Z/2
    ChainComplex c;
    c.basis = {{{0}}, {{0, 0}}, {{0, 0, 0}}};
    c.boundary = {SparseMatrix{1, 1, {{{0, 1}}}}, SparseMatrix{1, 1, {{}}}, SparseMatrix{1, 1, {{{0, 2}}}}};
    auto h = reduced_homology(c);
    EXPECT_EQ(h.groups[2].betti, 0u);
    ASSERT_EQ(h.groups[2].torsion.size(), 1u);
    EXPECT_EQ(h.groups[2].torsion[0], 2);
    EXPECT_NE(h.text().find("torsion [2]"), std::string::npos);
}

TEST(SmithNormalForm, SmallMatrices)
{
    auto f = smith_normal_form(std::vector<std::vector<long long>>{{2, 4}, {6, 8}});
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f[0], 2);
    EXPECT_EQ(f[1], 4);
    auto z = smith_normal_form(std::vector<std::vector<long long>>{{0, 0}, {0, 0}});
    EXPECT_TRUE(z.empty());
    auto r = smith_normal_form(std::vector<std::vector<long long>>{{1, 2, 3}, {2, 4, 6}});
    ASSERT_EQ(r.size(), 1u);
}

TEST(SmithNormalForm, RandomAgainstDeterminant)
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> val(-6, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 5;
        std::vector<std::vector<long long>> a(n, std::vector<long long>(n));
        std::vector<std::vector<BigInt>> b(n, std::vector<BigInt>(n));
        SparseMatrix s{n, n, std::vector<std::vector<std::pair<int, long long>>>(n)};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                a[i][j] = val(rng);
                b[i][j] = a[i][j];
                if (a[i][j])
                    s.entries[i].emplace_back(j, a[i][j]);
            }
        auto f = smith_normal_form(a);
        EXPECT_EQ(f, smith_normal_form_big(s));
        for (std::size_t i = 1; i < f.size(); ++i)
            EXPECT_EQ(f[i] % f[i - 1], 0);
        const BigInt det = bareiss_det(b);
        if (det == 0) {
            EXPECT_LT(f.size(), static_cast<std::size_t>(n));
        } else {
            ASSERT_EQ(f.size(), static_cast<std::size_t>(n));
            BigInt prod = 1;
            for (const auto& x : f)
                prod *= x;
            EXPECT_EQ(prod, det < 0 ? BigInt(-det) : det);
        }
    }
}

TEST(SmithNormalForm, OverflowFallsBack)
{
    const long long big = 1LL << 62;
    auto f = smith_normal_form(std::vector<std::vector<long long>>{{3, big}, {big, 5}});
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f[0], 1);
    EXPECT_EQ(f[1], BigInt(big) * big - 15);
}

TEST(Retraction, Certificates)
{
    // cone on the minimum of {0 < 1, 0 < 2}
    FinitePoset v = FinitePoset::antichain(3);
    v.leq[0][1] = v.leq[0][2] = 1;
    auto cone = certify_retraction(v, {0}, {0, 0, 0}, RetractionDirection::below);
    EXPECT_TRUE(cone.ok());
    EXPECT_FALSE(certify_retraction(v, {0}, {0, 0, 0}, RetractionDirection::above).ok());
    // a non-monotone map on a 3-chain
    auto bad = certify_retraction(FinitePoset::chain(3), {0, 2}, {0, 2, 0}, RetractionDirection::below);
    EXPECT_FALSE(bad.ok());
    EXPECT_FALSE(bad.monotone);
    EXPECT_FALSE(certify_retraction(FinitePoset::chain(3), {0}, {1, 1, 1}, RetractionDirection::below).lands);
}

TEST(Poset, ProductOrder)
{
    auto p = product_poset({FinitePoset::chain(2), FinitePoset::chain(3)});
    EXPECT_EQ(p.size, 6);
    EXPECT_FALSE(p.check());
    EXPECT_TRUE(reduced_homology(p).vanishes());
    EXPECT_TRUE(p.le(0, 5));
    EXPECT_FALSE(p.le(2, 3));
}
