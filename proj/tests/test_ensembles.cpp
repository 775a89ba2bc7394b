#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "spectra/ensembles.hpp"

using namespace spectra;

namespace {

EnsembleSpec checkerboard(int k, int n, bool symmetric, cd w = {1.0, 0.0}, bool hollow = false) {
    EnsembleSpec s;
    s.kind = hollow ? EnsembleKind::HollowCheckerboard : EnsembleKind::Checkerboard;
    s.k = k;
    s.w = w;
    s.n = n;
    s.symmetric = symmetric;
    return s;
}

} // namespace

TEST(Ensembles, CheckerboardDeterministicMask) {
    SeedStream st(1, 0);
    const auto a = build_checkerboard(checkerboard(2, 4, true), st);
    // positions congruent mod 2 carry w = 1 (1-indexed (1,1),(1,3),(2,2),(2,4),(3,3),(4,4),(3,1),(4,2))
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if ((i - j) % 2 == 0)
                ASSERT_EQ(a(i, j), cd(1.0, 0.0)) << i << "," << j;
            else
                ASSERT_NE(a(i, j), cd(1.0, 0.0));
        }
}

TEST(Ensembles, KOneWZeroIsZeroMatrix) {
    SeedStream st(1, 0);
    const auto a = build_checkerboard(checkerboard(1, 3, false, {0.0, 0.0}), st);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) ASSERT_EQ(a(i, j), cd(0.0, 0.0));
}

TEST(Ensembles, SymmetryIsExact) {
    SeedStream st(77, 0);
    const auto a = build_checkerboard(checkerboard(3, 9, true), st);
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) ASSERT_EQ(a(i, j), a(j, i));
}

TEST(Ensembles, SlotMomentSanity) {
    // over 10^4 draws each random slot has small mean and |a|^2 near 1
    const int draws = 10000;
    const int n = 4;
    std::vector<cd> mean(n * n, 0.0);
    std::vector<double> abs2(n * n, 0.0);
    for (int t = 0; t < draws; ++t) {
        SeedStream st(31337, t);
        const auto a = build_checkerboard(checkerboard(2, n, true), st);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                mean[i * n + j] += a(i, j);
                abs2[i * n + j] += std::norm(a(i, j));
            }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if ((i - j) % 2 == 0) continue;
            EXPECT_LE(std::abs(mean[i * n + j]) / draws, 0.05) << i << "," << j;
            EXPECT_NEAR(abs2[i * n + j] / draws, 1.0, 0.05) << i << "," << j;
        }
}

TEST(Ensembles, GeneralizedFirstRowLayout) {
    // 3x3 pattern with pinned w1, w2, w3; first row of the 6x6 matrix reads
    // (w1, *, w2, w1, *, w2)
    const cd w1{2.0, 0.5}, w2{-1.0, 0.25}, w3{0.0, -3.0};
    PatternMatrix p(3);
    for (auto& c : p.cells) c = Cell::rand();
    p.at(0, 0) = Cell::det(w1);
    p.at(0, 2) = Cell::det(w2);
    p.at(2, 1) = Cell::det(w3);
    EnsembleSpec s;
    s.kind = EnsembleKind::Generalized;
    s.k = 3;
    s.n = 6;
    s.symmetric = false;
    s.pattern = p;
    SeedStream st(5, 0);
    const auto a = build_generalized(s, st);
    EXPECT_EQ(a(0, 0), w1);
    EXPECT_EQ(a(0, 2), w2);
    EXPECT_EQ(a(0, 3), w1);
    EXPECT_EQ(a(0, 5), w2);
    EXPECT_EQ(a(2, 1), w3);
    EXPECT_EQ(a(2, 4), w3);
    EXPECT_EQ(a(5, 1), w3);
    EXPECT_NE(a(0, 1), a(0, 4)); // random slots draw independently
}

TEST(Ensembles, AllDeterministicZeroPattern) {
    PatternMatrix p(2);
    for (auto& c : p.cells) c = Cell::det({0.0, 0.0});
    EnsembleSpec s;
    s.kind = EnsembleKind::Generalized;
    s.k = 2;
    s.n = 6;
    s.pattern = p;
    SeedStream st(5, 0);
    const auto a = build_generalized(s, st);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) ASSERT_EQ(a(i, j), cd(0.0, 0.0));
}

TEST(Ensembles, GeneralizedIdentityPatternMatchesCheckerboard) {
    PatternMatrix p(2);
    p.at(0, 0) = Cell::det({1.0, 0.0});
    p.at(1, 1) = Cell::det({1.0, 0.0});
    p.at(0, 1) = Cell::rand();
    p.at(1, 0) = Cell::rand();
    EnsembleSpec g;
    g.kind = EnsembleKind::Generalized;
    g.k = 2;
    g.n = 4;
    g.symmetric = true;
    g.pattern = p;
    SeedStream s1(11, 2), s2(11, 2);
    const auto a = build_generalized(g, s1);
    const auto b = build_checkerboard(checkerboard(2, 4, true), s2);
    EXPECT_TRUE(a == b);
}

TEST(Ensembles, HollowGoeShape) {
    SeedStream st(3, 0);
    const auto one = build_hollow_goe(1, st);
    EXPECT_EQ(one(0, 0), cd(0.0, 0.0));

    const auto two = build_hollow_goe(2, st);
    EXPECT_EQ(two(0, 0), cd(0.0, 0.0));
    EXPECT_EQ(two(1, 1), cd(0.0, 0.0));
    EXPECT_EQ(two(0, 1), two(1, 0));
    EXPECT_EQ(two(0, 1).imag(), 0.0);
}

TEST(Ensembles, HollowGoeEntryVariance) {
    double sum_sq = 0.0;
    const int draws = 10000;
    for (int t = 0; t < draws; ++t) {
        SeedStream st(404, t);
        const auto a = build_hollow_goe(3, st);
        sum_sq += a(0, 1).real() * a(0, 1).real();
    }
    EXPECT_NEAR(sum_sq / draws, 1.0, 0.05);
}

TEST(Ensembles, PatternOf) {
    const auto p = pattern_of(checkerboard(3, 9, true));
    const auto b = p.numeric();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) ASSERT_EQ(b(i, j), i == j ? cd(1.0, 0.0) : cd(0.0, 0.0));

    const auto hollow = pattern_of(checkerboard(3, 9, true, {1.0, 0.0}, true)).numeric();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) ASSERT_EQ(hollow(i, j), cd(0.0, 0.0));

    EnsembleSpec g;
    g.kind = EnsembleKind::GaussianComplexSymmetric;
    g.n = 4;
    EXPECT_THROW(pattern_of(g), BadSpec);
}

TEST(Ensembles, RegularityOf) {
    EXPECT_EQ(regularity_of(pattern_of(checkerboard(4, 8, false))).value(), 1);

    PatternMatrix p(3); // one row with two pinned cells, others with fewer
    for (auto& c : p.cells) c = Cell::rand();
    p.at(0, 0) = Cell::det({1, 0});
    p.at(0, 2) = Cell::det({1, 0});
    p.at(2, 1) = Cell::det({1, 0});
    EXPECT_FALSE(regularity_of(p).has_value());

    PatternMatrix full(2);
    for (auto& c : full.cells) c = Cell::det({2, 0});
    EXPECT_EQ(regularity_of(full).value(), 2);
}

TEST(Ensembles, DeterministicRebuild) {
    EnsembleSpec s = checkerboard(2, 16, true);
    SeedStream s1(90125, 4), s2(90125, 4);
    EXPECT_TRUE(build_matrix(s, s1) == build_matrix(s, s2));
}

TEST(Ensembles, HollowPlusTilingEqualsFull) {
    EnsembleSpec full = checkerboard(3, 12, true);
    EnsembleSpec hollow = checkerboard(3, 12, true, {1.0, 0.0}, true);
    SeedStream s1(8, 5), s2(8, 5);
    const auto a = build_matrix(full, s1);
    const auto m = build_matrix(hollow, s2);
    ComplexMatrix p(12);
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j)
            if ((i - j) % 3 == 0) p(i, j) = 1.0;
    EXPECT_TRUE(a == m + p);
}

TEST(Ensembles, GaussianSymmetricScales) {
    double off = 0.0, diag = 0.0;
    const int draws = 20000;
    EnsembleSpec g;
    g.kind = EnsembleKind::GaussianComplexSymmetric;
    g.n = 2;
    for (int t = 0; t < draws; ++t) {
        SeedStream st(606, t);
        const auto a = build_matrix(g, st);
        ASSERT_EQ(a(0, 1), a(1, 0));
        off += std::norm(a(0, 1));
        diag += std::norm(a(0, 0));
    }
    EXPECT_NEAR(off / draws, 1.0, 0.05);
    EXPECT_NEAR(diag / draws, 2.0, 0.08);
}

TEST(Ensembles, Errors) {
    SeedStream st(0, 0);
    EXPECT_THROW(build_matrix(checkerboard(3, 4, false), st), NonDivisible);

    EnsembleSpec g = checkerboard(2, 4, false);
    g.kind = EnsembleKind::Generalized; // no pattern
    EXPECT_THROW(build_matrix(g, st), BadSpec);

    PatternMatrix p(2);
    p.at(0, 1) = Cell::det({1, 0}); // (1,0) stays random: not transpose-symmetric
    EnsembleSpec s;
    s.kind = EnsembleKind::Generalized;
    s.k = 2;
    s.n = 4;
    s.symmetric = true;
    s.pattern = p;
    EXPECT_THROW(build_matrix(s, st), AsymmetricPattern);

    EnsembleSpec big = checkerboard(2, 4, false);
    big.n = 8192;
    EXPECT_THROW(big.validate(), BadSpec);
}

TEST(Ensembles, JsonRoundTrip) {
    PatternMatrix p(2);
    p.at(0, 0) = Cell::det({1.0, -2.0});
    p.at(0, 1) = Cell::rand();
    p.at(1, 0) = Cell::rand();
    p.at(1, 1) = Cell::rand();
    EnsembleSpec s;
    s.kind = EnsembleKind::Generalized;
    s.k = 2;
    s.n = 8;
    s.symmetric = false;
    s.pattern = p;
    const auto j = to_json(s);
    const auto back = ensemble_from_json(j);
    EXPECT_EQ(back.kind, s.kind);
    EXPECT_EQ(back.k, s.k);
    EXPECT_EQ(back.n, s.n);
    ASSERT_TRUE(back.pattern.has_value());
    EXPECT_TRUE(back.pattern->at(0, 0) == p.at(0, 0));
    EXPECT_TRUE(back.pattern->at(1, 1) == p.at(1, 1));

    SeedStream s1(1, 0), s2(1, 0);
    EXPECT_TRUE(build_matrix(s, s1) == build_matrix(back, s2));
}
