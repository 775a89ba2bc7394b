#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "spectra/eig.hpp"
#include "spectra/ensembles.hpp"

using namespace spectra;

namespace {

ComplexMatrix random_hermitian(int n, std::uint64_t seed) {
    SeedStream st(seed, 0);
    ComplexMatrix h(n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = st.next_gaussian();
        for (int j = i + 1; j < n; ++j) {
            const cd v = st.next_complex_gaussian(kSlotComponentSd);
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

ComplexMatrix random_general(int n, std::uint64_t seed) {
    SeedStream st(seed, 0);
    ComplexMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = st.next_complex_gaussian(kSlotComponentSd);
    return a;
}

} // namespace

TEST(HermitianEig, TwoByTwo) {
    ComplexMatrix h(2);
    h(0, 0) = 2;
    h(0, 1) = 1;
    h(1, 0) = 1;
    h(1, 1) = 2;
    const auto s = hermitian_eigenvalues(h);
    EXPECT_NEAR(s.values[0], 1.0, 1e-12);
    EXPECT_NEAR(s.values[1], 3.0, 1e-12);
}

TEST(HermitianEig, Identity) {
    const auto s = hermitian_eigenvalues(ComplexMatrix::identity(17));
    for (double v : s.values) EXPECT_NEAR(v, 1.0, 1e-14);
}

TEST(HermitianEig, FrobeniusIdentitySixBySix) {
    const auto h = random_hermitian(6, 303);
    const auto s = hermitian_eigenvalues(h);
    double sum_sq = 0.0;
    for (double v : s.values) sum_sq += v * v;
    EXPECT_NEAR(sum_sq, h.frobenius_norm_sq(), 1e-8 * h.frobenius_norm_sq());
}

TEST(HermitianEig, AscendingAndReal) {
    const auto s = hermitian_eigenvalues(random_hermitian(31, 8));
    EXPECT_TRUE(std::is_sorted(s.values.begin(), s.values.end()));
    EXPECT_EQ(static_cast<int>(s.values.size()), 31);
}

TEST(HermitianEig, AgreesWithGeneralPath) {
    const auto h = random_hermitian(40, 4242);
    const auto hs = hermitian_eigenvalues(h);
    const auto cs = complex_eigenvalues(h);
    std::vector<double> re;
    for (const auto& v : cs.values) {
        EXPECT_LE(std::abs(v.imag()), 1e-10);
        re.push_back(v.real());
    }
    std::sort(re.begin(), re.end());
    for (int i = 0; i < 40; ++i) EXPECT_NEAR(re[i], hs.values[i], 1e-9);
}

TEST(ComplexEig, TriangularSpectrumIsDiagonal) {
    ComplexMatrix a(3);
    a(0, 0) = 1;
    a(1, 1) = cd(0, 2);
    a(2, 2) = -3;
    a(0, 1) = 5;
    a(0, 2) = -2;
    a(1, 2) = cd(1, 1);
    auto s = complex_eigenvalues(a);
    std::sort(s.values.begin(), s.values.end(),
              [](cd x, cd y) { return x.real() < y.real(); });
    EXPECT_NEAR(std::abs(s.values[0] - cd(-3, 0)), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(s.values[1] - cd(0, 2)), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(s.values[2] - cd(1, 0)), 0.0, 1e-10);
}

TEST(ComplexEig, CompanionMatrix) {
    // companion of z^2 - 1
    ComplexMatrix a(2);
    a(0, 1) = 1;
    a(1, 0) = 1;
    auto s = complex_eigenvalues(a);
    std::sort(s.values.begin(), s.values.end(),
              [](cd x, cd y) { return x.real() < y.real(); });
    EXPECT_NEAR(std::abs(s.values[0] - cd(-1, 0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s.values[1] - cd(1, 0)), 0.0, 1e-12);
}

TEST(ComplexEig, TilingMatrixSpectrum) {
    // ones at i = j (mod 2), N = 8: rank two, eigenvalues {4, 4, 0 x 6}
    ComplexMatrix p(8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            if ((i - j) % 2 == 0) p(i, j) = 1;
    auto s = complex_eigenvalues(p);
    std::vector<double> mags;
    for (const auto& v : s.values) mags.push_back(std::abs(v));
    std::sort(mags.begin(), mags.end());
    for (int i = 0; i < 6; ++i) EXPECT_LE(mags[i], 1e-8);
    EXPECT_NEAR(mags[6], 4.0, 1e-9);
    EXPECT_NEAR(mags[7], 4.0, 1e-9);
}

TEST(ComplexEig, TraceIdentitiesOnRandomMatrices) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto a = random_general(30, seed);
        const auto s = complex_eigenvalues(a); // throws if identities violated
        EXPECT_LE(s.trace_residual, 1e-6 * (1.0 + a.frobenius_norm()));
        EXPECT_LE(s.trace_sq_residual, 1e-6 * (1.0 + a.frobenius_norm_sq()));
    }
}

TEST(SingularValues, IdentityAndDiagonal) {
    const auto s = singular_values(ComplexMatrix::identity(5));
    for (double v : s.values) EXPECT_NEAR(v, 1.0, 1e-12);

    ComplexMatrix d(2);
    d(0, 0) = 3;
    d(1, 1) = cd(0, 4);
    const auto sv = singular_values(d);
    EXPECT_NEAR(sv.values[0], 3.0, 1e-12);
    EXPECT_NEAR(sv.values[1], 4.0, 1e-12);
}

TEST(SingularValues, CheckerboardBlipScale) {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::Checkerboard;
    spec.k = 2;
    spec.n = 100;
    spec.symmetric = true;
    SeedStream st(404, 0);
    const auto sv = singular_values(build_matrix(spec, st));
    EXPECT_NEAR(sv.values.back(), 50.0, 15.0);
}

TEST(SingularValues, DiagonalUnitaryInvariance) {
    const auto a = random_general(18, 99);
    SeedStream st(100, 0);
    ComplexMatrix b(18);
    for (int i = 0; i < 18; ++i)
        for (int j = 0; j < 18; ++j) {
            const double ti = 2.0 * M_PI * (i * 0.137), tj = 2.0 * M_PI * (j * 0.311);
            b(i, j) = std::polar(1.0, ti) * a(i, j) * std::polar(1.0, tj);
        }
    const auto sa = singular_values(a), sb = singular_values(b);
    for (int i = 0; i < 18; ++i) EXPECT_NEAR(sa.values[i], sb.values[i], 1e-8);
}

TEST(SingularValues, LeastSingularValue) {
    ComplexMatrix d(2);
    d(0, 0) = 1;
    d(1, 1) = 2;
    EXPECT_NEAR(least_singular_value(d), 1.0, 1e-12);

    ComplexMatrix s(3); // repeated row: rank deficient
    for (int j = 0; j < 3; ++j) {
        s(0, j) = cd(1.0, j);
        s(1, j) = cd(1.0, j);
        s(2, j) = cd(0.5 * j, -1.0);
    }
    EXPECT_LE(least_singular_value(s), 1e-7);
}
