#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "conegeom/cone_core.hpp"
#include "support.hpp"

using namespace conegeom;
using conegeom::testing::Rng;

namespace {

ProjectivePoint ray(std::initializer_list<double> v) { return normalize(ConeVector(v)); }

} // namespace

TEST(ConeVector, RejectsInvalidInput) {
    EXPECT_THROW(ConeVector({0.0, 0.0}), Error);
    EXPECT_THROW(ConeVector({1.0, -1.0}), Error);
    EXPECT_THROW(ConeVector(std::vector<double>{}), Error);
    EXPECT_THROW(ConeVector({1.0, std::numeric_limits<double>::quiet_NaN()}), Error);
    // Small negatives within zero_tol are clamped to zero.
    const ConeVector f(std::vector<double>{1.0, -1e-15}, 1e-12);
    EXPECT_EQ(f[1], 0.0);
}

TEST(Aleph, Examples) {
    EXPECT_DOUBLE_EQ(aleph({1, 2}, {2, 1}), 0.5);
    EXPECT_DOUBLE_EQ(aleph({1, 1}, {1, 1}), 1.0);
    EXPECT_EQ(aleph({1, 0}, {0, 1}), 0.0);
}

TEST(Aleph, Errors) {
    EXPECT_THROW(aleph({1, 2}, {1, 2, 3}), Error);
    try {
        aleph({1, 2}, {1, 2, 3});
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::dimension_mismatch);
    }
    // Support vanishes once zero_tol swallows every entry.
    EXPECT_THROW(aleph({1e-13, 1e-14}, {1, 1}, {.zero_tol = 1e-12}), Error);
}

TEST(Aleph, MatchesBisectionOracle) {
    Rng rng(11);
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = 2 + t % 7;
        auto f = conegeom::testing::random_entries(rng, n, 0.25);
        auto g = conegeom::testing::random_entries(rng, n, 0.25);
        // Bisection resolution is relative to the scale of the answer.
        const double got = aleph(ConeVector(f), ConeVector(g));
        const double want = conegeom::testing::aleph_by_bisection(f, g);
        EXPECT_NEAR(got, want, 1e-12 * std::max(1.0, want));
    }
}

TEST(MRatio, Examples) {
    EXPECT_DOUBLE_EQ(m_ratio({1, 2}, {2, 1}).m, 0.25);
    EXPECT_DOUBLE_EQ(m_ratio({3, 6}, {1, 2}).m, 1.0);
    EXPECT_EQ(m_ratio({1, 0}, {0, 1}).m, 0.0);
    const auto r = m_ratio({1, 2}, {2, 1});
    EXPECT_EQ(r.m, r.aleph_fg * r.aleph_gf);
}

TEST(PseudoDistance, Examples) {
    EXPECT_NEAR(pseudo_distance(ray({1, 2}), ray({2, 1})), 0.6, 1e-15);
    EXPECT_EQ(pseudo_distance(ray({1, 2}), ray({1, 2})), 0.0);
    EXPECT_EQ(pseudo_distance(ray({1, 0}), ray({0, 1})), 1.0);
    EXPECT_THROW(pseudo_distance(ray({1, 2}), ray({1, 2, 3})), Error);
}

TEST(HilbertDistance, Examples) {
    EXPECT_NEAR(hilbert_distance(ray({1, 2}), ray({2, 1})), std::log(4.0), 1e-12);
    EXPECT_EQ(hilbert_distance(ray({3, 1}), ray({3, 1})), 0.0);
    EXPECT_TRUE(std::isinf(hilbert_distance(ray({1, 0}), ray({0, 1}))));
}

TEST(Phi, ExamplesAndDomain) {
    EXPECT_EQ(phi(0.0), 1.0);
    EXPECT_EQ(phi(1.0), 0.0);
    EXPECT_DOUBLE_EQ(phi(0.25), 0.6);
    EXPECT_THROW(phi(-0.1), Error);
    EXPECT_THROW(phi(1.5), Error);
}

TEST(Phi, SubadditiveOnProductsOverGrid) {
    constexpr int N = 200;
    for (int a = 0; a <= N; ++a)
        for (int b = 0; b <= N; ++b) {
            const double s = double(a) / N, t = double(b) / N;
            ASSERT_LE(phi(s * t), phi(s) + phi(t) + 1e-15) << s << " " << t;
        }
}

TEST(Psi, ExamplesAndRoundTrip) {
    EXPECT_EQ(psi(1.0), 0.0);
    EXPECT_DOUBLE_EQ(psi(2.0), 0.6);
    EXPECT_DOUBLE_EQ(psi_inverse(0.6), 2.0);
    EXPECT_EQ(psi_inverse(0.0), 1.0);
    EXPECT_NEAR(psi(10.0), 99.0 / 101.0, 1e-15);
    EXPECT_NEAR(psi_inverse(99.0 / 101.0), 10.0, 1e-12);
    EXPECT_THROW(psi(0.5), Error);
    EXPECT_THROW(psi_inverse(1.0), Error);
    for (double c = 0.0; c < 0.999; c += 0.0137)
        EXPECT_NEAR(psi(psi_inverse(c)), c, 1e-12);
    // psi = phi(A^-2) and increasing
    double prev = -1.0;
    for (double a = 1.0; a < 50.0; a += 0.25) {
        EXPECT_NEAR(psi(a), phi(1.0 / (a * a)), 1e-15);
        EXPECT_GT(psi(a), prev);
        prev = psi(a);
    }
}

TEST(SegmentDistance, Examples) {
    EXPECT_EQ(segment_distance(1, 0, 1, 0), 0.0);
    EXPECT_EQ(segment_distance(1, 0, 0, 1), 1.0);
    EXPECT_DOUBLE_EQ(segment_distance(2, 1, 1, 2), 0.6);
    EXPECT_DOUBLE_EQ(segment_distance(2, 1, 1, 2), pseudo_distance(ConeVector{2, 1}, ConeVector{1, 2}));
    EXPECT_THROW(segment_distance(0, 0, 1, 2), Error);
    EXPECT_THROW(segment_distance(1, -1, 1, 2), Error);
}

TEST(Normalize, Examples) {
    EXPECT_EQ(ray({2, 4}).representative(), (ConeVector{0.5, 1}));
    EXPECT_EQ(ray({1, 0}).representative(), (ConeVector{1, 0}));
    EXPECT_EQ(ray({3, 3, 3}).representative(), (ConeVector{1, 1, 1}));
}

TEST(Normalize, IdempotentAndScaleInvariant) {
    Rng rng(5);
    std::uniform_real_distribution<double> scale(1e-3, 1e3);
    for (int t = 0; t < 300; ++t) {
        const auto f = conegeom::testing::random_cone_vector(rng, 2 + t % 10);
        const auto p = normalize(f);
        EXPECT_EQ(normalize(p.representative()), p);
        EXPECT_DOUBLE_EQ(*std::max_element(p.entries().begin(), p.entries().end()), 1.0);
        std::vector<double> scaled(f.to_vector());
        const double a = scale(rng);
        for (auto& x : scaled)
            x *= a;
        EXPECT_TRUE(same_ray(normalize(ConeVector(scaled)), p));
    }
}

TEST(Metrics, TanhIdentity) {
    Rng rng(7);
    for (int t = 0; t < 2000; ++t) {
        const std::size_t n = 2 + t % 15;
        const auto f = conegeom::testing::random_cone_vector(rng, n, 0.1);
        const auto g = conegeom::testing::random_cone_vector(rng, n, 0.1);
        if (m_ratio(f, g).m == 0.0)
            continue;
        EXPECT_NEAR(pseudo_distance(f, g), std::tanh(hilbert_distance(f, g) / 2.0), 1e-12);
    }
}

TEST(Metrics, ZeroTolChangesSupport) {
    const ConeVector f{1.0, 1e-14};
    const ConeVector g{1.0, 0.0};
    EXPECT_EQ(pseudo_distance(f, g), 1.0);
    EXPECT_EQ(pseudo_distance(f, g, {.zero_tol = 1e-12}), 0.0);
}
