#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vamc/sampling.hpp"

using namespace vamc;

namespace {

// Keys kernel with the a = -0.5 coefficients expanded by hand.
double keys(double s) {
    const double t = std::abs(s);
    if (t < 1) return 1.5 * t * t * t - 2.5 * t * t + 1.0;
    if (t < 2) return -0.5 * t * t * t + 2.5 * t * t - 4.0 * t + 2.0;
    return 0.0;
}

// Full 2-D convolution over a 4x4 neighbourhood with replicated borders.
double interpolate_direct(const Frame& f, double x, double y) {
    const double qx = std::round(x * 8) / 8, qy = std::round(y * 8) / 8;
    const int x0 = static_cast<int>(std::floor(qx)), y0 = static_cast<int>(std::floor(qy));
    double acc = 0.0;
    for (int j = y0 - 1; j <= y0 + 2; ++j) {
        for (int i = x0 - 1; i <= x0 + 2; ++i) {
            const int xx = std::clamp(i, 0, f.width() - 1), yy = std::clamp(j, 0, f.height() - 1);
            acc += keys(qx - i) * keys(qy - j) * f.at(xx, yy);
        }
    }
    return std::clamp(acc, 0.0, 255.0);
}

Frame ramp(int w, int h) {
    Frame f(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) f.set(x, y, static_cast<std::uint16_t>(3 * x + 2 * y + 10));
    return f;
}

}  // namespace

TEST(CubicKernel, KnownValues) {
    EXPECT_EQ(cubic_kernel(0.0), 1.0);
    EXPECT_EQ(cubic_kernel(1.0), 0.0);
    EXPECT_EQ(cubic_kernel(-1.0), 0.0);
    EXPECT_EQ(cubic_kernel(2.0), 0.0);
    EXPECT_EQ(cubic_kernel(2.5), 0.0);
    EXPECT_DOUBLE_EQ(cubic_kernel(0.5), 0.5625);
    EXPECT_DOUBLE_EQ(cubic_kernel(1.5), -0.0625);
    for (double s = -2.5; s <= 2.5; s += 0.01) EXPECT_NEAR(cubic_kernel(s), keys(s), 1e-14) << s;
}

TEST(CubicKernel, PartitionOfUnityAtEveryPhase) {
    for (int k = 0; k < 8; ++k) {
        const double t = k / 8.0;
        double sum = 0.0;
        for (int i = -1; i <= 2; ++i) sum += cubic_kernel(t - i);
        EXPECT_NEAR(sum, 1.0, 1e-12) << t;
    }
}

TEST(QuantizeSubpel, RoundsHalfAwayFromZeroAndIsIdempotent) {
    EXPECT_EQ(quantize_subpel(0.0625), 0.125);
    EXPECT_EQ(quantize_subpel(-0.0625), -0.125);
    EXPECT_EQ(quantize_subpel(0.06), 0.0);
    EXPECT_EQ(quantize_subpel(10.3), 10.25);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-500, 500);
    for (int i = 0; i < 10000; ++i) {
        const double q = quantize_subpel(u(rng));
        EXPECT_EQ(quantize_subpel(q), q);
        EXPECT_EQ(q * 8, std::round(q * 8));
    }
}

TEST(SubpelGrid, IntegerPositionsReturnTheSample) {
    std::mt19937_64 rng(2);
    const Frame f = oracle::random_frame(32, 24, rng);
    const SubpelGrid g(f);
    for (int y = 0; y < 24; ++y)
        for (int x = 0; x < 32; ++x) {
            EXPECT_EQ(g.sample_at({double(x), double(y)}), f.at(x, y));
            EXPECT_EQ(g.sample_integer(x, y), f.at(x, y));
        }
}

TEST(SubpelGrid, ReproducesLinearRamps) {
    const Frame f = ramp(32, 32);
    const SubpelGrid g(f);
    EXPECT_NEAR(g.sample_at({10.25, 5.0}), 3 * 10.25 + 2 * 5 + 10, 1e-9);
    for (double y = 2; y < 28; y += 0.375)
        for (double x = 2; x < 28; x += 0.625) EXPECT_NEAR(g.sample_at({x, y}), 3 * x + 2 * y + 10, 1e-9);
}

TEST(SubpelGrid, ConstantFrameStaysConstantEverywhere) {
    const Frame f(16, 16, 8, 57);
    const SubpelGrid g(f);
    for (double y = -5; y < 21; y += 0.37)
        for (double x = -5; x < 21; x += 0.41) EXPECT_NEAR(g.sample_at({x, y}), 57.0, 1e-12);
}

TEST(SubpelGrid, MatchesDirectConvolutionIncludingBorders) {
    std::mt19937_64 rng(3);
    const Frame f = oracle::random_frame(20, 17, rng);
    const SubpelGrid g(f);
    std::uniform_real_distribution<double> ux(-4, 24), uy(-4, 21);
    for (int i = 0; i < 20000; ++i) {
        const double x = ux(rng), y = uy(rng);
        ASSERT_NEAR(g.sample_at({x, y}), interpolate_direct(f, x, y), 1e-9) << x << ", " << y;
    }
}

TEST(SubpelGrid, ResultIsClampedToTheSampleRange) {
    Frame f(8, 8, 8, 0);
    f.set(4, 4, 255);
    f.set(3, 4, 255);
    const SubpelGrid g(f);
    for (double x = 0; x < 8; x += 0.125) {
        const double v = g.sample_at({x, 4.5});
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 255.0);
    }
    // Overshoot next to a step is negative before clamping.
    EXPECT_EQ(g.sample_at({1.5, 4.0}), 0.0);
}

TEST(SubpelGrid, HorizontalRampAndQuantizationIdempotence) {
    Frame f(24, 12);
    for (int y = 0; y < 12; ++y)
        for (int x = 0; x < 24; ++x) f.set(x, y, static_cast<std::uint16_t>(x));
    const SubpelGrid g(f);
    EXPECT_NEAR(g.sample_at({10.25, 5.0}), 10.25, 1e-9);

    std::mt19937_64 rng(5);
    const Frame n = oracle::random_frame(24, 12, rng);
    const SubpelGrid gn(n);
    std::uniform_real_distribution<double> ux(-3, 27), uy(-3, 15);
    for (int i = 0; i < 5000; ++i) {
        const Vec2 p{ux(rng), uy(rng)};
        EXPECT_EQ(gn.sample_at(p), gn.sample_at({quantize_subpel(p.x), quantize_subpel(p.y)}));
    }
}
