#include "vamc/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "vamc/errors.hpp"

namespace vamc {

namespace {

constexpr int kSsimRadius = 5;
constexpr double kSsimSigma = 1.5;
constexpr double kSsimK1 = 0.01;
constexpr double kSsimK2 = 0.03;

void check_pair(const Frame& a, const Frame& b, const CircularMask& mask) {
    if (a.width() != b.width() || a.height() != b.height()) throw ContractViolation("frames differ in size");
    if (a.bit_depth() != b.bit_depth()) throw ContractViolation("frames differ in bit depth");
    if (mask.width() != a.width() || mask.height() != a.height()) {
        throw ContractViolation("mask does not match the frame size");
    }
}

std::array<double, 2 * kSsimRadius + 1> gaussian_taps() {
    std::array<double, 2 * kSsimRadius + 1> taps{};
    double sum = 0.0;
    for (int i = -kSsimRadius; i <= kSsimRadius; ++i) {
        taps[i + kSsimRadius] = std::exp(-(i * i) / (2.0 * kSsimSigma * kSsimSigma));
        sum += taps[i + kSsimRadius];
    }
    for (double& t : taps) t /= sum;
    return taps;
}

// Separable Gaussian blur with border replication.
std::vector<double> blur(const std::vector<double>& img, int w, int h) {
    static const auto taps = gaussian_taps();
    std::vector<double> tmp(img.size());
    std::vector<double> out(img.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -kSsimRadius; k <= kSsimRadius; ++k) {
                acc += taps[k + kSsimRadius] * img[static_cast<std::size_t>(y) * w + std::clamp(x + k, 0, w - 1)];
            }
            tmp[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -kSsimRadius; k <= kSsimRadius; ++k) {
                acc += taps[k + kSsimRadius] * tmp[static_cast<std::size_t>(std::clamp(y + k, 0, h - 1)) * w + x];
            }
            out[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }
    return out;
}

}  // namespace

CircularMask::CircularMask(const FisheyeCamera& cam)
    : width_(cam.width()), height_(cam.height()),
      included_(static_cast<std::size_t>(cam.width()) * cam.height(), 0) {
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            if (cam.in_circle({static_cast<double>(x), static_cast<double>(y)})) {
                included_[static_cast<std::size_t>(y) * width_ + x] = 1;
                ++count_;
            }
        }
    }
    if (count_ == 0) throw ContractViolation("image circle contains no pixel");
}

CircularMask::CircularMask(int width, int height, std::vector<std::uint8_t> included)
    : width_(width), height_(height), included_(std::move(included)) {
    if (included_.size() != static_cast<std::size_t>(width) * height) {
        throw ContractViolation("mask size does not match its dimensions");
    }
    count_ = static_cast<std::size_t>(std::count_if(included_.begin(), included_.end(), [](auto v) { return v != 0; }));
    if (count_ == 0) throw ContractViolation("empty mask");
}

double mse_masked(const Frame& a, const Frame& b, const CircularMask& mask) {
    check_pair(a, b, mask);
    double sum = 0.0;
    for (int y = 0; y < a.height(); ++y) {
        const auto ra = a.row(y);
        const auto rb = b.row(y);
        for (int x = 0; x < a.width(); ++x) {
            if (!mask.contains(x, y)) continue;
            const double d = static_cast<double>(ra[x]) - rb[x];
            sum += d * d;
        }
    }
    return sum / static_cast<double>(mask.count());
}

double psnr_masked(const Frame& a, const Frame& b, const CircularMask& mask) {
    const double mse = mse_masked(a, b, mask);
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    const double peak = a.max_value();
    return 10.0 * std::log10(peak * peak / mse);
}

double ssim_masked(const Frame& a, const Frame& b, const CircularMask& mask) {
    check_pair(a, b, mask);
    const int w = a.width();
    const int h = a.height();
    const std::size_t n = static_cast<std::size_t>(w) * h;

    std::vector<double> fa(n), fb(n), faa(n), fbb(n), fab(n);
    for (std::size_t i = 0; i < n; ++i) {
        fa[i] = a.samples()[i];
        fb[i] = b.samples()[i];
        faa[i] = fa[i] * fa[i];
        fbb[i] = fb[i] * fb[i];
        fab[i] = fa[i] * fb[i];
    }
    const auto mu_a = blur(fa, w, h);
    const auto mu_b = blur(fb, w, h);
    const auto e_aa = blur(faa, w, h);
    const auto e_bb = blur(fbb, w, h);
    const auto e_ab = blur(fab, w, h);

    const double range = a.max_value();
    const double c1 = (kSsimK1 * range) * (kSsimK1 * range);
    const double c2 = (kSsimK2 * range) * (kSsimK2 * range);

    double sum = 0.0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.contains(x, y)) continue;
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            const double ma = mu_a[i];
            const double mb = mu_b[i];
            const double var_a = e_aa[i] - ma * ma;
            const double var_b = e_bb[i] - mb * mb;
            const double cov = e_ab[i] - ma * mb;
            sum += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) / ((ma * ma + mb * mb + c1) * (var_a + var_b + c2));
        }
    }
    return sum / static_cast<double>(mask.count());
}

}  // namespace vamc
