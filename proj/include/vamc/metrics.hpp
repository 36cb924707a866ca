#pragma once

// Quality metrics restricted to the fisheye image circle.

#include <cstdint>
#include <vector>

#include "vamc/frame.hpp"
#include "vamc/geometry.hpp"

namespace vamc {

class CircularMask {
public:
    // Pixels whose distance to the principal point is at most the image-circle radius.
    explicit CircularMask(const FisheyeCamera& cam);
    // Arbitrary mask; throws ContractViolation when no pixel is set.
    CircularMask(int width, int height, std::vector<std::uint8_t> included);

    int width() const { return width_; }
    int height() const { return height_; }
    bool contains(int x, int y) const { return included_[static_cast<std::size_t>(y) * width_ + x] != 0; }
    std::size_t count() const { return count_; }

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> included_;
    std::size_t count_ = 0;
};

// Mean squared error over the masked pixels.
double mse_masked(const Frame& a, const Frame& b, const CircularMask& mask);

// 10 log10(MAX^2 / MSE) with MAX = 2^bit_depth - 1. Identical frames give +infinity.
double psnr_masked(const Frame& a, const Frame& b, const CircularMask& mask);

// SSIM with an 11x11 Gaussian window (sigma 1.5), K1 = 0.01, K2 = 0.03,
// averaged over the windows centred on masked pixels. Windows reaching past
// the frame border read replicated border samples.
double ssim_masked(const Frame& a, const Frame& b, const CircularMask& mask);

}  // namespace vamc
