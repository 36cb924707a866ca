#pragma once

// Cubic convolution interpolation of a reference frame at 1/8-pel positions.

#include <array>

#include "vamc/frame.hpp"
#include "vamc/geometry.hpp"

namespace vamc {

// Keys cubic convolution kernel with a = -0.5; support |s| < 2.
double cubic_kernel(double s);

// Rounds to the nearest multiple of 1/8, halves away from zero.
double quantize_subpel(double v);

class SubpelGrid {
public:
    static constexpr int kPrecision = 8;

    explicit SubpelGrid(const Frame& source);

    const Frame& source() const { return *source_; }

    // Interpolated value at p after 1/8-pel quantization. Out-of-frame taps
    // replicate the border; the result is clamped to [0, max_value] but not rounded.
    double sample_at(Vec2 p) const;

    // Border-replicated integer sample.
    double sample_integer(int x, int y) const;

private:
    const Frame* source_;
    // Tap weights for offsets -1, 0, 1, 2 at each of the eight phases.
    std::array<std::array<double, 4>, kPrecision> weights_{};
};

}  // namespace vamc
