#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace vamc {

// Single-channel (luma) raster.
class Frame {
public:
    Frame() = default;
    Frame(int width, int height, int bit_depth = 8, std::uint16_t fill = 0);
    // Throws ContractViolation when the sample count or a sample value is invalid.
    Frame(int width, int height, int bit_depth, std::vector<std::uint16_t> samples);

    int width() const { return width_; }
    int height() const { return height_; }
    int bit_depth() const { return bit_depth_; }
    int max_value() const { return (1 << bit_depth_) - 1; }
    bool empty() const { return samples_.empty(); }
    std::size_t pixel_count() const { return samples_.size(); }

    std::uint16_t at(int x, int y) const { return samples_[static_cast<std::size_t>(y) * width_ + x]; }
    void set(int x, int y, std::uint16_t v);

    std::span<const std::uint16_t> samples() const { return samples_; }
    std::span<const std::uint16_t> row(int y) const {
        return std::span<const std::uint16_t>(samples_).subspan(static_cast<std::size_t>(y) * width_, width_);
    }

    friend bool operator==(const Frame&, const Frame&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    int bit_depth_ = 8;
    std::vector<std::uint16_t> samples_;
};

// Rectangular region of a frame, in pixels.
struct BlockRect {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;

    friend constexpr bool operator==(const BlockRect&, const BlockRect&) = default;
};

}  // namespace vamc
