#pragma once

// Frame sources and image writers for the command-line driver.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "vamc/frame.hpp"

namespace vamc {

struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;  // interleaved R, G, B

    std::uint8_t* pixel(int x, int y) { return rgb.data() + 3 * (static_cast<std::size_t>(y) * width + x); }
    const std::uint8_t* pixel(int x, int y) const {
        return rgb.data() + 3 * (static_cast<std::size_t>(y) * width + x);
    }
};

// Reads an 8-bit still image as luma; colour images use BT.601 weights.
// Throws IoError with the file name when the image cannot be decoded.
Frame read_luma_image(const std::filesystem::path& path);

// Lossless 8-bit grayscale (PNG, PGM, ... by extension).
void write_gray_image(const std::filesystem::path& path, const Frame& frame);
void write_rgb_image(const std::filesystem::path& path, const RgbImage& image);

// Indexed access to the luma planes of an image sequence.
class FrameSource {
public:
    virtual ~FrameSource() = default;
    virtual std::size_t size() const = 0;
    virtual Frame read(std::size_t index) const = 0;
    virtual std::string describe(std::size_t index) const = 0;
};

// A directory of still images (sorted by file name) or a YUV4MPEG2 (.y4m)
// file with 8-bit planar samples. Throws IoError.
std::unique_ptr<FrameSource> open_frame_source(const std::filesystem::path& path);

}  // namespace vamc
