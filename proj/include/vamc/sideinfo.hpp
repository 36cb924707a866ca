#pragma once

// Side information a decoder would need to rebuild a motion compensated
// frame: one signed 8-bit motion vector per block, plus a 2-bit viewport code
// per block for va_ptmc.
//
// Layout (raster block order):
//   [dx0, dy0, dx1, dy1, ...]            int8 two's complement
//   [v0 | v1 << 2 | v2 << 4 | v3 << 6]   va_ptmc only, zero padded
// with front_back = 0, bottom_top = 1, left_right = 2.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vamc/motion.hpp"

namespace vamc {

using Bytes = std::vector<std::uint8_t>;

// Throws ContractViolation when a vector component does not fit in int8.
Bytes pack_side_info(const MotionField& field, Method method);

struct UnpackedSideInfo {
    std::vector<MotionVector> vectors;
    std::vector<Viewport> viewports;  // empty unless the stream carries viewport codes
};

// Inverse of pack_side_info for a known block count.
UnpackedSideInfo unpack_side_info(std::span<const std::uint8_t> bytes, std::size_t block_count, Method method);

std::size_t packed_size(std::size_t block_count, Method method);

class Compressor {
public:
    virtual ~Compressor() = default;
    virtual std::string_view name() const = 0;
    virtual Bytes compress(std::span<const std::uint8_t> raw) const = 0;
    virtual Bytes decompress(std::span<const std::uint8_t> packed) const = 0;
};

// Registered backends: "identity" (stored as-is) and "bzip2" (standard .bz2 stream).
std::unique_ptr<Compressor> make_compressor(std::string_view name);
std::vector<std::string> compressor_names();

struct RateMeasurement {
    std::size_t raw_bytes = 0;
    std::size_t compressed_bytes = 0;
    double bits_per_pixel = 0.0;
};

// Compressed size * 8 / pixel_count. The compressed stream is decoded again and
// must reproduce raw exactly; a mismatch throws CompressorError.
RateMeasurement rate_bits_per_pixel(std::span<const std::uint8_t> raw, const Compressor& compressor,
                                    std::size_t pixel_count);

}  // namespace vamc
