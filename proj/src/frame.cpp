#include "vamc/frame.hpp"

#include <string>

#include "vamc/errors.hpp"

namespace vamc {

namespace {

void check_geometry(int width, int height, int bit_depth) {
    if (width <= 0 || height <= 0) throw ContractViolation("frame dimensions must be positive");
    if (bit_depth < 1 || bit_depth > 16) throw ContractViolation("bit depth must lie in [1, 16]");
}

}  // namespace

Frame::Frame(int width, int height, int bit_depth, std::uint16_t fill)
    : width_(width), height_(height), bit_depth_(bit_depth) {
    check_geometry(width, height, bit_depth);
    if (fill > max_value()) throw ContractViolation("fill value exceeds the bit depth");
    samples_.assign(static_cast<std::size_t>(width) * height, fill);
}

Frame::Frame(int width, int height, int bit_depth, std::vector<std::uint16_t> samples)
    : width_(width), height_(height), bit_depth_(bit_depth), samples_(std::move(samples)) {
    check_geometry(width, height, bit_depth);
    if (samples_.size() != static_cast<std::size_t>(width) * height) {
        throw ContractViolation("expected " + std::to_string(static_cast<std::size_t>(width) * height) +
                                " samples, got " + std::to_string(samples_.size()));
    }
    for (auto s : samples_) {
        if (s > max_value()) throw ContractViolation("sample " + std::to_string(s) + " exceeds the bit depth");
    }
}

void Frame::set(int x, int y, std::uint16_t v) {
    if (v > max_value()) throw ContractViolation("sample " + std::to_string(v) + " exceeds the bit depth");
    samples_[static_cast<std::size_t>(y) * width_ + x] = v;
}

}  // namespace vamc
