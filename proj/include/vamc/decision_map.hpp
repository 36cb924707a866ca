#pragma once

#include <array>
#include <cstdint>

#include "vamc/frame.hpp"
#include "vamc/image_io.hpp"
#include "vamc/motion.hpp"

namespace vamc {

// Overlay colours: front_back red, bottom_top blue, left_right green.
std::array<std::uint8_t, 3> viewport_color(Viewport v);

// Blends each block's viewport colour over the grayscale base frame with the
// given opacity and outlines the blocks with 1-px borders at twice that
// opacity. Throws ContractViolation unless the field comes from va_ptmc.
RgbImage render_decision_map(const MotionField& field, const Frame& base, double alpha = 0.5);

}  // namespace vamc
