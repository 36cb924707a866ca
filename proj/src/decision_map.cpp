#include "vamc/decision_map.hpp"

#include <algorithm>
#include <cmath>

#include "vamc/errors.hpp"

namespace vamc {

std::array<std::uint8_t, 3> viewport_color(Viewport v) {
    switch (v) {
        case Viewport::front_back: return {255, 0, 0};
        case Viewport::bottom_top: return {0, 0, 255};
        case Viewport::left_right: return {0, 255, 0};
    }
    return {0, 0, 0};
}

RgbImage render_decision_map(const MotionField& field, const Frame& base, double alpha) {
    if (field.config.method != Method::va_ptmc) throw ContractViolation("decision maps need a va_ptmc motion field");
    if (base.width() != field.width || base.height() != field.height) {
        throw ContractViolation("base frame does not match the motion field");
    }
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ContractViolation("overlay opacity must lie in [0, 1]");

    RgbImage out{base.width(), base.height(), std::vector<std::uint8_t>(3 * base.pixel_count())};
    const double scale = 255.0 / base.max_value();
    const double edge_alpha = std::min(1.0, 2.0 * alpha);

    for (const auto& est : field.blocks) {
        const auto color = viewport_color(est.viewport);
        const BlockRect& b = est.block;
        for (int y = b.y; y < b.y + b.height; ++y) {
            for (int x = b.x; x < b.x + b.width; ++x) {
                const bool edge = x == b.x || y == b.y || x == b.x + b.width - 1 || y == b.y + b.height - 1;
                const double a = edge ? edge_alpha : alpha;
                const double gray = base.at(x, y) * scale;
                auto* px = out.pixel(x, y);
                for (int c = 0; c < 3; ++c) {
                    px[c] = static_cast<std::uint8_t>(std::lround((1.0 - a) * gray + a * color[c]));
                }
            }
        }
    }
    return out;
}

}  // namespace vamc
