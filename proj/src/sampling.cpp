#include "vamc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace vamc {

namespace {

constexpr double kKeysA = -0.5;

}  // namespace

double cubic_kernel(double s) {
    const double t = std::abs(s);
    if (t < 1.0) return ((kKeysA + 2.0) * t - (kKeysA + 3.0)) * t * t + 1.0;
    if (t < 2.0) return ((kKeysA * t - 5.0 * kKeysA) * t + 8.0 * kKeysA) * t - 4.0 * kKeysA;
    return 0.0;
}

double quantize_subpel(double v) {
    return std::round(v * SubpelGrid::kPrecision) / SubpelGrid::kPrecision;
}

SubpelGrid::SubpelGrid(const Frame& source) : source_(&source) {
    for (int phase = 0; phase < kPrecision; ++phase) {
        const double frac = static_cast<double>(phase) / kPrecision;
        for (int tap = 0; tap < 4; ++tap) weights_[phase][tap] = cubic_kernel(frac - (tap - 1));
    }
}

double SubpelGrid::sample_integer(int x, int y) const {
    const Frame& f = *source_;
    return f.at(std::clamp(x, 0, f.width() - 1), std::clamp(y, 0, f.height() - 1));
}

double SubpelGrid::sample_at(Vec2 p) const {
    const Frame& f = *source_;
    const auto qx = static_cast<std::int64_t>(std::round(p.x * kPrecision));
    const auto qy = static_cast<std::int64_t>(std::round(p.y * kPrecision));
    // Floor division so negative coordinates keep a phase in [0, 8).
    const std::int64_t ix = qx >= 0 ? qx / kPrecision : -((-qx + kPrecision - 1) / kPrecision);
    const std::int64_t iy = qy >= 0 ? qy / kPrecision : -((-qy + kPrecision - 1) / kPrecision);
    const int phase_x = static_cast<int>(qx - ix * kPrecision);
    const int phase_y = static_cast<int>(qy - iy * kPrecision);

    const auto clamp_x = [&](std::int64_t x) { return static_cast<int>(std::clamp<std::int64_t>(x, 0, f.width() - 1)); };
    const auto clamp_y = [&](std::int64_t y) { return static_cast<int>(std::clamp<std::int64_t>(y, 0, f.height() - 1)); };

    if (phase_x == 0 && phase_y == 0) return f.at(clamp_x(ix), clamp_y(iy));

    const auto& wx = weights_[phase_x];
    const auto& wy = weights_[phase_y];
    int cols[4];
    for (int t = 0; t < 4; ++t) cols[t] = clamp_x(ix - 1 + t);

    double acc = 0.0;
    for (int j = 0; j < 4; ++j) {
        const auto row = f.row(clamp_y(iy - 1 + j));
        double h = 0.0;
        for (int i = 0; i < 4; ++i) h += wx[i] * row[cols[i]];
        acc += wy[j] * h;
    }
    return std::clamp(acc, 0.0, static_cast<double>(f.max_value()));
}

}  // namespace vamc
