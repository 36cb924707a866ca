#include "vamc/motion.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "vamc/errors.hpp"

namespace vamc {

namespace {

constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

constexpr MotionVector kLargeDiamond[] = {{0, -2}, {1, -1}, {2, 0}, {1, 1}, {0, 2}, {-1, 1}, {-2, 0}, {-1, -1}};
constexpr MotionVector kSmallDiamond[] = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}};

int viewport_index(Viewport v) { return static_cast<int>(v); }

// Memoized cost lookup over the (2R+1)^2 vector window.
class CostTable {
public:
    CostTable(const CostFunction& cost, int range)
        : cost_(cost), range_(range), side_(2 * range + 1),
          values_(static_cast<std::size_t>(side_) * side_, std::numeric_limits<double>::quiet_NaN()) {}

    MotionVector clamp(MotionVector m) const {
        return {std::clamp(m.dx, -range_, range_), std::clamp(m.dy, -range_, range_)};
    }

    double operator()(MotionVector m) {
        double& slot = values_[static_cast<std::size_t>(m.dy + range_) * side_ + (m.dx + range_)];
        if (std::isnan(slot)) {
            slot = cost_(m);
            ++evaluations_;
        }
        return slot;
    }

    int evaluations() const { return evaluations_; }

private:
    const CostFunction& cost_;
    int range_;
    int side_;
    std::vector<double> values_;
    int evaluations_ = 0;
};

}  // namespace

std::string_view to_string(Method m) {
    switch (m) {
        case Method::tmc: return "tmc";
        case Method::ptmc: return "ptmc";
        case Method::va_ptmc: return "va_ptmc";
    }
    return "unknown";
}

std::string_view to_string(SearchStrategy s) {
    switch (s) {
        case SearchStrategy::diamond: return "diamond";
        case SearchStrategy::exhaustive: return "exhaustive";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    for (Method m : {Method::tmc, Method::ptmc, Method::va_ptmc}) {
        if (to_string(m) == name) return m;
    }
    if (name == "va-ptmc") return Method::va_ptmc;
    return std::nullopt;
}

std::optional<SearchStrategy> parse_strategy(std::string_view name) {
    for (SearchStrategy s : {SearchStrategy::diamond, SearchStrategy::exhaustive}) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

void SearchConfig::validate() const {
    if (block_size <= 0) throw ConfigError("block size must be positive");
    if (search_range <= 0) throw ConfigError("search range must be positive");
    if (search_range > 127) throw ConfigError("search range must not exceed 127 (8-bit vector side information)");
}

int MotionField::blocks_x() const { return (width + config.block_size - 1) / config.block_size; }
int MotionField::blocks_y() const { return (height + config.block_size - 1) / config.block_size; }

std::vector<BlockRect> partition_blocks(int width, int height, int block_size) {
    if (width <= 0 || height <= 0 || block_size <= 0) throw ContractViolation("invalid block partition request");
    std::vector<BlockRect> blocks;
    for (int y = 0; y < height; y += block_size) {
        for (int x = 0; x < width; x += block_size) {
            blocks.push_back({x, y, std::min(block_size, width - x), std::min(block_size, height - y)});
        }
    }
    return blocks;
}

double ssd(std::span<const double> current, std::span<const double> candidate) {
    if (current.size() != candidate.size()) {
        throw ContractViolation("ssd over blocks of " + std::to_string(current.size()) + " and " +
                                std::to_string(candidate.size()) + " samples");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < current.size(); ++i) {
        const double d = current[i] - candidate[i];
        sum += d * d;
    }
    return sum;
}

CandidateMapper::CandidateMapper(const SubpelGrid& reference, BlockRect block, const FisheyeCamera& cam,
                                 Method method)
    : reference_(&reference), block_(block), cam_(cam), method_(method) {}

const std::vector<CandidateMapper::PixelProjection>& CandidateMapper::projections(Viewport v) {
    const int vi = viewport_index(v);
    if (cached_[vi]) return cache_[vi];
    auto& out = cache_[vi];
    out.resize(static_cast<std::size_t>(block_.width) * block_.height);
    std::size_t i = 0;
    for (int y = block_.y; y < block_.y + block_.height; ++y) {
        for (int x = block_.x; x < block_.x + block_.width; ++x, ++i) {
            const Vec2 p{static_cast<double>(x), static_cast<double>(y)};
            if (!cam_.in_circle(p)) {
                out[i].state = PixelState::outside_circle;
                continue;
            }
            if (auto pp = project_to_viewport(p, v, cam_)) {
                out[i].plane_point = *pp;
                out[i].state = PixelState::mapped;
            } else {
                out[i].state = PixelState::singular;
                has_singular_[vi] = true;
            }
        }
    }
    cached_[vi] = true;
    return out;
}

bool CandidateMapper::materialize(Viewport v, MotionVector m, std::vector<double>& out) {
    out.resize(static_cast<std::size_t>(block_.width) * block_.height);
    const SubpelGrid& ref = *reference_;

    if (method_ == Method::tmc) {
        if (v != Viewport::front_back) throw ContractViolation("tmc only uses the front_back viewport");
        std::size_t i = 0;
        for (int y = block_.y; y < block_.y + block_.height; ++y) {
            for (int x = block_.x; x < block_.x + block_.width; ++x) out[i++] = ref.sample_integer(x + m.dx, y + m.dy);
        }
        return true;
    }
    if (method_ == Method::ptmc && v != Viewport::front_back) {
        throw ContractViolation("ptmc only uses the front_back viewport");
    }

    const auto& proj = projections(v);
    std::size_t i = 0;
    for (int y = block_.y; y < block_.y + block_.height; ++y) {
        for (int x = block_.x; x < block_.x + block_.width; ++x, ++i) {
            const auto& pp = proj[i];
            switch (pp.state) {
                case PixelState::mapped:
                    out[i] = ref.sample_at(reproject_from_viewport(pp.plane_point, v, m, cam_));
                    break;
                case PixelState::outside_circle:
                case PixelState::singular:
                    // Pixels outside the image circle do not move.
                    out[i] = ref.sample_integer(x, y);
                    break;
            }
        }
    }
    return !has_singular_[viewport_index(v)];
}

CandidateBlock CandidateMapper::materialize(Viewport v, MotionVector m) {
    CandidateBlock c;
    c.valid = materialize(v, m, c.samples);
    return c;
}

CandidateBlock materialize_candidate(const SubpelGrid& reference, BlockRect block, Viewport v, MotionVector m,
                                     const FisheyeCamera& cam, Method method) {
    CandidateMapper mapper(reference, block, cam, method);
    return mapper.materialize(v, m);
}

SearchResult diamond_search(const CostFunction& cost, int search_range) {
    CostTable table(cost, search_range);
    MotionVector best{0, 0};
    double best_cost = table(best);

    for (;;) {
        const MotionVector center = best;
        for (const auto& off : kLargeDiamond) {
            const MotionVector probe = table.clamp({center.dx + off.dx, center.dy + off.dy});
            const double c = table(probe);
            if (c < best_cost) {
                best_cost = c;
                best = probe;
            }
        }
        if (best == center) break;
    }
    const MotionVector center = best;
    for (const auto& off : kSmallDiamond) {
        const MotionVector probe = table.clamp({center.dx + off.dx, center.dy + off.dy});
        const double c = table(probe);
        if (c < best_cost) {
            best_cost = c;
            best = probe;
        }
    }
    return {best, best_cost, table.evaluations()};
}

SearchResult exhaustive_search(const CostFunction& cost, int search_range) {
    SearchResult r{{0, 0}, cost({0, 0}), 1};
    for (int dy = -search_range; dy <= search_range; ++dy) {
        for (int dx = -search_range; dx <= search_range; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const double c = cost({dx, dy});
            ++r.evaluations;
            if (c < r.cost) {
                r.cost = c;
                r.mv = {dx, dy};
            }
        }
    }
    return r;
}

std::vector<double> block_samples(const Frame& frame, BlockRect block) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(block.width) * block.height);
    for (int y = block.y; y < block.y + block.height; ++y) {
        const auto row = frame.row(y);
        for (int x = block.x; x < block.x + block.width; ++x) out.push_back(row[x]);
    }
    return out;
}

BlockEstimate estimate_block(const Frame& current, const SubpelGrid& reference, BlockRect block,
                             const FisheyeCamera& cam, const SearchConfig& config) {
    const std::vector<double> cur = block_samples(current, block);
    CandidateMapper mapper(reference, block, cam, config.method);
    std::vector<double> buffer;

    BlockEstimate best;
    best.block = block;
    best.cost = kInfiniteCost;
    bool first = true;

    const auto search_viewport = [&](Viewport v) {
        const CostFunction cost = [&](MotionVector m) {
            if (!mapper.materialize(v, m, buffer)) return kInfiniteCost;
            return ssd(cur, buffer);
        };
        const SearchResult r = config.strategy == SearchStrategy::diamond
                                   ? diamond_search(cost, config.search_range)
                                   : exhaustive_search(cost, config.search_range);
        if (first || r.cost < best.cost) {
            best.mv = r.mv;
            best.viewport = v;
            best.cost = r.cost;
            first = false;
        }
    };

    if (config.method == Method::va_ptmc) {
        for (Viewport v : kAllViewports) search_viewport(v);
    } else {
        search_viewport(Viewport::front_back);
    }
    return best;
}

MotionField estimate_motion(const Frame& current, const Frame& reference, const FisheyeCamera& cam,
                            const SearchConfig& config, int workers) {
    config.validate();
    if (current.width() != reference.width() || current.height() != reference.height()) {
        throw ContractViolation("current and reference frames differ in size");
    }
    if (current.width() != cam.width() || current.height() != cam.height()) {
        throw ContractViolation("camera image size does not match the frames");
    }

    MotionField field;
    field.width = current.width();
    field.height = current.height();
    field.config = config;
    const auto rects = partition_blocks(field.width, field.height, config.block_size);
    field.blocks.resize(rects.size());

    const SubpelGrid grid(reference);
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < rects.size(); i = next++) {
            field.blocks[i] = estimate_block(current, grid, rects[i], cam, config);
        }
    };

    if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min<int>(workers, static_cast<int>(rects.size()));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return field;
}

double recompute_cost(const Frame& current, const SubpelGrid& reference, const BlockEstimate& estimate,
                      const FisheyeCamera& cam, Method method) {
    const auto cand = materialize_candidate(reference, estimate.block, estimate.viewport, estimate.mv, cam, method);
    if (!cand.valid) return kInfiniteCost;
    return ssd(block_samples(current, estimate.block), cand.samples);
}

Frame compensate_frame(const Frame& reference, const MotionField& field, const FisheyeCamera& cam) {
    if (reference.width() != field.width || reference.height() != field.height) {
        throw ContractViolation("motion field does not match the reference frame size");
    }
    Frame out(reference.width(), reference.height(), reference.bit_depth());
    const SubpelGrid grid(reference);
    std::vector<double> buffer;
    for (const auto& est : field.blocks) {
        CandidateMapper mapper(grid, est.block, cam, field.config.method);
        mapper.materialize(est.viewport, est.mv, buffer);
        std::size_t i = 0;
        for (int y = est.block.y; y < est.block.y + est.block.height; ++y) {
            for (int x = est.block.x; x < est.block.x + est.block.width; ++x) {
                out.set(x, y, static_cast<std::uint16_t>(std::lround(buffer[i++])));
            }
        }
    }
    return out;
}

}  // namespace vamc
