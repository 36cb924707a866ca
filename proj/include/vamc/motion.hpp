#pragma once

// Block-based motion estimation and compensation: plain translational
// matching (tmc), projection-based matching in the front perspective
// viewport (ptmc), and viewport-adaptive projection-based matching over all
// three axis-pair viewports (va_ptmc).

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "vamc/frame.hpp"
#include "vamc/geometry.hpp"
#include "vamc/sampling.hpp"

namespace vamc {

enum class Method { tmc, ptmc, va_ptmc };
enum class SearchStrategy { diamond, exhaustive };

std::string_view to_string(Method m);
std::string_view to_string(SearchStrategy s);
std::optional<Method> parse_method(std::string_view name);
std::optional<SearchStrategy> parse_strategy(std::string_view name);

struct SearchConfig {
    int block_size = 16;
    int search_range = 96;
    SearchStrategy strategy = SearchStrategy::diamond;
    Method method = Method::va_ptmc;

    // Throws ConfigError.
    void validate() const;
};

struct BlockEstimate {
    MotionVector mv;
    Viewport viewport = Viewport::front_back;
    double cost = 0.0;
    BlockRect block;
};

struct MotionField {
    int width = 0;
    int height = 0;
    SearchConfig config;
    std::vector<BlockEstimate> blocks;  // raster block order

    int blocks_x() const;
    int blocks_y() const;
};

// Raster-order tiling; edge blocks are cropped to the frame.
std::vector<BlockRect> partition_blocks(int width, int height, int block_size);

// Sum of squared differences. Throws ContractViolation on a size mismatch.
double ssd(std::span<const double> current, std::span<const double> candidate);

struct CandidateBlock {
    std::vector<double> samples;  // row-major over the block, unrounded
    // False when a pixel hit the tangent guard; such pixels carry the
    // co-located reference sample and the candidate must not win a search.
    bool valid = true;
};

// Maps the pixels of one block into the reference frame for any (viewport,
// motion vector) candidate. Per-viewport image-plane coordinates are cached,
// so repeated candidates only pay for the back projection.
class CandidateMapper {
public:
    CandidateMapper(const SubpelGrid& reference, BlockRect block, const FisheyeCamera& cam, Method method);

    const BlockRect& block() const { return block_; }

    // Fills out (resized to the block area). Returns false for an invalid candidate.
    bool materialize(Viewport v, MotionVector m, std::vector<double>& out);
    CandidateBlock materialize(Viewport v, MotionVector m);

private:
    enum class PixelState : unsigned char { mapped, outside_circle, singular };
    struct PixelProjection {
        PlanePoint plane_point;
        PixelState state = PixelState::mapped;
    };

    const std::vector<PixelProjection>& projections(Viewport v);

    const SubpelGrid* reference_;
    BlockRect block_;
    FisheyeCamera cam_;
    Method method_;
    std::array<std::vector<PixelProjection>, 3> cache_;
    std::array<bool, 3> cached_{};
    std::array<bool, 3> has_singular_{};
};

CandidateBlock materialize_candidate(const SubpelGrid& reference, BlockRect block, Viewport v, MotionVector m,
                                     const FisheyeCamera& cam, Method method);

// Cost of an integer motion vector; +infinity marks an unusable candidate.
using CostFunction = std::function<double(MotionVector)>;

struct SearchResult {
    MotionVector mv;
    double cost = 0.0;
    int evaluations = 0;
};

// Two-pattern diamond search starting at (0, 0): the nine-point large diamond
// is re-centred on the best point until the centre wins, then the five-point
// small diamond refines. Probes are clamped to +-search_range, each vector is
// evaluated at most once, and ties keep the earlier probe.
SearchResult diamond_search(const CostFunction& cost, int search_range);

// Every vector with |dx|, |dy| <= search_range; (0, 0) first, then raster order.
SearchResult exhaustive_search(const CostFunction& cost, int search_range);

std::vector<double> block_samples(const Frame& frame, BlockRect block);

BlockEstimate estimate_block(const Frame& current, const SubpelGrid& reference, BlockRect block,
                             const FisheyeCamera& cam, const SearchConfig& config);

// Estimates every block. Results are keyed by block index, so the field does
// not depend on the worker count. workers <= 0 uses the hardware concurrency.
MotionField estimate_motion(const Frame& current, const Frame& reference, const FisheyeCamera& cam,
                            const SearchConfig& config, int workers = 0);

// SSD of the block's stored (mv, viewport) candidate against the current frame.
double recompute_cost(const Frame& current, const SubpelGrid& reference, const BlockEstimate& estimate,
                      const FisheyeCamera& cam, Method method);

// Assembles the motion compensated frame from the stored candidates, rounding
// interpolated samples to the nearest integer.
Frame compensate_frame(const Frame& reference, const MotionField& field, const FisheyeCamera& cam);

}  // namespace vamc
