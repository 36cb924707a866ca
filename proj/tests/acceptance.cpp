// Acceptance suite: one PASS/FAIL/SKIP line per criterion, nonzero exit on any FAIL.
//
// The dataset criterion runs only when VAMC_DATASET_DIR points at a directory
// whose entries are sequences (image directories or .y4m files).
// VAMC_DATASET_PAIRS limits the pairs per sequence (default 100).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "vamc/errors.hpp"
#include "vamc/image_io.hpp"
#include "vamc/metrics.hpp"
#include "vamc/motion.hpp"
#include "vamc/pipeline.hpp"
#include "vamc/sideinfo.hpp"
#include "vamc/synth.hpp"

using namespace vamc;

namespace {

// Tolerances and thresholds.
constexpr int kRoundTripPixels = 100000;
constexpr double kRoundTripTolerancePx = 1e-6;
constexpr double kRoundTripBudgetSeconds = 5.0;
constexpr int kVipcDirections = 10000;
constexpr double kVipcTolerancePx = 1e-9;
constexpr int kDominanceBlocks = 120;
constexpr int kDominanceRange = 8;
constexpr int kDiamondCropRange = 8;
constexpr double kDiamondEqualFraction = 0.80;
constexpr double kGroundLabelFraction = 0.75;
constexpr double kTextureVarianceThreshold = 100.0;
constexpr double kGroundSelectionFraction = 0.70;
constexpr double kMinGainDb = 1.0;
constexpr double kPartitionTolerance = 1e-12;
constexpr double kRampTolerance = 1e-9;

constexpr int kSceneSize = 512;
constexpr int kScenePairs = 3;

struct Outcome {
    enum Status { pass, fail, skip } status;
    std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {Outcome::fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.status == Outcome::pass ? "PASS" : o.status == Outcome::fail ? "FAIL" : "SKIP";
    if (o.status == Outcome::fail) ++failures;
    std::cout << tag << "  " << name << ": " << o.detail << std::endl;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

FisheyeCamera deployment_camera(int size) { return FisheyeCamera::from_fov(size, size, 185.0 * kPi / 180.0); }

Vec2 random_in_circle(const FisheyeCamera& cam, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = cam.image_circle_radius() * std::sqrt(u(rng));
    const double a = 2.0 * kPi * u(rng);
    const Vec2 c = cam.principal_point();
    return {c.x + r * std::cos(a), c.y + r * std::sin(a)};
}

double variance(const Frame& f, BlockRect b) {
    double s = 0, ss = 0;
    for (int y = b.y; y < b.y + b.height; ++y)
        for (int x = b.x; x < b.x + b.width; ++x) {
            s += f.at(x, y);
            ss += double(f.at(x, y)) * f.at(x, y);
        }
    const double n = double(b.width) * b.height;
    return ss / n - (s / n) * (s / n);
}

double label_fraction(const std::vector<std::uint8_t>& labels, int width, BlockRect b, PlaneOrientation o) {
    int hits = 0;
    for (int y = b.y; y < b.y + b.height; ++y)
        for (int x = b.x; x < b.x + b.width; ++x) hits += labels[static_cast<std::size_t>(y) * width + x] == static_cast<std::uint8_t>(o);
    return double(hits) / (double(b.width) * b.height);
}

// The synthetic ground-plane sequence shared by several criteria.
struct GroundSequence {
    FisheyeCamera cam = deployment_camera(kSceneSize);
    std::vector<Frame> frames;
    std::vector<std::vector<std::uint8_t>> labels;

    GroundSequence() {
        const auto cfg = ground_translation_scene();
        for (int k = 0; k <= kScenePairs; ++k) {
            auto r = render_fisheye_frame(cfg.scene, cam, cfg.motion, k);
            frames.push_back(std::move(r.frame));
            labels.push_back(std::move(r.labels));
        }
    }
};

const GroundSequence& ground_sequence() {
    static const GroundSequence seq;
    return seq;
}

// Motion fields of the ground sequence at B = 64, diamond search, full range.
struct GroundRuns {
    std::vector<MotionField> tmc, va;
    std::vector<double> tmc_psnr, va_psnr;
};

const GroundRuns& ground_runs() {
    static const GroundRuns runs = [] {
        const auto& seq = ground_sequence();
        GroundRuns r;
        for (int k = 0; k < kScenePairs; ++k) {
            for (Method m : {Method::tmc, Method::va_ptmc}) {
                const auto out = process_pair(seq.frames[k], seq.frames[k + 1], seq.cam,
                                              {64, 96, SearchStrategy::diamond, m}, "bzip2", false);
                (m == Method::tmc ? r.tmc : r.va).push_back(out.field);
                (m == Method::tmc ? r.tmc_psnr : r.va_psnr).push_back(out.record.psnr_db);
            }
        }
        return r;
    }();
    return runs;
}

double mean(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / double(v.size());
}

Outcome geometry_round_trip() {
    const auto cam = deployment_camera(1088);
    std::mt19937_64 rng(101);
    std::vector<Vec2> pixels(kRoundTripPixels);
    for (auto& p : pixels) p = random_in_circle(cam, rng);
    double worst = 0.0;
    int singular = 0;
    const auto start = std::chrono::steady_clock::now();
    for (const Vec2 p : pixels) {
        for (Viewport v : kAllViewports) {
            try {
                const Vec2 q = map_coordinates(p, v, {0, 0}, cam).position;
                worst = std::max({worst, std::abs(q.x - p.x), std::abs(q.y - p.y)});
            } catch (const SingularityError&) {
                ++singular;
            }
        }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = worst <= kRoundTripTolerancePx && seconds < kRoundTripBudgetSeconds;
    return {ok ? Outcome::pass : Outcome::fail,
            fmt("max error %.3g px over %d pixels x 3 viewports in %.2f s, %d in the tangent guard (limits %.0e px, "
                "%.0f s)",
                worst, kRoundTripPixels, seconds, singular, kRoundTripTolerancePx, kRoundTripBudgetSeconds)};
}

// Directions behind the viewport camera (virtual plane), for two lenses: the
// 185 degree deployment lens (rejection sampled to its image circle) and a
// full-sphere lens that reaches every virtual-plane direction.
Outcome vipc_exactness() {
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> theta(kPi / 2 + kTangentGuard, 0.99 * kPi);
    std::uniform_real_distribution<double> phi(-kPi, kPi);
    std::uniform_int_distribution<int> mv(-96, 96);
    std::uniform_int_distribution<int> pick(0, 2);

    double worst = 0.0;
    int checked = 0;
    int per_viewport[3] = {0, 0, 0};
    for (const auto& cam : {deployment_camera(1088), FisheyeCamera::from_fov(1088, 1088, 2.0 * kPi)}) {
        int accepted = 0;
        while (accepted < kVipcDirections) {
            const double t = theta(rng);
            if (t <= kPi / 2 + kTangentGuard) continue;
            const Viewport v = kAllViewports[pick(rng)];
            const auto d = rotate_from_viewport(UnitDirection::from_angles(t, phi(rng)), v);
            if (d.theta() > cam.fov() / 2) continue;
            const Vec2 p = sphere_to_fisheye(d, cam);
            if (!cam.in_circle(p)) continue;
            const auto pp = project_to_viewport(p, v, cam);
            if (!pp || pp->plane != ImagePlane::virtual_) continue;
            const MotionVector m{mv(rng), mv(rng)};
            const Vec2 got = map_coordinates(p, v, m, cam).position;
            const Vec2 want = oracle::map_by_plane_intersection(p, v, m, cam.focal_length(), cam.principal_point());
            worst = std::max({worst, std::abs(got.x - want.x), std::abs(got.y - want.y)});
            ++accepted;
            ++per_viewport[static_cast<int>(v)];
        }
        checked += accepted;
    }
    return {worst <= kVipcTolerancePx ? Outcome::pass : Outcome::fail,
            fmt("max deviation %.3g px over %d virtual-plane directions (front %d, bottom/top %d, left/right %d; "
                "limit %.0e px)",
                worst, checked, per_viewport[0], per_viewport[1], per_viewport[2], kVipcTolerancePx)};
}

Outcome zero_motion_bit_exact() {
    const auto& seq = ground_sequence();
    const Frame& ref = seq.frames[0];
    int mismatching = 0, runs = 0;
    for (Method method : {Method::tmc, Method::ptmc, Method::va_ptmc}) {
        for (int b : {16, 64}) {
            // va_ptmc: each uniform viewport, plus a cyclic assignment.
            const int variants = method == Method::va_ptmc ? 4 : 1;
            for (int variant = 0; variant < variants; ++variant) {
                MotionField field;
                field.width = ref.width();
                field.height = ref.height();
                field.config = {b, 96, SearchStrategy::diamond, method};
                int k = 0;
                for (const auto& r : partition_blocks(ref.width(), ref.height(), b)) {
                    BlockEstimate e;
                    e.block = r;
                    if (method == Method::va_ptmc) e.viewport = kAllViewports[variant < 3 ? variant : k++ % 3];
                    field.blocks.push_back(e);
                }
                mismatching += !(compensate_frame(ref, field, seq.cam) == ref);
                ++runs;
            }
        }
    }
    return {mismatching == 0 ? Outcome::pass : Outcome::fail,
            fmt("%d of %d zero-field compensations differ from the reference (tmc, ptmc, va_ptmc; B = 16, 64)",
                mismatching, runs)};
}

Outcome superset_dominance() {
    const auto& seq = ground_sequence();
    const Frame& ref = seq.frames[0];
    const Frame& cur = seq.frames[1];
    const SubpelGrid grid(ref);
    std::mt19937_64 rng(303);
    const int b = 16;
    std::uniform_int_distribution<int> pos(0, kSceneSize / b - 1);

    int tested = 0, violations = 0, strict_ground = 0, strict_total = 0;
    while (tested < kDominanceBlocks) {
        const BlockRect r{pos(rng) * b, pos(rng) * b, b, b};
        if (!seq.cam.in_circle({r.x + b / 2.0, r.y + b / 2.0})) continue;
        const auto p = estimate_block(cur, grid, r, seq.cam, {b, kDominanceRange, SearchStrategy::exhaustive, Method::ptmc});
        const auto v = estimate_block(cur, grid, r, seq.cam, {b, kDominanceRange, SearchStrategy::exhaustive, Method::va_ptmc});
        ++tested;
        if (v.cost > p.cost) ++violations;
        if (v.cost < p.cost) {
            ++strict_total;
            if (label_fraction(seq.labels[1], kSceneSize, r, PlaneOrientation::ground) >= kGroundLabelFraction) {
                ++strict_ground;
            }
        }
    }
    const bool ok = violations == 0 && strict_ground >= 1;
    return {ok ? Outcome::pass : Outcome::fail,
            fmt("%d blocks, %d with va_ptmc SSD above ptmc; strict improvement on %d blocks, %d of them ground",
                tested, violations, strict_total, strict_ground)};
}

Outcome diamond_vs_exhaustive() {
    // Smooth frontal texture translating laterally.
    const auto cfg = frontal_plane_scene(100.0, 4.0, 5, 64.0);
    const auto cam = deployment_camera(kSceneSize);
    const auto pair = generate_pair(cfg.scene, cfg.motion, cam);
    const SubpelGrid grid(pair.reference);

    int crops = 0, below = 0, equal = 0;
    for (int y = 0; y + 64 <= kSceneSize; y += 32) {
        for (int x = 0; x + 64 <= kSceneSize; x += 32) {
            const BlockRect r{x, y, 64, 64};
            bool inside = true;
            for (const Vec2 c : {Vec2{double(x), double(y)}, Vec2{x + 63.0, double(y)}, Vec2{double(x), y + 63.0},
                                 Vec2{x + 63.0, y + 63.0}}) {
                inside = inside && cam.in_circle(c) && fisheye_to_sphere(c, cam).theta() < kPi / 3;
            }
            if (!inside) continue;
            const auto d = estimate_block(pair.current, grid, r, cam, {64, kDiamondCropRange, SearchStrategy::diamond, Method::ptmc});
            const auto e = estimate_block(pair.current, grid, r, cam, {64, kDiamondCropRange, SearchStrategy::exhaustive, Method::ptmc});
            ++crops;
            below += d.cost < e.cost;
            equal += d.cost == e.cost;
        }
    }
    const double frac = crops ? double(equal) / crops : 0.0;
    const bool ok = crops > 0 && below == 0 && frac >= kDiamondEqualFraction;
    return {ok ? Outcome::pass : Outcome::fail,
            fmt("%d crops: diamond below exhaustive on %d, equal on %.1f%% (need %.0f%%)", crops, below, 100 * frac,
                100 * kDiamondEqualFraction)};
}

Outcome ground_viewport_selection() {
    const auto& seq = ground_sequence();
    const auto& runs = ground_runs();
    int eligible = 0, bottom_top = 0;
    for (int k = 0; k < kScenePairs; ++k) {
        for (const auto& e : runs.va[k].blocks) {
            if (label_fraction(seq.labels[k + 1], kSceneSize, e.block, PlaneOrientation::ground) < kGroundLabelFraction) continue;
            if (variance(seq.frames[k + 1], e.block) <= kTextureVarianceThreshold) continue;
            ++eligible;
            bottom_top += e.viewport == Viewport::bottom_top;
        }
    }
    const double frac = eligible ? double(bottom_top) / eligible : 0.0;
    return {eligible > 0 && frac >= kGroundSelectionFraction ? Outcome::pass : Outcome::fail,
            fmt("%d of %d textured ground blocks select bottom_top (%.1f%%, need %.0f%%; B = 64, %d pairs)", bottom_top,
                eligible, 100 * frac, 100 * kGroundSelectionFraction, kScenePairs)};
}

Outcome quality_ordering() {
    const auto& runs = ground_runs();
    const double tmc = mean(runs.tmc_psnr), va = mean(runs.va_psnr);
    return {va - tmc >= kMinGainDb ? Outcome::pass : Outcome::fail,
            fmt("mean masked PSNR tmc %.2f dB, va_ptmc %.2f dB, gain %+.2f dB (need %+.1f dB)", tmc, va, va - tmc,
                kMinGainDb)};
}

Outcome interpolation_contracts() {
    double partition = 0.0;
    for (int k = 0; k < SubpelGrid::kPrecision; ++k) {
        const double t = double(k) / SubpelGrid::kPrecision;
        double s = 0.0;
        for (int i = -1; i <= 2; ++i) s += cubic_kernel(t - i);
        partition = std::max(partition, std::abs(s - 1.0));
    }

    Frame ramp(64, 64);
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) ramp.set(x, y, static_cast<std::uint16_t>(2 * x + y + 5));
    const SubpelGrid rg(ramp);
    double ramp_err = 0.0;
    for (double y = 2; y <= 60; y += 0.125)
        for (double x = 2; x <= 60; x += 0.125) ramp_err = std::max(ramp_err, std::abs(rg.sample_at({x, y}) - (2 * x + y + 5)));

    std::mt19937_64 rng(404);
    const Frame noise = oracle::random_frame(64, 64, rng);
    const SubpelGrid ng(noise);
    int mismatches = 0;
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) mismatches += ng.sample_at({double(x), double(y)}) != noise.at(x, y);

    const bool ok = partition <= kPartitionTolerance && ramp_err <= kRampTolerance && mismatches == 0;
    return {ok ? Outcome::pass : Outcome::fail,
            fmt("partition of unity %.2g (limit %.0e), ramp error %.2g (limit %.0e), %d integer mismatches", partition,
                kPartitionTolerance, ramp_err, kRampTolerance, mismatches)};
}

Outcome side_info_arithmetic() {
    std::mt19937_64 rng(505);
    std::uniform_int_distribution<int> c(-96, 96), v(0, 2);
    MotionField field;
    field.width = field.height = 1088;
    field.config = {16, 96, SearchStrategy::diamond, Method::va_ptmc};
    for (const auto& r : partition_blocks(1088, 1088, 16)) {
        field.blocks.push_back({{c(rng), c(rng)}, static_cast<Viewport>(v(rng)), 0.0, r});
    }
    const auto tmc = pack_side_info(field, Method::tmc);
    const auto va = pack_side_info(field, Method::va_ptmc);
    const auto bz = make_compressor("bzip2");
    bool lossless = true;
    for (const Bytes* raw : {&tmc, &va}) {
        rate_bits_per_pixel(*raw, *bz, field.width * field.height);  // throws on a failed round trip
        lossless = lossless && bz->decompress(bz->compress(*raw)) == *raw;
    }
    const auto back = unpack_side_info(va, field.blocks.size(), Method::va_ptmc);
    for (std::size_t i = 0; i < field.blocks.size(); ++i) {
        lossless = lossless && back.vectors[i] == field.blocks[i].mv && back.viewports[i] == field.blocks[i].viewport;
    }
    const bool ok = tmc.size() == 9248 && va.size() - tmc.size() == 1156 && lossless;
    return {ok ? Outcome::pass : Outcome::fail,
            fmt("%zu vector bytes, %zu viewport bytes (expect 9248, 1156); bzip2 round trip %s", tmc.size(),
                va.size() - tmc.size(), lossless ? "lossless" : "BROKEN")};
}

Outcome dataset_ordering() {
    const char* dir = std::getenv("VAMC_DATASET_DIR");
    if (dir == nullptr || !std::filesystem::is_directory(dir)) {
        return {Outcome::skip, "VAMC_DATASET_DIR not set or not a directory"};
    }
    std::size_t pairs = 100;
    if (const char* n = std::getenv("VAMC_DATASET_PAIRS")) pairs = std::stoul(n);

    std::vector<std::filesystem::path> sequences;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (e.is_directory() || e.path().extension() == ".y4m") sequences.push_back(e.path());
    }
    std::sort(sequences.begin(), sequences.end());
    if (sequences.empty()) return {Outcome::skip, "no sequences found in VAMC_DATASET_DIR"};

    std::ostringstream detail;
    double sum_va = 0, sum_ptmc = 0;
    int va_beats_tmc = 0;
    for (const auto& s : sequences) {
        RunConfig cfg;
        cfg.input = s;
        cfg.methods = {Method::tmc, Method::ptmc, Method::va_ptmc};
        cfg.block_sizes = {16};
        cfg.search_range = 96;
        cfg.strategy = SearchStrategy::diamond;
        cfg.record_runtime = false;
        const auto available = open_frame_source(s)->size();
        cfg.first_frame = 0;
        cfg.last_frame = std::min(pairs, available - 1) - 1;
        const auto result = run_compensate(cfg);
        double psnr[3] = {0, 0, 0};
        for (const auto& r : result.summary) psnr[static_cast<int>(r.method)] = r.mean_psnr_db;
        sum_ptmc += psnr[1];
        sum_va += psnr[2];
        va_beats_tmc += psnr[2] > psnr[0];
        detail << s.filename().string() << " tmc " << psnr[0] << " ptmc " << psnr[1] << " va_ptmc " << psnr[2] << "; ";
    }
    const int n = static_cast<int>(sequences.size());
    const bool ok = sum_va > sum_ptmc && va_beats_tmc == n;
    detail << fmt("va_ptmc > tmc on %d of %d sequences; mean va_ptmc %.2f vs ptmc %.2f dB", va_beats_tmc, n,
                  sum_va / n, sum_ptmc / n);
    return {ok ? Outcome::pass : Outcome::fail, detail.str()};
}

}  // namespace

int main() {
    report("geometry round trip", geometry_round_trip);
    report("virtual image plane exactness", vipc_exactness);
    report("zero-motion bit-exactness", zero_motion_bit_exact);
    report("superset dominance", superset_dominance);
    report("diamond vs exhaustive", diamond_vs_exhaustive);
    report("ground-plane viewport selection", ground_viewport_selection);
    report("synthetic quality ordering", quality_ordering);
    report("interpolation contracts", interpolation_contracts);
    report("side-info arithmetic", side_info_arithmetic);
    report("dataset ordering", dataset_ordering);
    std::cout << (failures == 0 ? "all criteria met" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
