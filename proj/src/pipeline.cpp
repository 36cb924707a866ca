#include "vamc/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>

#include "vamc/errors.hpp"
#include "vamc/image_io.hpp"
#include "vamc/metrics.hpp"
#include "vamc/sideinfo.hpp"

namespace vamc {

namespace {

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string frame_file_name(const std::string& sequence, Method m, int block_size, std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%05zu", index);
    return sequence + "_" + std::string(to_string(m)) + "_B" + std::to_string(block_size) + "_" + buf + ".png";
}

using FrameLoader = std::function<Frame(std::size_t)>;

RunResult process_sequence(const FrameLoader& load, std::size_t first, std::size_t last, const RunConfig& config) {
    RunResult result;
    std::optional<FisheyeCamera> cam;
    Frame reference = load(first);

    for (std::size_t k = first; k <= last; ++k) {
        Frame current = load(k + 1);
        if (current.width() != reference.width() || current.height() != reference.height()) {
            throw IoError("frame " + std::to_string(k + 1) + " differs in size from frame " + std::to_string(k));
        }
        if (!cam) cam = config.camera.make_camera(reference.width(), reference.height());
        if (cam->width() != current.width() || cam->height() != current.height()) {
            throw IoError("frame " + std::to_string(k + 1) + " differs in size from the first frame");
        }

        for (Method method : config.methods) {
            for (int b : config.block_sizes) {
                SearchConfig search{b, config.search_range, config.strategy, method};
                auto out = process_pair(reference, current, *cam, search, config.compressor, config.record_runtime,
                                        config.workers);
                out.record.sequence = config.sequence;
                out.record.reference_index = k;
                if (!config.output_dir.empty()) {
                    write_gray_image(config.output_dir / frame_file_name(config.sequence, method, b, k),
                                     out.compensated);
                }
                result.pairs.push_back(out.record);
            }
        }
        reference = std::move(current);
    }

    std::map<std::pair<int, int>, SummaryRecord> acc;
    for (const auto& r : result.pairs) {
        auto& s = acc[{static_cast<int>(r.method), r.block_size}];
        s.sequence = r.sequence;
        s.method = r.method;
        s.block_size = r.block_size;
        ++s.pairs;
        s.mean_psnr_db += r.psnr_db;
        s.mean_ssim += r.ssim;
        s.mean_bpp += r.bpp;
    }
    for (auto& [key, s] : acc) {
        s.mean_psnr_db /= static_cast<double>(s.pairs);
        s.mean_ssim /= static_cast<double>(s.pairs);
        s.mean_bpp /= static_cast<double>(s.pairs);
    }
    for (auto& [key, s] : acc) {
        auto tmc = acc.find({static_cast<int>(Method::tmc), s.block_size});
        if (tmc != acc.end()) s.gain_vs_tmc_db = s.mean_psnr_db - tmc->second.mean_psnr_db;
        result.summary.push_back(s);
    }
    return result;
}

}  // namespace

FisheyeCamera CameraOptions::make_camera(int width, int height) const {
    const double fov = fov_degrees * kPi / 180.0;
    if (!focal_length && !principal_point) return FisheyeCamera::from_fov(width, height, fov);
    const double r_max = std::min(width, height) / 2.0;
    const double f = focal_length.value_or(r_max / (2.0 * std::sin(fov / 4.0)));
    const Vec2 c = principal_point.value_or(Vec2{(width - 1) / 2.0, (height - 1) / 2.0});
    return FisheyeCamera(f, c, fov, width, height);
}

void RunConfig::validate() const {
    if (methods.empty()) throw ConfigError("no method selected");
    if (block_sizes.empty()) throw ConfigError("no block size selected");
    for (int b : block_sizes) SearchConfig{b, search_range, strategy, Method::tmc}.validate();
    if (first_frame && last_frame && *first_frame > *last_frame) throw ConfigError("empty frame range");
    make_compressor(compressor);
}

PairOutput process_pair(const Frame& reference, const Frame& current, const FisheyeCamera& cam,
                        const SearchConfig& search, const std::string& compressor, bool record_runtime,
                        int workers) {
    const auto backend = make_compressor(compressor);
    const CircularMask mask(cam);

    const auto start = std::chrono::steady_clock::now();
    MotionField field = estimate_motion(current, reference, cam, search, workers);
    Frame compensated = compensate_frame(reference, field, cam);
    const auto stop = std::chrono::steady_clock::now();

    PairRecord rec;
    rec.method = search.method;
    rec.block_size = search.block_size;
    rec.psnr_db = psnr_masked(compensated, current, mask);
    rec.ssim = ssim_masked(compensated, current, mask);
    rec.bpp = rate_bits_per_pixel(pack_side_info(field, search.method), *backend, current.pixel_count()).bits_per_pixel;
    rec.runtime_ms = record_runtime ? std::chrono::duration<double, std::milli>(stop - start).count() : 0.0;
    return {std::move(compensated), std::move(field), rec};
}

RunResult run_on_frames(const std::vector<Frame>& frames, const RunConfig& config, std::size_t first_index) {
    config.validate();
    if (frames.size() < 2) throw ConfigError("at least two frames are needed");
    const std::size_t first = config.first_frame.value_or(0);
    const std::size_t last = config.last_frame.value_or(frames.size() - 2);
    if (last + 1 >= frames.size() || first > last) throw ConfigError("frame range exceeds the available frames");
    RunConfig cfg = config;
    if (cfg.sequence.empty()) cfg.sequence = "sequence";
    auto result = process_sequence([&](std::size_t i) { return frames[i]; }, first, last, cfg);
    for (auto& r : result.pairs) r.reference_index += first_index;
    return result;
}

RunResult run_compensate(const RunConfig& config) {
    config.validate();
    const auto source = open_frame_source(config.input);
    if (source->size() < 2) throw ConfigError("input provides fewer than two frames");
    const std::size_t first = config.first_frame.value_or(0);
    const std::size_t last = config.last_frame.value_or(source->size() - 2);
    if (last + 1 >= source->size()) {
        throw ConfigError("frame range needs frame " + std::to_string(last + 1) + " but the input has " +
                          std::to_string(source->size()));
    }
    RunConfig cfg = config;
    if (cfg.sequence.empty()) cfg.sequence = config.input.filename().empty()
                                                 ? config.input.parent_path().filename().string()
                                                 : config.input.stem().string();
    if (!cfg.output_dir.empty()) std::filesystem::create_directories(cfg.output_dir);
    return process_sequence([&](std::size_t i) { return source->read(i); }, first, last, cfg);
}

std::vector<RateCurvePoint> rate_curve(const RunResult& result) {
    std::vector<RateCurvePoint> out;
    for (const auto& s : result.summary) out.push_back({s.method, s.block_size, s.mean_psnr_db, s.mean_bpp});
    return out;
}

std::vector<RateCurvePoint> run_rate_curve(const RunConfig& config) { return rate_curve(run_compensate(config)); }

void write_pairs_csv(std::ostream& os, const std::vector<PairRecord>& rows) {
    os << "sequence,reference_frame,method,block_size,psnr_db,ssim,bpp,runtime_ms\n";
    for (const auto& r : rows) {
        os << r.sequence << ',' << r.reference_index << ',' << to_string(r.method) << ',' << r.block_size << ','
           << format_number(r.psnr_db) << ',' << format_number(r.ssim) << ',' << format_number(r.bpp) << ','
           << format_number(r.runtime_ms) << '\n';
    }
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRecord>& rows) {
    os << "sequence,method,block_size,pairs,mean_psnr_db,gain_vs_tmc_db,mean_ssim,mean_bpp\n";
    for (const auto& r : rows) {
        os << r.sequence << ',' << to_string(r.method) << ',' << r.block_size << ',' << r.pairs << ','
           << format_number(r.mean_psnr_db) << ',' << (r.gain_vs_tmc_db ? format_number(*r.gain_vs_tmc_db) : "")
           << ',' << format_number(r.mean_ssim) << ',' << format_number(r.mean_bpp) << '\n';
    }
}

void write_rate_csv(std::ostream& os, const std::vector<RateCurvePoint>& rows) {
    os << "method,block_size,mean_psnr_db,mean_bpp\n";
    for (const auto& r : rows) {
        os << to_string(r.method) << ',' << r.block_size << ',' << format_number(r.mean_psnr_db) << ','
           << format_number(r.mean_bpp) << '\n';
    }
}

std::pair<std::size_t, std::size_t> parse_frame_range(const std::string& text) {
    const auto parse = [&](const std::string& s) -> std::size_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            throw ConfigError("invalid frame range '" + text + "'");
        }
        return std::stoull(s);
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const auto v = parse(text);
        return {v, v};
    }
    const auto a = parse(text.substr(0, dots));
    const auto b = parse(text.substr(dots + 2));
    if (a > b) throw ConfigError("empty frame range '" + text + "'");
    return {a, b};
}

}  // namespace vamc
