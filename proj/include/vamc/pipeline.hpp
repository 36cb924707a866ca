#pragma once

// Batch experiments over consecutive frame pairs: estimation, compensation,
// masked quality metrics, and side-information rates.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vamc/frame.hpp"
#include "vamc/geometry.hpp"
#include "vamc/motion.hpp"

namespace vamc {

struct CameraOptions {
    double fov_degrees = 185.0;
    std::optional<double> focal_length;
    std::optional<Vec2> principal_point;

    // Throws ConfigError.
    FisheyeCamera make_camera(int width, int height) const;
};

struct RunConfig {
    std::filesystem::path input;
    std::string sequence;  // defaults to the input stem
    // Reference frame indices, inclusive; pair k uses frames k and k + 1.
    std::optional<std::size_t> first_frame;
    std::optional<std::size_t> last_frame;
    std::vector<Method> methods{Method::va_ptmc};
    std::vector<int> block_sizes{16};
    int search_range = 96;
    SearchStrategy strategy = SearchStrategy::diamond;
    CameraOptions camera;
    std::filesystem::path output_dir;  // compensated frames are written when set
    std::string compressor = "bzip2";
    std::uint64_t seed = 0;
    int workers = 0;
    bool record_runtime = true;  // false writes runtime_ms = 0 for byte-identical reruns

    // Throws ConfigError.
    void validate() const;
};

struct PairRecord {
    std::string sequence;
    std::size_t reference_index = 0;
    Method method = Method::tmc;
    int block_size = 0;
    double psnr_db = 0.0;
    double ssim = 0.0;
    double bpp = 0.0;
    double runtime_ms = 0.0;
};

struct SummaryRecord {
    std::string sequence;
    Method method = Method::tmc;
    int block_size = 0;
    std::size_t pairs = 0;
    double mean_psnr_db = 0.0;
    std::optional<double> gain_vs_tmc_db;
    double mean_ssim = 0.0;
    double mean_bpp = 0.0;
};

struct RunResult {
    std::vector<PairRecord> pairs;       // ordered by pair, then method, then block size
    std::vector<SummaryRecord> summary;  // ordered by method, then block size
};

struct PairOutput {
    Frame compensated;
    MotionField field;
    PairRecord record;
};

// One estimation/compensation/measurement round on an in-memory pair.
PairOutput process_pair(const Frame& reference, const Frame& current, const FisheyeCamera& cam,
                        const SearchConfig& search, const std::string& compressor, bool record_runtime = true,
                        int workers = 0);

// Runs every (method, block size) combination over in-memory frames, treating
// consecutive frames as (reference, current) pairs.
RunResult run_on_frames(const std::vector<Frame>& frames, const RunConfig& config,
                        std::size_t first_index = 0);

// Reads the configured input and writes compensated frames when an output
// directory is set. Throws ConfigError or IoError.
RunResult run_compensate(const RunConfig& config);

struct RateCurvePoint {
    Method method = Method::tmc;
    int block_size = 0;
    double mean_psnr_db = 0.0;
    double mean_bpp = 0.0;
};

std::vector<RateCurvePoint> rate_curve(const RunResult& result);
std::vector<RateCurvePoint> run_rate_curve(const RunConfig& config);

// CSV writers. Columns:
//   pairs:   sequence,reference_frame,method,block_size,psnr_db,ssim,bpp,runtime_ms
//   summary: sequence,method,block_size,pairs,mean_psnr_db,gain_vs_tmc_db,mean_ssim,mean_bpp
//   rate:    method,block_size,mean_psnr_db,mean_bpp
// Infinite PSNR (identical frames) is written as "inf".
void write_pairs_csv(std::ostream& os, const std::vector<PairRecord>& rows);
void write_summary_csv(std::ostream& os, const std::vector<SummaryRecord>& rows);
void write_rate_csv(std::ostream& os, const std::vector<RateCurvePoint>& rows);

// Parses "A..B" or "A" into an inclusive range. Throws ConfigError.
std::pair<std::size_t, std::size_t> parse_frame_range(const std::string& text);

}  // namespace vamc
