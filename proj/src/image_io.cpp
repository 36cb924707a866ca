#include "vamc/image_io.hpp"

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "vamc/errors.hpp"

namespace vamc {

namespace fs = std::filesystem;

namespace {

const std::set<std::string> kImageExtensions = {".png", ".pgm", ".ppm", ".pnm", ".bmp", ".tif", ".tiff", ".jpg", ".jpeg"};

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

class DirectorySource final : public FrameSource {
public:
    explicit DirectorySource(const fs::path& dir) {
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.is_regular_file() && kImageExtensions.count(lower(entry.path().extension().string()))) {
                files_.push_back(entry.path());
            }
        }
        std::sort(files_.begin(), files_.end());
        if (files_.empty()) throw IoError("no images found in " + dir.string());
    }

    std::size_t size() const override { return files_.size(); }
    Frame read(std::size_t index) const override { return read_luma_image(files_.at(index)); }
    std::string describe(std::size_t index) const override { return files_.at(index).string(); }

private:
    std::vector<fs::path> files_;
};

// YUV4MPEG2: a text header line, then per frame a "FRAME..." line and the planes.
class Y4mSource final : public FrameSource {
public:
    explicit Y4mSource(const fs::path& path) : path_(path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open " + path.string());
        std::string header;
        std::getline(in, header);
        std::istringstream hs(header);
        std::string token;
        hs >> token;
        if (token != "YUV4MPEG2") throw IoError(path.string() + " is not a YUV4MPEG2 file");
        std::string chroma = "420";
        while (hs >> token) {
            if (token.empty()) continue;
            switch (token[0]) {
                case 'W': width_ = std::stoi(token.substr(1)); break;
                case 'H': height_ = std::stoi(token.substr(1)); break;
                case 'C': chroma = token.substr(1); break;
                default: break;
            }
        }
        if (width_ <= 0 || height_ <= 0) throw IoError(path.string() + ": missing frame geometry in header");
        const std::size_t luma = static_cast<std::size_t>(width_) * height_;
        const std::size_t cw = (width_ + 1) / 2;
        const std::size_t ch = (height_ + 1) / 2;
        if (chroma.rfind("420", 0) == 0) chroma_bytes_ = 2 * cw * ch;
        else if (chroma.rfind("422", 0) == 0) chroma_bytes_ = 2 * cw * height_;
        else if (chroma.rfind("444", 0) == 0 && chroma.find('p') == std::string::npos) chroma_bytes_ = 2 * luma;
        else if (chroma == "mono") chroma_bytes_ = 0;
        else throw IoError(path.string() + ": unsupported colour space C" + chroma);

        const auto file_size = static_cast<std::streamoff>(fs::file_size(path));
        const auto frame_bytes = static_cast<std::streamoff>(luma + chroma_bytes_);
        for (;;) {
            std::string line;
            if (!std::getline(in, line)) break;
            if (line.rfind("FRAME", 0) != 0) throw IoError(path.string() + ": malformed frame marker");
            const auto offset = static_cast<std::streamoff>(in.tellg());
            if (offset + frame_bytes > file_size) {
                throw IoError(path.string() + ": truncated frame " + std::to_string(offsets_.size()));
            }
            offsets_.push_back(offset);
            in.seekg(offset + frame_bytes);
        }
        if (offsets_.empty()) throw IoError(path.string() + " contains no frames");
    }

    std::size_t size() const override { return offsets_.size(); }

    Frame read(std::size_t index) const override {
        std::ifstream in(path_, std::ios::binary);
        in.seekg(offsets_.at(index));
        std::vector<char> buf(static_cast<std::size_t>(width_) * height_);
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        if (!in) throw IoError("cannot read " + describe(index));
        std::vector<std::uint16_t> samples(buf.size());
        std::transform(buf.begin(), buf.end(), samples.begin(), [](char c) { return static_cast<unsigned char>(c); });
        return Frame(width_, height_, 8, std::move(samples));
    }

    std::string describe(std::size_t index) const override {
        return path_.string() + " frame " + std::to_string(index);
    }

private:
    fs::path path_;
    int width_ = 0;
    int height_ = 0;
    std::size_t chroma_bytes_ = 0;
    std::vector<std::streamoff> offsets_;
};

}  // namespace

Frame read_luma_image(const fs::path& path) {
    cv::Mat img = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
    if (img.empty()) throw IoError("cannot decode image " + path.string());
    if (img.depth() != CV_8U) throw IoError(path.string() + ": only 8-bit images are supported");
    cv::Mat gray;
    switch (img.channels()) {
        case 1: gray = img; break;
        case 3: cv::cvtColor(img, gray, cv::COLOR_BGR2GRAY); break;
        case 4: cv::cvtColor(img, gray, cv::COLOR_BGRA2GRAY); break;
        default: throw IoError(path.string() + ": unsupported channel count");
    }
    std::vector<std::uint16_t> samples(static_cast<std::size_t>(gray.cols) * gray.rows);
    for (int y = 0; y < gray.rows; ++y) {
        const auto* row = gray.ptr<std::uint8_t>(y);
        std::copy(row, row + gray.cols, samples.begin() + static_cast<std::ptrdiff_t>(y) * gray.cols);
    }
    return Frame(gray.cols, gray.rows, 8, std::move(samples));
}

void write_gray_image(const fs::path& path, const Frame& frame) {
    if (frame.bit_depth() != 8) throw ContractViolation("only 8-bit frames can be written");
    cv::Mat img(frame.height(), frame.width(), CV_8UC1);
    for (int y = 0; y < frame.height(); ++y) {
        const auto row = frame.row(y);
        std::transform(row.begin(), row.end(), img.ptr<std::uint8_t>(y), [](std::uint16_t v) {
            return static_cast<std::uint8_t>(v);
        });
    }
    if (!cv::imwrite(path.string(), img)) throw IoError("cannot write " + path.string());
}

void write_rgb_image(const fs::path& path, const RgbImage& image) {
    cv::Mat img(image.height, image.width, CV_8UC3);
    for (int y = 0; y < image.height; ++y) {
        auto* dst = img.ptr<std::uint8_t>(y);
        for (int x = 0; x < image.width; ++x) {
            const auto* p = image.pixel(x, y);
            dst[3 * x + 0] = p[2];
            dst[3 * x + 1] = p[1];
            dst[3 * x + 2] = p[0];
        }
    }
    if (!cv::imwrite(path.string(), img)) throw IoError("cannot write " + path.string());
}

std::unique_ptr<FrameSource> open_frame_source(const fs::path& path) {
    std::error_code ec;
    if (fs::is_directory(path, ec)) return std::make_unique<DirectorySource>(path);
    if (!fs::exists(path, ec)) throw IoError("input " + path.string() + " does not exist");
    if (lower(path.extension().string()) == ".y4m") return std::make_unique<Y4mSource>(path);
    throw IoError("unsupported input " + path.string() + " (expected an image directory or a .y4m file)");
}

}  // namespace vamc
