#include "vamc/sideinfo.hpp"

#include <boost/iostreams/copy.hpp>
#include <boost/iostreams/device/array.hpp>
#include <boost/iostreams/device/back_inserter.hpp>
#include <boost/iostreams/filter/bzip2.hpp>
#include <boost/iostreams/filtering_stream.hpp>

#include <algorithm>
#include <exception>

#include "vamc/errors.hpp"

namespace vamc {

namespace {

bool carries_viewports(Method method) { return method == Method::va_ptmc; }

std::uint8_t encode_component(int v) {
    if (v < -128 || v > 127) {
        throw ContractViolation("motion vector component " + std::to_string(v) + " does not fit in 8 bits");
    }
    return static_cast<std::uint8_t>(static_cast<std::int8_t>(v));
}

class IdentityCompressor final : public Compressor {
public:
    std::string_view name() const override { return "identity"; }
    Bytes compress(std::span<const std::uint8_t> raw) const override { return {raw.begin(), raw.end()}; }
    Bytes decompress(std::span<const std::uint8_t> packed) const override { return {packed.begin(), packed.end()}; }
};

class Bzip2Compressor final : public Compressor {
public:
    std::string_view name() const override { return "bzip2"; }

    Bytes compress(std::span<const std::uint8_t> raw) const override {
        return run(raw, boost::iostreams::bzip2_compressor());
    }
    Bytes decompress(std::span<const std::uint8_t> packed) const override {
        return run(packed, boost::iostreams::bzip2_decompressor());
    }

private:
    template <typename Filter>
    static Bytes run(std::span<const std::uint8_t> in, Filter filter) {
        namespace io = boost::iostreams;
        try {
            std::vector<char> out;
            io::filtering_ostream os;
            os.push(filter);
            os.push(io::back_inserter(out));
            io::array_source src(reinterpret_cast<const char*>(in.data()), in.size());
            io::copy(src, os);
            return Bytes(out.begin(), out.end());
        } catch (const std::exception& e) {
            throw CompressorError(std::string("bzip2 backend: ") + e.what());
        }
    }
};

}  // namespace

std::size_t packed_size(std::size_t block_count, Method method) {
    return 2 * block_count + (carries_viewports(method) ? (block_count + 3) / 4 : 0);
}

Bytes pack_side_info(const MotionField& field, Method method) {
    const std::size_t n = field.blocks.size();
    Bytes out(packed_size(n, method), 0);
    for (std::size_t i = 0; i < n; ++i) {
        out[2 * i] = encode_component(field.blocks[i].mv.dx);
        out[2 * i + 1] = encode_component(field.blocks[i].mv.dy);
    }
    if (carries_viewports(method)) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto code = static_cast<std::uint8_t>(field.blocks[i].viewport);
            out[2 * n + i / 4] |= static_cast<std::uint8_t>(code << (2 * (i % 4)));
        }
    }
    return out;
}

UnpackedSideInfo unpack_side_info(std::span<const std::uint8_t> bytes, std::size_t block_count, Method method) {
    if (bytes.size() != packed_size(block_count, method)) {
        throw ContractViolation("side information holds " + std::to_string(bytes.size()) + " bytes, expected " +
                                std::to_string(packed_size(block_count, method)));
    }
    UnpackedSideInfo out;
    out.vectors.reserve(block_count);
    for (std::size_t i = 0; i < block_count; ++i) {
        out.vectors.push_back({static_cast<std::int8_t>(bytes[2 * i]), static_cast<std::int8_t>(bytes[2 * i + 1])});
    }
    if (carries_viewports(method)) {
        out.viewports.reserve(block_count);
        for (std::size_t i = 0; i < block_count; ++i) {
            const int code = (bytes[2 * block_count + i / 4] >> (2 * (i % 4))) & 0x3;
            if (code > 2) throw ContractViolation("invalid viewport code " + std::to_string(code));
            out.viewports.push_back(static_cast<Viewport>(code));
        }
    }
    return out;
}

std::unique_ptr<Compressor> make_compressor(std::string_view name) {
    if (name == "identity") return std::make_unique<IdentityCompressor>();
    if (name == "bzip2") return std::make_unique<Bzip2Compressor>();
    throw ConfigError("unknown compressor '" + std::string(name) + "'");
}

std::vector<std::string> compressor_names() { return {"identity", "bzip2"}; }

RateMeasurement rate_bits_per_pixel(std::span<const std::uint8_t> raw, const Compressor& compressor,
                                    std::size_t pixel_count) {
    if (pixel_count == 0) throw ContractViolation("pixel count must be positive");
    const Bytes packed = compressor.compress(raw);
    const Bytes restored = compressor.decompress(packed);
    if (!std::equal(raw.begin(), raw.end(), restored.begin(), restored.end())) {
        throw CompressorError(std::string(compressor.name()) + " backend failed to reproduce its input");
    }
    return {raw.size(), packed.size(), static_cast<double>(packed.size()) * 8.0 / static_cast<double>(pixel_count)};
}

}  // namespace vamc
