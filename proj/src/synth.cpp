#include "vamc/synth.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vamc/errors.hpp"

namespace vamc {

namespace {

constexpr std::array<PlaneOrientation, 6> kOrientations = {
    PlaneOrientation::ground,     PlaneOrientation::ceiling,    PlaneOrientation::left_wall,
    PlaneOrientation::right_wall, PlaneOrientation::front_wall, PlaneOrientation::back_wall};

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

std::uint64_t mix(std::uint64_t h) {
    h ^= h >> 30;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebULL;
    h ^= h >> 31;
    return h;
}

// Uniform value in [0, 1) attached to a lattice point.
double lattice_value(std::uint64_t seed, int octave, std::int64_t i, std::int64_t j) {
    std::uint64_t h = mix(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(octave + 1));
    h = mix(h ^ static_cast<std::uint64_t>(i));
    h = mix(h ^ (static_cast<std::uint64_t>(j) * 0x632be59bd9b4e019ULL));
    return static_cast<double>(h >> 11) * (1.0 / 9007199254740992.0);
}

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

double value_noise(std::uint64_t seed, int octave, double u, double v) {
    const double fu = std::floor(u);
    const double fv = std::floor(v);
    const auto i = static_cast<std::int64_t>(fu);
    const auto j = static_cast<std::int64_t>(fv);
    const double tu = smoothstep(u - fu);
    const double tv = smoothstep(v - fv);
    const double a = lattice_value(seed, octave, i, j);
    const double b = lattice_value(seed, octave, i + 1, j);
    const double c = lattice_value(seed, octave, i, j + 1);
    const double d = lattice_value(seed, octave, i + 1, j + 1);
    return (a * (1 - tu) + b * tu) * (1 - tv) + (c * (1 - tu) + d * tu) * tv;
}

double checker_texel(double scale, std::int64_t i, std::int64_t j) {
    const auto cu = static_cast<std::int64_t>(std::floor((i + 0.5) / scale));
    const auto cv = static_cast<std::int64_t>(std::floor((j + 0.5) / scale));
    return ((cu + cv) & 1) != 0 ? 1.0 : 0.0;
}

// In-plane (u, v) axes for each orientation.
std::pair<double, double> plane_coordinates(PlaneOrientation o, const Vec3& p) {
    switch (o) {
        case PlaneOrientation::ground:
        case PlaneOrientation::ceiling: return {p.x, p.z};
        case PlaneOrientation::left_wall:
        case PlaneOrientation::right_wall: return {p.z, p.y};
        case PlaneOrientation::front_wall:
        case PlaneOrientation::back_wall: return {p.x, p.y};
    }
    return {0.0, 0.0};
}

struct PlacedPlane {
    const ScenePlane* plane;
    Vec3 normal;
    Vec3 offset;      // texture displacement
    double distance;  // effective distance along the normal
};

std::vector<PlacedPlane> place_planes(const Scene& scene, const MotionSpec& motion, int step) {
    std::array<bool, 6> seen{};
    std::vector<PlacedPlane> placed;
    for (const auto& plane : scene.planes) {
        const auto idx = static_cast<std::size_t>(plane.orientation);
        if (seen[idx]) throw ContractViolation("scene has two " + std::string(to_string(plane.orientation)) + " planes");
        seen[idx] = true;
        if (!(plane.distance > 0.0)) throw ContractViolation("plane distance must be positive");

        Vec3 offset{-motion.camera_translation.x * step, -motion.camera_translation.y * step,
                    -motion.camera_translation.z * step};
        for (const auto& [o, d] : motion.plane_displacements) {
            if (o != plane.orientation) continue;
            offset.x += d.x * step;
            offset.y += d.y * step;
            offset.z += d.z * step;
        }
        if (!std::isfinite(offset.x) || !std::isfinite(offset.y) || !std::isfinite(offset.z)) {
            throw ContractViolation("non-finite displacement");
        }
        const Vec3 n = plane_normal(plane.orientation);
        const double distance = plane.distance + dot(n, offset);
        if (!(distance > 0.0)) {
            throw ContractViolation("motion moves the " + std::string(to_string(plane.orientation)) +
                                    " plane through the camera");
        }
        placed.push_back({&plane, n, offset, distance});
    }
    return placed;
}

struct Hit {
    double value = 0.0;
    std::uint8_t label = kNoPlaneLabel;
};

Hit trace(const std::vector<PlacedPlane>& planes, const UnitDirection& d) {
    const Vec3 dir{d.x(), d.y(), d.z()};
    Hit best;
    double best_t = std::numeric_limits<double>::infinity();
    const PlacedPlane* hit = nullptr;
    for (const auto& p : planes) {
        const double cos_incidence = dot(p.normal, dir);
        if (cos_incidence <= 0.0) continue;
        const double t = p.distance / cos_incidence;
        if (t < best_t) {
            best_t = t;
            hit = &p;
        }
    }
    if (hit == nullptr) return best;
    const Vec3 point{dir.x * best_t - hit->offset.x, dir.y * best_t - hit->offset.y, dir.z * best_t - hit->offset.z};
    const auto [u, v] = plane_coordinates(hit->plane->orientation, point);
    best.value = evaluate_texture(hit->plane->texture, u, v);
    best.label = static_cast<std::uint8_t>(hit->plane->orientation);
    return best;
}

Vec3 read_vec3(const nlohmann::json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) throw ConfigError(std::string(what) + " must be a 3-element array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

ScenePlane make_plane(PlaneOrientation o, double distance, TextureKind kind, double scale, std::uint64_t seed) {
    ScenePlane p;
    p.orientation = o;
    p.distance = distance;
    p.texture.kind = kind;
    p.texture.scale = scale;
    p.texture.seed = seed;
    return p;
}

}  // namespace

std::string_view to_string(PlaneOrientation o) {
    switch (o) {
        case PlaneOrientation::ground: return "ground";
        case PlaneOrientation::ceiling: return "ceiling";
        case PlaneOrientation::left_wall: return "left_wall";
        case PlaneOrientation::right_wall: return "right_wall";
        case PlaneOrientation::front_wall: return "front_wall";
        case PlaneOrientation::back_wall: return "back_wall";
    }
    return "unknown";
}

std::optional<PlaneOrientation> parse_orientation(std::string_view name) {
    for (auto o : kOrientations) {
        if (to_string(o) == name) return o;
    }
    return std::nullopt;
}

Vec3 plane_normal(PlaneOrientation o) {
    switch (o) {
        case PlaneOrientation::ground: return {0, 1, 0};
        case PlaneOrientation::ceiling: return {0, -1, 0};
        case PlaneOrientation::left_wall: return {-1, 0, 0};
        case PlaneOrientation::right_wall: return {1, 0, 0};
        case PlaneOrientation::front_wall: return {0, 0, 1};
        case PlaneOrientation::back_wall: return {0, 0, -1};
    }
    return {0, 0, 1};
}

double evaluate_texture(const Texture& t, double u, double v) {
    double unit = 0.0;
    switch (t.kind) {
        case TextureKind::constant: unit = 0.0; break;
        case TextureKind::checkerboard: {
            // Bilinear filtering over a one-unit texel lattice softens the square edges.
            const double fu = std::floor(u - 0.5);
            const double fv = std::floor(v - 0.5);
            const auto i = static_cast<std::int64_t>(fu);
            const auto j = static_cast<std::int64_t>(fv);
            const double tu = u - 0.5 - fu;
            const double tv = v - 0.5 - fv;
            unit = (checker_texel(t.scale, i, j) * (1 - tu) + checker_texel(t.scale, i + 1, j) * tu) * (1 - tv) +
                   (checker_texel(t.scale, i, j + 1) * (1 - tu) + checker_texel(t.scale, i + 1, j + 1) * tu) * tv;
            break;
        }
        case TextureKind::noise:
            unit = (2.0 / 3.0) * value_noise(t.seed, 0, u / t.scale, v / t.scale) +
                   (1.0 / 3.0) * value_noise(t.seed, 1, 2.0 * u / t.scale, 2.0 * v / t.scale);
            break;
    }
    return t.low + (t.high - t.low) * unit;
}

RenderedFrame render_fisheye_frame(const Scene& scene, const FisheyeCamera& cam, const MotionSpec& motion, int step) {
    const auto planes = place_planes(scene, motion, step);
    const int w = cam.width();
    const int h = cam.height();
    RenderedFrame out{Frame(w, h, 8), std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h, kNoPlaneLabel)};

    constexpr double kSub[2] = {-0.25, 0.25};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const Vec2 center{static_cast<double>(x), static_cast<double>(y)};
            if (!cam.in_circle(center)) continue;
            out.labels[static_cast<std::size_t>(y) * w + x] = trace(planes, fisheye_to_sphere(center, cam)).label;
            double acc = 0.0;
            for (double sy : kSub) {
                for (double sx : kSub) acc += trace(planes, fisheye_to_sphere({x + sx, y + sy}, cam)).value;
            }
            const double value = std::clamp(std::round(acc / 4.0), 0.0, 255.0);
            out.frame.set(x, y, static_cast<std::uint16_t>(value));
        }
    }
    return out;
}

FramePair generate_pair(const Scene& scene, const MotionSpec& motion, const FisheyeCamera& cam) {
    auto reference = render_fisheye_frame(scene, cam, motion, 0);
    auto current = render_fisheye_frame(scene, cam, motion, 1);
    return {std::move(reference.frame), std::move(current.frame), std::move(current.labels)};
}

SceneConfig parse_scene_config(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("scene description: ") + e.what());
    }
    SceneConfig cfg;
    try {
        if (!j.contains("planes") || !j["planes"].is_array() || j["planes"].empty()) {
            throw ConfigError("scene description needs a non-empty \"planes\" array");
        }
        for (const auto& jp : j["planes"]) {
            ScenePlane p;
            const auto name = jp.at("orientation").get<std::string>();
            const auto o = parse_orientation(name);
            if (!o) throw ConfigError("unknown plane orientation '" + name + "'");
            p.orientation = *o;
            p.distance = jp.at("distance").get<double>();
            if (!(p.distance > 0.0)) throw ConfigError("plane distance must be positive");
            if (jp.contains("texture")) {
                const auto& jt = jp["texture"];
                const auto kind = jt.value("kind", std::string("noise"));
                if (kind == "noise") p.texture.kind = TextureKind::noise;
                else if (kind == "checkerboard") p.texture.kind = TextureKind::checkerboard;
                else if (kind == "constant") p.texture.kind = TextureKind::constant;
                else throw ConfigError("unknown texture kind '" + kind + "'");
                p.texture.scale = jt.value("scale", p.texture.scale);
                p.texture.seed = jt.value("seed", p.texture.seed);
                p.texture.low = jt.value("low", p.texture.low);
                p.texture.high = jt.value("high", p.texture.high);
                if (!(p.texture.scale > 0.0)) throw ConfigError("texture scale must be positive");
            }
            if (jp.contains("displacement")) {
                cfg.motion.plane_displacements.emplace_back(p.orientation, read_vec3(jp["displacement"], "displacement"));
            }
            cfg.scene.planes.push_back(p);
        }
        if (j.contains("camera_translation")) {
            cfg.motion.camera_translation = read_vec3(j["camera_translation"], "camera_translation");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("scene description: ") + e.what());
    }
    return cfg;
}

SceneConfig ground_translation_scene(double forward_step, std::uint64_t seed) {
    SceneConfig cfg;
    cfg.scene.planes = {
        make_plane(PlaneOrientation::ground, 100.0, TextureKind::noise, 24.0, seed),
        make_plane(PlaneOrientation::ceiling, 150.0, TextureKind::noise, 32.0, seed + 1),
        make_plane(PlaneOrientation::left_wall, 180.0, TextureKind::noise, 32.0, seed + 2),
        make_plane(PlaneOrientation::right_wall, 180.0, TextureKind::noise, 32.0, seed + 3),
        make_plane(PlaneOrientation::front_wall, 500.0, TextureKind::noise, 64.0, seed + 4),
        make_plane(PlaneOrientation::back_wall, 500.0, TextureKind::noise, 64.0, seed + 5),
    };
    cfg.motion.camera_translation = {0.0, 0.0, forward_step};
    return cfg;
}

SceneConfig frontal_plane_scene(double distance, double lateral_step, std::uint64_t seed, double noise_scale) {
    SceneConfig cfg;
    cfg.scene.planes = {make_plane(PlaneOrientation::front_wall, distance, TextureKind::noise, noise_scale, seed)};
    cfg.motion.camera_translation = {lateral_step, 0.0, 0.0};
    return cfg;
}

}  // namespace vamc
