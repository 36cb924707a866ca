#pragma once

// Procedural planar scenes rendered through an equisolid fisheye lens, with
// exact per-pixel knowledge of the plane each ray hits.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vamc/frame.hpp"
#include "vamc/geometry.hpp"

namespace vamc {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

// Camera frame: x right, y down, z forward. The ground lies at +y.
enum class PlaneOrientation : std::uint8_t { ground, ceiling, left_wall, right_wall, front_wall, back_wall };

inline constexpr std::uint8_t kNoPlaneLabel = 255;

std::string_view to_string(PlaneOrientation o);
std::optional<PlaneOrientation> parse_orientation(std::string_view name);
// Unit normal pointing from the camera toward the plane.
Vec3 plane_normal(PlaneOrientation o);

enum class TextureKind { constant, checkerboard, noise };

struct Texture {
    TextureKind kind = TextureKind::noise;
    double scale = 16.0;  // checker square size or base noise cell, in scene units
    std::uint64_t seed = 1;
    double low = 30.0;    // sample levels on an 8-bit scale
    double high = 220.0;
};

// Texture value at plane coordinates (u, v), in [low, high].
double evaluate_texture(const Texture& t, double u, double v);

struct ScenePlane {
    PlaneOrientation orientation = PlaneOrientation::front_wall;
    double distance = 100.0;
    Texture texture;
};

struct Scene {
    std::vector<ScenePlane> planes;  // at most one plane per orientation
};

// Motion between consecutive frames: the camera translation and optional
// extra displacements of individual planes, all in scene units.
struct MotionSpec {
    Vec3 camera_translation;
    std::vector<std::pair<PlaneOrientation, Vec3>> plane_displacements;
};

struct RenderedFrame {
    Frame frame;
    std::vector<std::uint8_t> labels;  // PlaneOrientation per pixel, kNoPlaneLabel outside the circle
};

// Renders the scene after `step` frames of motion. Pixels outside the image
// circle are 0; every other pixel averages 2x2 supersampled rays.
// Throws ContractViolation when the scene is malformed or the motion pushes a
// plane through the camera.
RenderedFrame render_fisheye_frame(const Scene& scene, const FisheyeCamera& cam, const MotionSpec& motion = {},
                                   int step = 0);

struct FramePair {
    Frame reference;
    Frame current;
    std::vector<std::uint8_t> labels;  // planes seen by the current frame
};

FramePair generate_pair(const Scene& scene, const MotionSpec& motion, const FisheyeCamera& cam);

struct SceneConfig {
    Scene scene;
    MotionSpec motion;
};

// JSON scene description, e.g.
//   {"planes": [{"orientation": "ground", "distance": 100,
//                "texture": {"kind": "noise", "scale": 24, "seed": 7, "low": 30, "high": 220},
//                "displacement": [0, 0, 0]}],
//    "camera_translation": [0, 0, 5]}
// Throws ConfigError on malformed input.
SceneConfig parse_scene_config(std::string_view text);

// Box of six noise-textured planes; the camera moves forward along the ground.
SceneConfig ground_translation_scene(double forward_step = 4.0, std::uint64_t seed = 11);

// Single front wall moving laterally by `lateral_step` per frame.
SceneConfig frontal_plane_scene(double distance = 100.0, double lateral_step = 3.0, std::uint64_t seed = 5,
                                double noise_scale = 24.0);

}  // namespace vamc
