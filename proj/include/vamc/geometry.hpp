#pragma once

// Coordinate transformations between the equisolid fisheye image, the unit
// sphere, and the three axis-pair perspective viewports.
//
// Conventions: image x points right and y points down. A direction on the
// unit sphere is (sin(theta)cos(phi), sin(theta)sin(phi), cos(theta)) with z
// along the optical axis and phi measured from +x toward +y, normalized to
// (-pi, pi]. All geometry is carried out in double precision.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace vamc {

inline constexpr double kPi = 3.14159265358979323846;

// Half-width of the excluded band around theta = pi/2 for perspective projection.
inline constexpr double kTangentGuard = 1e-6;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

// Integer displacement. Lives in the perspective domain for the projection
// based methods and in the fisheye domain for plain translational matching.
struct MotionVector {
    int dx = 0;
    int dy = 0;

    friend constexpr bool operator==(const MotionVector&, const MotionVector&) = default;
};

enum class Viewport : std::uint8_t { front_back = 0, bottom_top = 1, left_right = 2 };

inline constexpr std::array<Viewport, 3> kAllViewports = {Viewport::front_back, Viewport::bottom_top,
                                                          Viewport::left_right};

std::string_view to_string(Viewport v);
std::optional<Viewport> parse_viewport(std::string_view name);

enum class ImagePlane : std::uint8_t { real, virtual_ };

// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

class UnitDirection {
public:
    // Unit vector from incident angle theta and azimuth phi.
    static UnitDirection from_angles(double theta, double phi);
    // Normalizes (x, y, z); throws ContractViolation for the zero vector.
    static UnitDirection normalized(double x, double y, double z);

    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }

    // Incident angle in [0, pi].
    double theta() const;
    // Azimuth in (-pi, pi]; 0 on the optical axis.
    double phi() const;

    friend bool operator==(const UnitDirection&, const UnitDirection&) = default;

private:
    UnitDirection(double x, double y, double z) : x_(x), y_(y), z_(z) {}

    // Axis transpositions need raw access to stay exact.
    friend UnitDirection rotate_to_viewport(const UnitDirection& d, Viewport v);
    friend UnitDirection rotate_from_viewport(const UnitDirection& d, Viewport v);

    double x_ = 0.0;
    double y_ = 0.0;
    double z_ = 1.0;
};

// Equisolid fisheye camera: r_f = 2 f sin(theta / 2).
class FisheyeCamera {
public:
    // Throws ConfigError when an invariant does not hold.
    FisheyeCamera(double focal_length, Vec2 principal_point, double fov, int width, int height);

    // Derives the focal length so that the image circle spans min(width, height) / 2,
    // with the principal point at the pixel-center midpoint of the frame.
    static FisheyeCamera from_fov(int width, int height, double fov);

    double focal_length() const { return focal_length_; }
    Vec2 principal_point() const { return principal_point_; }
    double fov() const { return fov_; }
    int width() const { return width_; }
    int height() const { return height_; }

    // Radius of the image circle, 2 f sin(fov / 4).
    double image_circle_radius() const;
    bool in_circle(Vec2 p) const;

private:
    double focal_length_;
    Vec2 principal_point_;
    double fov_;
    int width_;
    int height_;
};

struct PlanePoint {
    double x = 0.0;
    double y = 0.0;
    ImagePlane plane = ImagePlane::real;
};

// Inverse equisolid projection. Throws DomainError when |p - c| > 2f.
UnitDirection fisheye_to_sphere(Vec2 p, const FisheyeCamera& cam);

// Equisolid projection, total on the sphere.
Vec2 sphere_to_fisheye(const UnitDirection& d, const FisheyeCamera& cam);

UnitDirection rotate_to_viewport(const UnitDirection& d, Viewport v);
UnitDirection rotate_from_viewport(const UnitDirection& d, Viewport v);

// Perspective projection with the signed tangent; directions behind the
// camera land on the virtual image plane. Returns nullopt inside the tangent guard.
std::optional<PlanePoint> try_sphere_to_perspective(const UnitDirection& d, double focal_length);
// Same, but throws SingularityError inside the tangent guard.
PlanePoint sphere_to_perspective(const UnitDirection& d, double focal_length);

// Inverse perspective projection. For virtual-plane points the incident angle
// is reflected to pi - theta and the azimuth turned by -pi.
UnitDirection perspective_to_sphere(const PlanePoint& p, double focal_length);

// First half of the viewport chain: fisheye pixel to the viewport's image
// plane. nullopt when the rotated direction falls in the tangent guard.
std::optional<PlanePoint> project_to_viewport(Vec2 p, Viewport v, const FisheyeCamera& cam);

// Second half: applies the motion vector on the image plane (inverted on the
// virtual plane) and maps the result back to fisheye pixel coordinates.
Vec2 reproject_from_viewport(const PlanePoint& pp, Viewport v, MotionVector m, const FisheyeCamera& cam);

struct MappedCoordinate {
    Vec2 position;
    ImagePlane plane = ImagePlane::real;
    bool in_circle = true;
};

// Full viewport-adaptive mapping of a current-frame pixel to its motion
// compensated reference position. Throws DomainError when p lies outside the
// image circle and SingularityError when the rotated incident angle hits the guard.
MappedCoordinate map_coordinates(Vec2 p, Viewport v, MotionVector m, const FisheyeCamera& cam);

}  // namespace vamc
