#include "vamc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "vamc/errors.hpp"

namespace vamc {

namespace {

std::string describe_pixel(Vec2 p) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << p.x << ", " << p.y << ")";
    return os.str();
}

}  // namespace

std::string_view to_string(Viewport v) {
    switch (v) {
        case Viewport::front_back: return "front_back";
        case Viewport::bottom_top: return "bottom_top";
        case Viewport::left_right: return "left_right";
    }
    return "unknown";
}

std::optional<Viewport> parse_viewport(std::string_view name) {
    for (Viewport v : kAllViewports) {
        if (to_string(v) == name) return v;
    }
    return std::nullopt;
}

double wrap_angle(double a) {
    if (a > -kPi && a <= kPi) return a;
    a = std::remainder(a, 2.0 * kPi);  // [-pi, pi]
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}

UnitDirection UnitDirection::from_angles(double theta, double phi) {
    const double s = std::sin(theta);
    return {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
}

UnitDirection UnitDirection::normalized(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!(n > 0.0) || !std::isfinite(n)) throw ContractViolation("cannot normalize a zero or non-finite vector");
    return {x / n, y / n, z / n};
}

double UnitDirection::theta() const { return std::atan2(std::hypot(x_, y_), z_); }

double UnitDirection::phi() const {
    if (x_ == 0.0 && y_ == 0.0) return 0.0;
    return wrap_angle(std::atan2(y_, x_));
}

FisheyeCamera::FisheyeCamera(double focal_length, Vec2 principal_point, double fov, int width, int height)
    : focal_length_(focal_length), principal_point_(principal_point), fov_(fov), width_(width), height_(height) {
    if (width <= 0 || height <= 0) throw ConfigError("camera image size must be positive");
    if (!(focal_length > 0.0) || !std::isfinite(focal_length)) throw ConfigError("focal length must be positive");
    if (!(fov > 0.0) || fov > 2.0 * kPi) throw ConfigError("field of view must lie in (0, 2*pi]");
    if (principal_point.x < 0.0 || principal_point.x > width - 1 || principal_point.y < 0.0 ||
        principal_point.y > height - 1) {
        throw ConfigError("principal point " + describe_pixel(principal_point) + " lies outside the image");
    }
    const double limit = std::min(width, height) / 2.0 + 0.5;
    if (image_circle_radius() > limit) {
        std::ostringstream os;
        os << "image circle radius " << image_circle_radius() << " exceeds " << limit
           << " for a " << width << "x" << height << " frame";
        throw ConfigError(os.str());
    }
}

FisheyeCamera FisheyeCamera::from_fov(int width, int height, double fov) {
    if (width <= 0 || height <= 0) throw ConfigError("camera image size must be positive");
    if (!(fov > 0.0) || fov > 2.0 * kPi) throw ConfigError("field of view must lie in (0, 2*pi]");
    const double r_max = std::min(width, height) / 2.0;
    const double f = r_max / (2.0 * std::sin(fov / 4.0));
    return FisheyeCamera(f, {(width - 1) / 2.0, (height - 1) / 2.0}, fov, width, height);
}

double FisheyeCamera::image_circle_radius() const { return 2.0 * focal_length_ * std::sin(fov_ / 4.0); }

bool FisheyeCamera::in_circle(Vec2 p) const {
    return std::hypot(p.x - principal_point_.x, p.y - principal_point_.y) <= image_circle_radius();
}

UnitDirection fisheye_to_sphere(Vec2 p, const FisheyeCamera& cam) {
    const Vec2 c = cam.principal_point();
    const double dx = p.x - c.x;
    const double dy = p.y - c.y;
    const double r = std::hypot(dx, dy);
    const double f = cam.focal_length();
    if (r > 2.0 * f) {
        throw DomainError("pixel " + describe_pixel(p) + " lies beyond the equisolid domain r_f <= 2f");
    }
    const double theta = 2.0 * std::asin(r / (2.0 * f));
    const double phi = r > 0.0 ? std::atan2(dy, dx) : 0.0;
    return UnitDirection::from_angles(theta, phi);
}

Vec2 sphere_to_fisheye(const UnitDirection& d, const FisheyeCamera& cam) {
    // r_f = 2 f sin(theta / 2) along the azimuth (cos(phi), sin(phi)) = (x, y) / rho.
    // The half-angle sine is taken from whichever identity is well conditioned.
    const Vec2 c = cam.principal_point();
    const double rho = std::hypot(d.x(), d.y());
    if (rho == 0.0) {
        if (d.z() > 0.0) return c;
        // Antipode: any azimuth is valid; pick phi = 0.
        return {c.x + 2.0 * cam.focal_length(), c.y};
    }
    const double half_sine = d.z() >= 0.0 ? rho / std::sqrt(2.0 * (1.0 + d.z())) : std::sqrt((1.0 - d.z()) / 2.0);
    const double r_f = 2.0 * cam.focal_length() * half_sine;
    return {c.x + r_f * (d.x() / rho), c.y + r_f * (d.y() / rho)};
}

UnitDirection rotate_to_viewport(const UnitDirection& d, Viewport v) {
    switch (v) {
        case Viewport::front_back: return d;
        case Viewport::bottom_top: return {d.x_, -d.z_, d.y_};
        case Viewport::left_right: return {d.z_, d.y_, -d.x_};
    }
    return d;
}

UnitDirection rotate_from_viewport(const UnitDirection& d, Viewport v) {
    switch (v) {
        case Viewport::front_back: return d;
        case Viewport::bottom_top: return {d.x_, d.z_, -d.y_};
        case Viewport::left_right: return {-d.z_, d.y_, d.x_};
    }
    return d;
}

std::optional<PlanePoint> try_sphere_to_perspective(const UnitDirection& d, double focal_length) {
    const double theta = d.theta();
    if (std::abs(theta - kPi / 2.0) < kTangentGuard) return std::nullopt;
    const double phi = d.phi();
    const double r = focal_length * std::tan(theta);  // negative on the virtual plane
    return PlanePoint{r * std::cos(phi), r * std::sin(phi), theta > kPi / 2.0 ? ImagePlane::virtual_ : ImagePlane::real};
}

PlanePoint sphere_to_perspective(const UnitDirection& d, double focal_length) {
    auto p = try_sphere_to_perspective(d, focal_length);
    if (!p) {
        std::ostringstream os;
        os.precision(17);
        os << "incident angle " << d.theta() << " is within " << kTangentGuard << " rad of pi/2";
        throw SingularityError(os.str());
    }
    return *p;
}

UnitDirection perspective_to_sphere(const PlanePoint& p, double focal_length) {
    const double r = std::hypot(p.x, p.y);
    double phi = r > 0.0 ? wrap_angle(std::atan2(p.y, p.x)) : 0.0;
    double theta = std::atan(r / focal_length);
    if (p.plane == ImagePlane::virtual_) {
        theta = kPi - theta;
        phi = wrap_angle(phi - kPi);
    }
    return UnitDirection::from_angles(theta, phi);
}

std::optional<PlanePoint> project_to_viewport(Vec2 p, Viewport v, const FisheyeCamera& cam) {
    return try_sphere_to_perspective(rotate_to_viewport(fisheye_to_sphere(p, cam), v), cam.focal_length());
}

Vec2 reproject_from_viewport(const PlanePoint& pp, Viewport v, MotionVector m, const FisheyeCamera& cam) {
    const double sign = pp.plane == ImagePlane::virtual_ ? -1.0 : 1.0;
    const PlanePoint moved{pp.x + sign * m.dx, pp.y + sign * m.dy, pp.plane};
    return sphere_to_fisheye(rotate_from_viewport(perspective_to_sphere(moved, cam.focal_length()), v), cam);
}

MappedCoordinate map_coordinates(Vec2 p, Viewport v, MotionVector m, const FisheyeCamera& cam) {
    if (!cam.in_circle(p)) throw DomainError("pixel " + describe_pixel(p) + " lies outside the image circle");
    const auto pp = project_to_viewport(p, v, cam);
    if (!pp) {
        throw SingularityError("pixel " + describe_pixel(p) + " maps within the tangent guard of the " +
                               std::string(to_string(v)) + " viewport");
    }
    MappedCoordinate out;
    out.position = reproject_from_viewport(*pp, v, m, cam);
    out.plane = pp->plane;
    out.in_circle = cam.in_circle(out.position);
    return out;
}

}  // namespace vamc
