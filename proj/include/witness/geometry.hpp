#ifndef WITNESS_GEOMETRY_HPP
#define WITNESS_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <numbers>

namespace witness {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend bool operator==(const Point&, const Point&) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kGeomTolerance = 1e-9;

/// Angles are measured counterclockwise as seen on screen, starting at
/// twelve o'clock. Canvas y grows downward.
inline Point polar_point(Point center, double radius, double angle) {
    return {center.x - radius * std::sin(angle), center.y - radius * std::cos(angle)};
}

inline double normalize_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0) a += kTwoPi;
    return a;
}

/// Counterclockwise sweep from `from` to `to`, in [0, 2pi).
inline double ccw_sweep(double from, double to) { return normalize_angle(to - from); }

/// Angular interval starting at `start` and sweeping `sweep` radians
/// (positive = counterclockwise, negative = clockwise).
struct AngularSpan {
    double start = 0.0;
    double sweep = 0.0;

    /// Open containment with tolerance: endpoints are excluded.
    bool strictly_contains(double angle, double tol = kGeomTolerance) const {
        double off = sweep >= 0 ? ccw_sweep(start, angle) : ccw_sweep(angle, start);
        double len = std::abs(sweep);
        return off > tol && off < len - tol;
    }

    /// Closed containment used for orbit-sharing conflicts.
    bool contains_closed(double angle, double tol = kGeomTolerance) const {
        double off = sweep >= 0 ? ccw_sweep(start, angle) : ccw_sweep(angle, start);
        double len = std::abs(sweep);
        return off <= len + tol || off >= kTwoPi - tol;
    }

    double end() const { return start + sweep; }
};

/// Closed angular intervals intersect (shared points included).
inline bool spans_overlap(const AngularSpan& a, const AngularSpan& b) {
    return a.contains_closed(b.start) || a.contains_closed(b.end()) || b.contains_closed(a.start) ||
           b.contains_closed(a.end());
}

enum class IntersectionKind { None, Cross, Touch, Overlap };

struct Intersection {
    IntersectionKind kind = IntersectionKind::None;
    Point at;
};

/// Segment/segment test. `Cross` is a proper interior crossing; `Touch` means
/// an endpoint lies on the other segment within tolerance; `Overlap` is a
/// collinear overlap of positive length.
inline Intersection segment_intersection(Point p1, Point p2, Point q1, Point q2, double tol = kGeomTolerance) {
    const Point r = p2 - p1, s = q2 - q1;
    const double lr = norm(r), ls = norm(s);
    if (lr == 0.0 || ls == 0.0) return {};
    // Signed distances of each endpoint from the other segment's line.
    const double d1 = cross(r, q1 - p1) / lr, d2 = cross(r, q2 - p1) / lr;
    const double d3 = cross(s, p1 - q1) / ls, d4 = cross(s, p2 - q1) / ls;

    if (std::abs(d1) <= tol && std::abs(d2) <= tol) {
        double t0 = dot(q1 - p1, r) / lr, t1 = dot(q2 - p1, r) / lr;
        if (t0 > t1) std::swap(t0, t1);
        double lo = std::max(0.0, t0), hi = std::min(lr, t1);
        if (hi < lo - tol) return {};
        if (hi - lo <= tol) return {IntersectionKind::Touch, p1 + (lo / lr) * r};
        return {IntersectionKind::Overlap, p1 + (lo / lr) * r};
    }
    if ((d1 > tol && d2 > tol) || (d1 < -tol && d2 < -tol)) return {};
    if ((d3 > tol && d4 > tol) || (d3 < -tol && d4 < -tol)) return {};

    const double denom = cross(r, s);
    Point at;
    if (std::abs(denom) > 0.0) {
        double t = std::clamp(cross(q1 - p1, s) / denom, 0.0, 1.0);
        at = p1 + t * r;
    } else {
        at = std::abs(d1) <= tol ? q1 : q2;
    }
    bool touch = std::abs(d1) <= tol || std::abs(d2) <= tol || std::abs(d3) <= tol || std::abs(d4) <= tol;
    return {touch ? IntersectionKind::Touch : IntersectionKind::Cross, at};
}

}  // namespace witness

#endif
