#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace chipopt {

// All coordinates and lengths are millimeters.
inline constexpr double kGeomTolMm = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline bool almost_equal(double a, double b, double tol = kGeomTolMm) {
  return std::abs(a - b) <= tol;
}

inline bool points_equal(const Point& a, const Point& b, double tol = kGeomTolMm) {
  return almost_equal(a.x, b.x, tol) && almost_equal(a.y, b.y, tol);
}

// Axis-aligned rectangle anchored at its lower-left corner.
struct Rect {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double right() const { return x + w; }
  double top() const { return y + h; }
  double area() const { return w * h; }

  // True only for a positive-area intersection; shared edges do not count.
  bool overlaps_interior(const Rect& o) const {
    return x < o.right() && o.x < right() && y < o.top() && o.y < top();
  }

  // Covers the infinitesimal cell whose lower-left corner is p, i.e. the
  // area immediately up-right of p.
  bool covers_up_right(double px, double py) const {
    return x <= px && px < right() && y <= py && py < top();
  }
  // Covers the cell immediately below-right of p.
  bool covers_down_right(double px, double py) const {
    return x <= px && px < right() && y < py && py <= top();
  }
  // Covers the cell immediately up-left of p.
  bool covers_up_left(double px, double py) const {
    return x < px && px <= right() && y <= py && py < top();
  }
  // Covers the cell immediately below-left of p.
  bool covers_down_left(double px, double py) const {
    return x < px && px <= right() && y < py && py <= top();
  }
};

// Counterclockwise quarter turns.
enum class Rotation : std::uint8_t { R0 = 0, R90 = 1, R180 = 2, R270 = 3 };

inline constexpr Rotation kAllRotations[4] = {Rotation::R0, Rotation::R90,
                                              Rotation::R180, Rotation::R270};

inline int quarter_turns(Rotation r) { return static_cast<int>(r); }

inline Rotation compose(Rotation a, Rotation b) {
  return static_cast<Rotation>((quarter_turns(a) + quarter_turns(b)) % 4);
}

// Footprint of a w x h rectangle after rotation.
inline std::pair<double, double> rotated_dims(double w, double h, Rotation r) {
  if (r == Rotation::R90 || r == Rotation::R270) return {h, w};
  return {w, h};
}

// Rotate a point given relative to the lower-left corner of an unrotated
// w x h rectangle; the rotated rectangle is re-anchored so that its own
// lower-left corner sits at the origin again.
inline Point rotate_in_footprint(const Point& p, double w, double h, Rotation r) {
  switch (r) {
    case Rotation::R0:
      return p;
    case Rotation::R90:
      return {h - p.y, p.x};
    case Rotation::R180:
      return {w - p.x, h - p.y};
    case Rotation::R270:
      return {p.y, w - p.x};
  }
  return p;
}

enum class DistanceType { Euclidean, Manhattan };

inline double distance(const Point& a, const Point& b, DistanceType d) {
  double dx = a.x - b.x;
  double dy = a.y - b.y;
  if (d == DistanceType::Manhattan) return std::abs(dx) + std::abs(dy);
  return std::hypot(dx, dy);
}

}  // namespace chipopt
