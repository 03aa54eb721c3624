#ifndef REALDYN_CIRCLE_HPP
#define REALDYN_CIRCLE_HPP

#include <cmath>
#include <limits>

namespace realdyn {

// Canonical cyclic chart on the real circle R u {oo}:
//   x = tan(pi (t - 1/2)),  t in [0,1),  t = 0 <-> infinity.
// The chart is increasing from -oo to +oo as t runs over (0,1), so the order
// of angles is the cyclic order of the circle through infinity.

inline double angle_of_value(double x) {
  if (std::isinf(x)) return 0.0;
  double t = 0.5 + std::atan(x) / M_PI;
  // finite values stay strictly inside (0,1): rounding of atan at huge |x|
  // must not collapse them onto the angle of infinity
  if (t >= 1.0) t = std::nextafter(1.0, 0.0);
  if (t <= 0.0) t = std::nextafter(0.0, 1.0);
  return t;
}

inline double value_of_angle(double t) {
  if (t == 0.0) return std::numeric_limits<double>::infinity();
  return std::tan(M_PI * (t - 0.5));
}

// cyclic distance between two angles in [0,1)
inline double chart_dist(double t1, double t2) {
  double d = std::fabs(t1 - t2);
  return d <= 0.5 ? d : 1.0 - d;
}

struct CirclePoint {
  double x = 0.0;        // finite value; meaningless when infinite
  bool infinite = false;
  double angle = 0.5;    // t in [0,1)

  CirclePoint() = default;

  static CirclePoint from_value(double v) {
    CirclePoint p;
    if (std::isinf(v) || std::isnan(v)) {
      p.infinite = true;
      p.angle = 0.0;
    } else {
      p.x = v;
      p.angle = angle_of_value(v);
    }
    return p;
  }

  static CirclePoint infinity() {
    CirclePoint p;
    p.infinite = true;
    p.angle = 0.0;
    return p;
  }

  static CirclePoint from_angle(double t) {
    t -= std::floor(t);
    CirclePoint p;
    if (t == 0.0) return infinity();
    p.angle = t;
    p.x = value_of_angle(t);
    return p;
  }

  bool operator<(const CirclePoint& o) const { return angle < o.angle; }
};

inline double chart_dist(const CirclePoint& a, const CirclePoint& b) {
  return chart_dist(a.angle, b.angle);
}

}  // namespace realdyn

#endif
