#ifndef REALDYN_KNEADING_HPP
#define REALDYN_KNEADING_HPP

#include <optional>
#include <vector>

#include "realdyn/entropy.hpp"
#include "realdyn/realmap.hpp"

namespace realdyn {

// signed lap address: tau * I_lap with lap in 1..l and tau = +-1
struct Symbol {
  int lap = 0;
  int tau = +1;
  bool operator==(const Symbol& o) const { return lap == o.lap && tau == o.tau; }
};

struct EventuallyPeriodicSeq {
  std::vector<Symbol> preperiod;
  std::vector<Symbol> period;  // primitive, non-empty
};

// integer-coefficient rational function of t, exact arithmetic
struct RatFun {
  ZPoly num, den;
  RatFun() : den(ZPoly::constant(1)) {}
  RatFun(ZPoly n, ZPoly d) : num(std::move(n)), den(std::move(d)) {}
  bool equals(const RatFun& o) const { return num * o.den == o.num * den; }
  RatFun reduced() const;
};

struct KneadingOptions {
  long max_iter = 100000;  // orbit budget for recurrence detection
  int period_cap = 1000;
  int max_symbols = 20000;  // cap on preperiod + period actually used
};

struct KneadingInvariant {
  RatFun D;                  // the kneading determinant, reduced
  bool has_root = false;
  Rat root_lo, root_hi;      // bracket of the smallest root in (0,1)
  double entropy = 0;        // -log(root), or 0 if no root
  std::vector<int> shapes;   // lap orientations of the interval lift
  ZPoly certificate;         // exp(entropy) is a root of this integer polynomial
  int laps = 0;
  MobiusReal chart;          // the interval lift is chart . f . chart^-1
  int symbol_span = 0;       // longest preperiod + period seen
};

// Continuous piecewise-monotone lift of the circle map to an interval: the
// circle is cut at an exact non-turning point chi with f^-1(chi) within {chi}
// (or chi off the image arc).  All dynamics stays in the circle chart; the
// lift coordinate of a point is its angle measured forward from the cut.
struct IntervalLift {
  RealRationalMap f;            // the circle map itself
  MobiusReal chart;             // x -> 1/(x - chi), or identity for chi = oo
  bool cut_at_infinity = false;
  double cut_angle = 0;         // angle of chi
  std::vector<double> turning;  // lift coordinates in (0,1), increasing
  std::vector<CirclePoint> turning_points;  // same points on the circle
  std::vector<int> eps;         // orientations of the turning.size()+1 laps
};

std::optional<IntervalLift> make_interval_lift(const RealRationalMap& f);

// one-sided itinerary of a turning point of the lift; side = +1 or -1
EventuallyPeriodicSeq kneading_coordinates(const IntervalLift& lift, int turning_index,
                                           int side, const KneadingOptions& opts = {});
// convenience overload: c located on the circle
EventuallyPeriodicSeq kneading_coordinates(const RealRationalMap& f, const CirclePoint& c,
                                           int side, const KneadingOptions& opts = {});

KneadingInvariant kneading_determinant(const RealRationalMap& f,
                                       const KneadingOptions& opts = {});

EntropyEstimate algebraic_entropy(const RealRationalMap& f,
                                  const KneadingOptions& opts = {});
// like algebraic_entropy but also hands back the invariant (no root data for coverings)
std::pair<EntropyEstimate, std::optional<KneadingInvariant>> algebraic_entropy_full(
    const RealRationalMap& f, const KneadingOptions& opts = {});

// exact equality of the two isolated smallest roots as algebraic numbers
bool same_algebraic_root(const KneadingInvariant& a, const KneadingInvariant& b);

}  // namespace realdyn

#endif
