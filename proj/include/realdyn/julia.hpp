#ifndef REALDYN_JULIA_HPP
#define REALDYN_JULIA_HPP

#include <string>
#include <vector>

#include "realdyn/entropy.hpp"

namespace realdyn {

struct RealJuliaSample {
  std::vector<CirclePoint> points;  // sorted by angle
  int depth = 0;
  CirclePoint seed;        // repelling periodic point used
  double seed_multiplier = 0;
};

RealJuliaSample sample_real_julia(const RealRationalMap& f, int depth,
                                  const EntropyOptions& opts = {});

struct JuliaShape {
  enum class Kind { Cantor, Interval, Circle, Mixed, Unknown } kind = Kind::Unknown;
  double interval_lo = 0, interval_hi = 0;  // angle endpoints of I when relevant
  std::string evidence;
  const char* kind_name() const;
};

// h_R(f) >= log d - tol, via the lap estimator at depth 12
bool is_maximal_entropy(const RealRationalMap& f, double tol,
                        const EntropyOptions& opts = {});

// trichotomy for maps of maximal real entropy
JuliaShape classify_maximal(const RealRationalMap& f, const EntropyOptions& opts = {});

struct StructureReport {
  int interval_components = 0;
  int cantor_points = 0;
  std::vector<std::pair<double, double>> intervals;  // angle spans
  std::string evidence;
};

// heuristic decomposition of the sampled real Julia set (non-certifying)
StructureReport structure_report(const RealRationalMap& f, int depth,
                                 const EntropyOptions& opts = {});

}  // namespace realdyn

#endif
