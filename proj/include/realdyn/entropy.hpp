#ifndef REALDYN_ENTROPY_HPP
#define REALDYN_ENTROPY_HPP

#include <string>
#include <vector>

#include "realdyn/degree.hpp"
#include "realdyn/realmap.hpp"

namespace realdyn {

struct EntropyEstimate {
  double value = 0;   // nats
  double lower = 0;
  double upper = 0;
  int depth = 0;
  enum class Method { lap, preimage, kneading, covering } method = Method::lap;
  const char* method_name() const;
};

// clamps into [0, log d] and enforces lower <= value <= upper
EntropyEstimate make_estimate(double value, double lower, double upper, int depth,
                              EntropyEstimate::Method m, int d);

struct EntropyOptions {
  long budget = 2'000'000;  // accumulated tree points
  int threads = 1;
};

// Backward tree from a single target; levels hold (point, weight) with weight
// the product of root multiplicities along the chain.
struct PreimageTree {
  CirclePoint root;
  std::vector<std::vector<std::pair<CirclePoint, long>>> levels;
  std::vector<long> counts;  // weighted count per level
};

// real solutions of f(x) = y with multiplicities (cluster size at chart
// tolerance 1e-9), including infinity when the degree balance demands it
std::vector<std::pair<CirclePoint, int>> solve_real_preimages(const RealRationalMap& f,
                                                              const CirclePoint& y);

// circle turning points (orientation folds), cyclically ordered
std::vector<CirclePoint> turning_points(const RealRationalMap& f);

// l_n = #( union_{k<n} f^-k (turning set) ), strict about the point budget
std::vector<long> lap_counts(const RealRationalMap& f, int N,
                             const EntropyOptions& opts = {});

EntropyEstimate lap_entropy(const RealRationalMap& f, int N,
                            const EntropyOptions& opts = {});

PreimageTree build_preimage_tree(const RealRationalMap& f, const CirclePoint& x, int N,
                                 const EntropyOptions& opts, bool* budget_hit = nullptr);

EntropyEstimate preimage_growth_entropy(const RealRationalMap& f, const CirclePoint& x,
                                        int N, const EntropyOptions& opts = {});

// Birkhoff average of the degree-1 lift; preconditions: degree +1, no folds
double rotation_number(const RealRationalMap& f, long N);

// least-squares slope of log(counts) over the last ceil(half) depths
double fit_growth_rate(const std::vector<long>& counts);

}  // namespace realdyn

#endif
