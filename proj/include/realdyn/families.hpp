#ifndef REALDYN_FAMILIES_HPP
#define REALDYN_FAMILIES_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "realdyn/blaschke.hpp"
#include "realdyn/entropy.hpp"

namespace realdyn {

RealRationalMap quadratic(const Rat& c);

// monic-normalized Chebyshev: T_d(z + 1/z) = z^d + z^-d, asserted exactly
RealRationalMap chebyshev(int d);
QPoly chebyshev_poly(int d);

// x-coordinate doubling on y^2 = x(x-1)(x-lambda); degree 4, entropy log 2
RealRationalMap lattes_legendre(const Rat& lambda);

RealRationalMap lattes_rigid_sqrt2();  // -(z-1)^2 / (4z)
RealRationalMap lattes_rigid_sqrt3();  // -(1/27) z (z-9)^2 / (z-1)^2

// Normal-form family with completely real Julia set inside [-M', M'];
// p has degree d with alternating signs at u_1 < ... < u_{s-1} < v_1 and
// positive values at every v_j.  Construction certifies its own shift.
struct FullRealJuliaResult {
  RealRationalMap map;
  double shift = 0;   // the subtracted a
  double mprime = 0;  // the certified backward-invariant radius
};
FullRealJuliaResult full_real_julia_family(int d, int s, const QPoly& p,
                                           const std::vector<Rat>& u,
                                           const std::vector<Rat>& v);

// Blaschke product close to z^s: (d+s)/2 zeros at radius delta, (d-s)/2 at 1/delta
BlaschkeProduct perturbed_power_cover(int d, int s, double delta);

struct FamilySpec {
  std::string name;
  std::vector<std::string> param_names;
  std::function<RealRationalMap(const std::vector<double>&)> generator;
  std::optional<double> expected_entropy;
};

struct SweepRow {
  std::vector<double> params;
  ComponentLabel label{};
  EntropyEstimate estimate{};
  std::string status;  // "ok" or the error text
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double min_entropy = 0, max_entropy = 0, median_entropy = 0;
  bool constant = false;
  double tolerance = 0;
};

enum class EstimatorTag { lap, preimage, kneading, automatic };

SweepResult sweep(const FamilySpec& spec, const std::vector<std::vector<double>>& grid,
                  EstimatorTag estimator, double constancy_tol, int depth = 12,
                  const EntropyOptions& opts = {});

// registry used by the CLI: lattes-legendre, quadratic, chebyshev, power-cover
FamilySpec find_family(const std::string& name);

}  // namespace realdyn

#endif
