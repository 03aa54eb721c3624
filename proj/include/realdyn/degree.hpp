#ifndef REALDYN_DEGREE_HPP
#define REALDYN_DEGREE_HPP

#include <cstdint>

#include "realdyn/realmap.hpp"

namespace realdyn {

struct ComponentLabel {
  int algebraic_degree = 0;  // d
  int circle_degree = 0;     // s, with |s| <= d and s == d (mod 2)
};

// Exact topological degree of f restricted to the circle: signed count of
// preimages of an exactly-verified regular value.
int topological_degree(const RealRationalMap& f, std::uint64_t seed = 0);

// Trapezoid/midpoint quadrature of the degree integral in the angle chart;
// cross-check oracle only.
double quadrature_degree(const RealRationalMap& f, int n_points);

ComponentLabel component_label(const RealRationalMap& f, std::uint64_t seed = 0);

}  // namespace realdyn

#endif
