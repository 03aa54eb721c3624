#ifndef REALDYN_NUMROOTS_HPP
#define REALDYN_NUMROOTS_HPP

#include <complex>
#include <vector>

namespace realdyn {

// All roots of sum c[k] x^k (double precision, companion matrix + Newton polish).
// Leading coefficient must be structurally nonzero.
std::vector<std::complex<double>> complex_roots(const std::vector<double>& c);

// Roots accepted as real when |Im| < tol * (1 + |Re|).
std::vector<double> real_roots(const std::vector<double>& c, double tol = 1e-9);

}  // namespace realdyn

#endif
