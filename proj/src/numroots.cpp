#include "realdyn/numroots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace realdyn {

static std::complex<double> horner(const std::vector<double>& c, std::complex<double> x) {
  std::complex<double> r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

static std::complex<double> horner_d(const std::vector<double>& c, std::complex<double> x) {
  std::complex<double> r = 0;
  for (size_t i = c.size(); i-- > 1;) r = r * x + c[i] * static_cast<double>(i);
  return r;
}

std::vector<std::complex<double>> complex_roots(const std::vector<double>& cin) {
  std::vector<double> c = cin;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<std::complex<double>> roots;
  if (n < 1) return roots;
  if (n == 1) {
    roots.push_back(std::complex<double>(-c[0] / c[1], 0));
    return roots;
  }
  if (n == 2) {
    std::complex<double> a = c[2], b = c[1], cc = c[0];
    std::complex<double> disc = std::sqrt(b * b - 4.0 * a * cc);
    // numerically stable pairing
    std::complex<double> q = (std::real(b) >= 0) ? -(b + disc) / 2.0 : -(b - disc) / 2.0;
    if (std::abs(q) > 0) {
      roots.push_back(q / a);
      roots.push_back(cc / q);
    } else {
      roots.push_back(std::complex<double>(0, 0));
      roots.push_back(std::complex<double>(0, 0));
    }
  } else {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) M(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) M(i, n - 1) = -c[i] / c[n];
    Eigen::EigenSolver<Eigen::MatrixXd> es(M, /*computeEigenvectors=*/false);
    for (int i = 0; i < n; ++i)
      roots.push_back(std::complex<double>(es.eigenvalues()[i].real(),
                                           es.eigenvalues()[i].imag()));
  }
  // Newton polish
  for (auto& r : roots) {
    for (int it = 0; it < 3; ++it) {
      std::complex<double> f = horner(c, r), df = horner_d(c, r);
      if (std::abs(df) < 1e-300) break;
      std::complex<double> step = f / df;
      if (!std::isfinite(std::real(step)) || !std::isfinite(std::imag(step))) break;
      if (std::abs(step) > 1.0 + std::abs(r)) break;  // diverging; keep eigenvalue
      r -= step;
    }
  }
  return roots;
}

std::vector<double> real_roots(const std::vector<double>& c, double tol) {
  std::vector<double> out;
  for (const auto& r : complex_roots(c))
    if (std::abs(std::imag(r)) < tol * (1.0 + std::abs(std::real(r))))
      out.push_back(std::real(r));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace realdyn
