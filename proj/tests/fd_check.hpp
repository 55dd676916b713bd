#pragma once

// Central finite-difference gradient oracle for tests. Perturbs one scalar
// parameter at a time and compares against the analytic gradient. Kept
// independent of the tape implementation on purpose.

#include <cmath>
#include <functional>
#include <vector>

#include "chronorec/tensor.hpp"

namespace fd {

// f maps a flat parameter vector to a scalar loss
inline std::vector<double> central_gradient(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> params, double h = 1e-5) {
  std::vector<double> grad(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double orig = params[i];
    params[i] = orig + h;
    const double fp = f(params);
    params[i] = orig - h;
    const double fm = f(params);
    params[i] = orig;
    grad[i] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

inline bool close_rel(double a, double b, double tol) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= tol * scale;
}

inline double max_rel_err(const std::vector<double>& a,
                          const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max({1.0, std::fabs(a[i]), std::fabs(b[i])});
    worst = std::max(worst, std::fabs(a[i] - b[i]) / scale);
  }
  return worst;
}

}  // namespace fd
