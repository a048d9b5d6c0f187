#pragma once

#include <functional>
#include <vector>

namespace mdev {

// Globally adaptive Gauss-Kronrod 7-15 integration. Splits the interval with
// the largest error estimate until the total satisfies
// |err| <= max(abs_tol, rel_tol * |value|). Throws QuadratureError when the
// interval budget runs out first.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_tol = 1e-14,
                 int max_intervals = 4000);

// Same, but forces subdivision at the given interior breakpoints (e.g. atoms
// of a censoring distribution).
double integrate_with_breakpoints(const std::function<double(double)>& f, double a,
                                  double b, const std::vector<double>& breaks,
                                  double rel_tol = 1e-10, double abs_tol = 1e-14,
                                  int max_intervals = 4000);

// Single non-adaptive G7K15 panel; err receives the error estimate.
double gauss_kronrod_panel(const std::function<double(double)>& f, double a, double b,
                           double& err);

// Location of the maximum of a unimodal f on [a,b] by golden-section search.
double golden_section_max(const std::function<double(double)>& f, double a, double b,
                          double xtol);

}  // namespace mdev
