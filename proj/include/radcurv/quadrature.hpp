#pragma once

#include <functional>
#include <vector>

namespace radcurv {

using Integrand = std::function<double(double)>;

// adaptive Simpson on [a,b]; error controlled against max(abs_tol, rel_tol*scale)
// where scale is a coarse estimate of the integral's magnitude. Throws
// quadrature_failure on depth exhaustion or non-finite integrand values.
double integrate(const Integrand& f, double a, double b, double rel_tol = 1e-10,
                 double abs_tol = 0.0);

// same, but splits [a,b] at the given interior break points first (for
// piecewise-smooth integrands with kinks).
double integrate_split(const Integrand& f, double a, double b,
                       std::vector<double> breaks, double rel_tol = 1e-10,
                       double abs_tol = 0.0);

// locate sign changes of `inner` on (a,b): scan n_scan uniform panels, bisect
// each bracketed root to width 1e-10. Returned points are sorted and lie
// strictly inside (a,b).
std::vector<double> find_kinks(const Integrand& inner, double a, double b,
                               int n_scan = 512);

}  // namespace radcurv
