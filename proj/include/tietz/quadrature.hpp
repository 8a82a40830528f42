#pragma once

#include <functional>

namespace tietz {

/// Adaptive Gauss-Kronrod over [a, b] split into `panels` equal sub-intervals.
double integrate(std::function<double(double)> const& f, double a, double b, int panels = 32,
                 double rel_tol = 1e-13);

} // namespace tietz
