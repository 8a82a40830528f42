#include "tietz/quadrature.hpp"

#include "tietz/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace tietz {

double integrate(std::function<double(double)> const& f, double a, double b, int panels, double rel_tol)
{
    if (!(b > a) || panels < 1) {
        throw DomainError("integrate: need a < b and at least one panel");
    }
    using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
    double const width = (b - a) / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        double const lo = a + i * width;
        double const hi = i + 1 == panels ? b : lo + width;
        total += Rule::integrate(f, lo, hi, 15, rel_tol);
    }
    if (!std::isfinite(total)) {
        throw ConvergenceError("integrate: non-finite result");
    }
    return total;
}

} // namespace tietz
