#pragma once

/** \file oracle.hpp
 *
 *  \brief Finite-difference reference solver for the radial equation
 *
 *      -(hbar^2/2mu) chi'' + V_eff(r) chi = E chi,   chi(r_min) = chi(r_max) = 0.
 *
 *  Numerov shooting on a uniform grid. Each level is isolated by counting the
 *  sign changes of the outward solution (Sturm), then refined by bisection on
 *  the Wronskian of the outward and inward solutions at a matching point.
 *  Only the potential itself is shared with the analytic solvers.
 */

#include "tietz/model.hpp"
#include "tietz/spectra.hpp"

#include <functional>
#include <string>
#include <vector>

namespace tietz {

enum class CentrifugalMode
{
    exact,        ///< hbar^2 l(l+1) / (2 mu r^2)
    approximated, ///< exponential-type replacement with NumerovConfig::approx
    none,
};

struct NumerovConfig
{
    double r_min{0.0};
    double r_max{0.0};
    int n_points{20001};
    double match_fraction{0.5};
    CentrifugalMode centrifugal_mode{CentrifugalMode::exact};
    double e_tol_rel{1e-10};
    CentrifugalApprox approx; ///< used in approximated mode

    /// r_max = r_e + 30/b_h; r_min = 1e-6, or r0 + 1e-6 in case 1. Fits `approx` in case 1.
    static NumerovConfig defaults_for(PotentialParams const& p);
    /// Throws DomainError. n_points >= 101 so deliberately coarse grids stay expressible.
    void validate(PotentialParams const& p) const;
};

/// A level found by the oracle together with the node count of its eigenfunction.
struct OracleLevel
{
    BoundLevel level;
    int nodes{0};
};

struct OracleResult
{
    std::vector<OracleLevel> levels;
    double ceiling{0.0}; ///< levels are searched strictly below this energy

    std::vector<double> energies() const;
};

/// A radial problem on [r_min, r_max] with Dirichlet ends.
struct RadialProblem
{
    std::function<double(double)> potential; ///< full V_eff(r)
    double hbar2_over_2mu{1.0};
    double r_min{0.0};
    double r_max{1.0};
};

struct ShootingOptions
{
    int n_points{20001};
    double match_fraction{0.5};
    double e_tol_rel{1e-10};
};

/// Lowest levels below `ceiling`, at most `max_levels` of them.
OracleResult solve_radial(RadialProblem const& problem, ShootingOptions const& options, double ceiling,
                          int max_levels);

/// Bound levels of the Tietz-Wei problem below the dissociation asymptote.
OracleResult numerov_levels(PotentialParams const& p, int l, NumerovConfig const& cfg, int max_levels);

struct RichardsonReport
{
    double max_shift{0.0}; ///< max relative level shift between n_points and 2 n_points - 1
    bool warning{false};   ///< max_shift > 10 e_tol_rel
    OracleResult coarse;
    OracleResult fine;
};

RichardsonReport richardson_check(PotentialParams const& p, int l, NumerovConfig const& cfg,
                                  int max_levels = 1000);

} // namespace tietz
