#pragma once

/** \file specfun.hpp
 *
 *  \brief Real-argument log-gamma, Gauss 2F1 and Kummer 1F1.
 *
 *  The hypergeometric kernels sum the power series with a running term ratio.
 *  For 2F1 with 0.5 < z < 1 the z -> 1-z connection formula is applied; all
 *  gamma prefactors are combined in log space before exponentiation.
 *
 *  Each double evaluation also tracks the sum of |contributions|. When that
 *  exceeds the result by more than 1e3 (or c-a-b is within 1e-3 of an
 *  integer), the value is recomputed in 50-digit arithmetic.
 *  Only exact non-positive integers a, b select the terminating polynomial.
 */

namespace tietz {

struct SeriesControl
{
    double rel_tolerance{1e-15};
    int max_terms{100000};

    void validate() const;
};

/// ln Gamma(x) for x > 0. Throws DomainError for x <= 0.
double log_gamma(double x);

/// Magnitude in log space plus a sign; sign == 0 encodes an exact zero.
struct SignedLog
{
    double log_abs{0.0};
    int sign{1};

    double value() const;
};

/// ln|Gamma(x)| and sign(Gamma(x)) for any real x that is not a pole.
SignedLog log_gamma_signed(double x);

/// 1/Gamma(x) in signed log form; zero (sign 0) at the poles of Gamma.
SignedLog log_reciprocal_gamma(double x);

/// True when x lies within tol * max(1, |n|) of n = 0, -1, -2, ...
bool near_nonpositive_integer(double x, double tol);

/// Gauss hypergeometric 2F1(a, b; c; z) for z in [0, 1).
double gauss_2f1(double a, double b, double c, double z, SeriesControl const& ctrl = {});

/// Kummer confluent hypergeometric 1F1(a; b; z).
double kummer_1f1(double a, double b, double z, SeriesControl const& ctrl = {});

namespace detail {

/// Raw power series of 2F1 (no snapping, no transformation). Requires |z| < 1.
double hyp2f1_power_series(double a, double b, double c, double z, SeriesControl const& ctrl);

/// Exact terminating sum for a = -n.
double hyp2f1_terminating(int n, double b, double c, double z);

/// 2F1 on (0.5, 1) through the z -> 1-z connection formula. Requires c-a-b away from integers.
double hyp2f1_connection(double a, double b, double c, double z, SeriesControl const& ctrl);

} // namespace detail

} // namespace tietz
