#pragma once

/** \file wavefn.hpp
 *
 *  \brief Bound-state radial wave functions chi(r) for every regime.
 *
 *  Case 1 carries its closed-form normalization factor; cases 2, 3 and Morse
 *  are normalized by quadrature over the support of chi. The global sign is
 *  fixed so that chi > 0 just inside the left end of the domain.
 */

#include "tietz/model.hpp"
#include "tietz/spectra.hpp"

namespace tietz {

struct WavefunctionSpec
{
    Regime regime;
    BoundLevel level;
    PotentialParams params;
    CentrifugalApprox approx; ///< case 1 with l > 0 only
    double norm_constant{1.0};
    int sign{1};
};

/// Builds the normalized wave function of `level`. Throws DomainError when the
/// energy does not satisfy the regime's quantization condition.
WavefunctionSpec make_wavefunction(PotentialParams const& p, BoundLevel const& level,
                                   CentrifugalApprox const& approx = {});

/// Dispatches on the regime.
double evaluate(WavefunctionSpec const& spec, double r);

double case1_wavefunction(WavefunctionSpec const& spec, double r);
double case2_wavefunction(WavefunctionSpec const& spec, double r);
double case3_wavefunction(WavefunctionSpec const& spec, double r);
double morse_wavefunction(WavefunctionSpec const& spec, double r);

/// Closed-form case-1 normalization factor N_{n_r,l}, gamma ratios in log space.
double case1_analytic_norm(PotentialParams const& p, int l, int n_r, CentrifugalApprox const& approx = {});

/// 1 / sqrt(integral of the unnormalized chi^2), independent of any closed form.
double quadrature_norm(WavefunctionSpec const& spec);

/// Radial interval outside of which |chi| < rel_amplitude * peak.
struct Support
{
    double lo{0.0};
    double hi{0.0};
    double peak_r{0.0};
    double peak{0.0}; ///< max |chi| (normalized)
};

Support support(WavefunctionSpec const& spec, double rel_amplitude = 1e-7);

/// Integral of chi_a chi_b over the common domain. Throws RegimeError for mixed problems.
double overlap(WavefunctionSpec const& a, WavefunctionSpec const& b);

/// Interior sign changes of chi on a fine grid.
int count_nodes(WavefunctionSpec const& spec, int samples = 20000);

/// Potential entering the radial equation that chi solves.
double effective_potential(WavefunctionSpec const& spec, double r);

struct SchrodingerResidual
{
    double rms{0.0};
    double peak{0.0};
};

/// RMS of -hbar^2/2mu chi'' + (V_eff - E) chi with chi'' from central differences.
SchrodingerResidual schrodinger_residual(WavefunctionSpec const& spec, int points = 40001);

} // namespace tietz
