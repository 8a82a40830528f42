#pragma once

/** \file spectra.hpp
 *
 *  \brief Bound-state energies in every c_h regime.
 *
 *  Case 1 has a closed-form spectrum from the poles of the radial Green's
 *  function. Cases 2 and 3 (s-waves) are quantized by a zero of a Gauss
 *  hypergeometric function of the energy; the roots are located on a uniform
 *  energy grid and refined by bisection. c_h = 0 is the radial Morse problem.
 */

#include "tietz/model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace tietz {

enum class LevelMethod
{
    closed_form_case1,
    transcendental_case2,
    transcendental_case3,
    morse,
    oracle,
};

std::string_view to_string(LevelMethod method);

struct BoundLevel
{
    int n_r{0};
    int l{0};
    double energy{0.0};
    LevelMethod method{LevelMethod::closed_form_case1};
    double residual{0.0}; ///< quantization-condition residual at `energy`
};

/// Energy-independent case-1 quantities plus the pole parameters at E_{n_r,l}.
struct Case1Auxiliaries
{
    double delta_l{0.0};
    double lambda_l{0.0};
    double N_r{0.0};
    double L_E{0.0};
    double M1{0.0};
    double M2{0.0};
};

Case1Auxiliaries case1_auxiliaries(PotentialParams const& p, int l, int n_r, CentrifugalApprox const& approx = {});

BoundLevel case1_energy(PotentialParams const& p, int l, int n_r, CentrifugalApprox const& approx = {});

/// Number of n_r >= 0 with n_r < sqrt(lambda_l) - delta_l - 1/2.
int case1_level_count(PotentialParams const& p, int l, CentrifugalApprox const& approx = {});

std::vector<BoundLevel> case1_levels(PotentialParams const& p, int l, CentrifugalApprox const& approx = {});

/// |M1 - L_E + n_r| at the closed-form energy.
double case1_pole_residual(PotentialParams const& p, int l, int n_r, CentrifugalApprox const& approx = {});

/// |M1 - L_E + n_r| at an arbitrary energy below V0^l - V1^l.
double case1_pole_residual_at(PotentialParams const& p, int l, int n_r, double energy,
                              CentrifugalApprox const& approx = {});

struct GreenValue
{
    double value{0.0}; ///< real product of the gamma ratio and the hypergeometric factors
    double scale{0.0}; ///< modulus 2mu/(hbar^2 b_h) of the dropped -2i mu/(hbar b_h) prefactor, per hbar
};

/// Case-1 radial Green's function G_l(r2, r1; E) without its constant imaginary prefactor.
/// Throws SingularityError within 1e-9 of a pole of Gamma(M1 - L_E).
GreenValue case1_green_function(PotentialParams const& p, int l, double r1, double r2, double energy,
                                CentrifugalApprox const& approx = {});

struct RootScanConfig
{
    double e_min{0.0};
    double e_max{0.0};
    int grid_points{2000};
    double bisect_rel_tol{1e-12};

    /// (eps D, D (1 - eps)) with eps = 1e-9.
    static RootScanConfig defaults_for(PotentialParams const& p);
    void validate(PotentialParams const& p) const;
};

struct LevelScan
{
    std::vector<BoundLevel> levels;
    std::vector<std::string> warnings; ///< possible missed roots (near tangencies)
    double f_scale{0.0};               ///< max |F| over the scan grid

    bool possibly_incomplete() const { return !warnings.empty(); }
};

/// Arguments of the hypergeometric function in a quantization condition.
struct QuantizationArgs
{
    double a{0.0};
    double b{0.0};
    double c{0.0};
    double z{0.0};
};

QuantizationArgs case2_quantization_args(PotentialParams const& p, double energy);
QuantizationArgs case3_quantization_args(PotentialParams const& p, double energy);

/// F(E) = 2F1(M1 - L_E, L_E + M1 + 1, M1 - M2 + 1; c_h e^{b_h r_e}), zero at case-2 levels.
double case2_quantization(PotentialParams const& p, double energy);

/// G(E) = 2F1(M1 - L, L + M1 + 1, M1 + M2 + 1; |c_h| / (e^{-b_h r_e} + |c_h|)), zero at case-3 levels.
double case3_quantization(PotentialParams const& p, double energy);

LevelScan transcendental_case2_levels(PotentialParams const& p, RootScanConfig const& scan);
LevelScan transcendental_case3_levels(PotentialParams const& p, RootScanConfig const& scan);

/// s = sqrt(2 mu D) / (hbar beta); levels exist while n_r + 1/2 < s.
double morse_depth_parameter(PotentialParams const& p);
int morse_level_count(PotentialParams const& p);
std::vector<BoundLevel> morse_levels(PotentialParams const& p);

/// Regime dispatch. Cases 2, 3 and Morse are s-wave only and reject l > 0.
LevelScan bound_levels(PotentialParams const& p, int l, CentrifugalApprox const& approx,
                       RootScanConfig const& scan);

} // namespace tietz
