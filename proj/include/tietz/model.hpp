#pragma once

/** \file model.hpp
 *
 *  \brief Tietz-Wei potential, deformed hyperbolic functions, c_h regimes,
 *         Manning-Rosen / Rosen-Morse reparameterizations and the
 *         exponential-type replacement of the centrifugal 1/r^2 term.
 */

#include <optional>
#include <string_view>

namespace tietz {

enum class UnitSystem
{
    natural,   ///< hbar^2/2mu supplied directly, all quantities dimensionless
    molecular, ///< D in eV, lengths in Angstrom, mu in amu
};

namespace units {

constexpr double hbar_c_eV_angstrom = 1973.269804;
constexpr double amu_eV = 931.49410242e6;

/// hbar^2/(2 mu) in eV * Angstrom^2 for a reduced mass given in amu.
double hbar2_over_2mu_molecular(double mu_amu);

} // namespace units

struct PotentialParams
{
    double D{1.0};              ///< well depth
    double r_e{1.0};            ///< equilibrium bond length
    double b_h{1.0};            ///< b_h = beta (1 - c_h)
    double c_h{0.0};            ///< deformation, |c_h| < 1
    double mu{0.5};             ///< reduced mass
    double hbar2_over_2mu{1.0}; ///< kinetic scale
    UnitSystem units{UnitSystem::natural};

    /// Natural units with hbar = 1, so mu = 1 / (2 hbar2_over_2mu).
    static PotentialParams natural(double D, double r_e, double b_h, double c_h, double hbar2_over_2mu = 1.0);
    static PotentialParams molecular(double D_eV, double r_e_angstrom, double b_h_inv_angstrom, double c_h,
                                     double mu_amu);

    /// Morse constant recovered from b_h.
    double beta() const { return b_h / (1.0 - c_h); }

    /// Throws DomainError when an invariant does not hold.
    void validate() const;
};

enum class RegimeKind
{
    case1_mr,            ///< e^{-b_h r_e} <= c_h < 1, domain ]r0, inf[
    case2_half_space_mr, ///< 0 < c_h < e^{-b_h r_e}
    case3_rm,            ///< -1 < c_h < 0
    morse,               ///< c_h == 0
};

std::string_view to_string(RegimeKind kind);

struct Regime
{
    RegimeKind kind{RegimeKind::morse};
    double threshold{0.0};                ///< e^{-b_h r_e}, the minimal c_h of case 1
    std::optional<double> r0;             ///< singular point, case 1 only
    std::optional<double> boundary_offset; ///< xi0 (case 2) or x0 (case 3)

    /// Left end of the physical radial domain: r0 in case 1, 0 otherwise.
    double domain_start() const { return r0.value_or(0.0); }
};

Regime classify_regime(PotentialParams const& p);

struct MRConstants
{
    double V0{0.0};
    double V1{0.0};
    double V2{0.0};
};

struct RMConstants
{
    double U0{0.0};
    double U1{0.0};
    double U2{0.0};
};

MRConstants mr_constants(PotentialParams const& p);
RMConstants rm_constants(PotentialParams const& p);

enum class HyperbolicKind
{
    sinh,
    cosh,
    tanh,
    coth,
};

/// q-deformed hyperbolic functions: sinh_q x = (e^x - q e^{-x}) / 2 and relatives.
double deformed_hyperbolic(HyperbolicKind kind, double q, double x);

/// V_TW(r) = D [(1 - e^{-b(r-r_e)}) / (1 - c e^{-b(r-r_e)})]^2.
double potential_eval(PotentialParams const& p, double r);

/// The same potential through the deformed Manning-Rosen (c_h > 0) or
/// Rosen-Morse (c_h < 0) form; Morse form at c_h == 0.
double potential_eval_deformed(PotentialParams const& p, double r);

/// Coefficients of 1/r^2 ~ C0 + B0/(e^{b(r-r_e)} - c) + A0/(e^{b(r-r_e)} - c)^2.
struct CentrifugalApprox
{
    double C0{0.0};
    double B0{0.0};
    double A0{0.0};
};

/// C0 = b_h^2/12; B0, A0 fitted to the value and slope of 1/r^2 at r_e.
CentrifugalApprox fit_centrifugal_approx(PotentialParams const& p);

/// Evaluates the exponential-type 1/r^2 replacement. No regime checks, so
/// degenerate choices such as c_h = 1 are allowed.
double inverse_square_approx(CentrifugalApprox const& approx, double b_h, double c_h, double r_e, double r);
double inverse_square_approx(CentrifugalApprox const& approx, PotentialParams const& p, double r);

/// l-dressed Manning-Rosen constants V0^l, V1^l, V2^l (case 1).
MRConstants effective_mr_constants(PotentialParams const& p, int l, CentrifugalApprox const& approx);

} // namespace tietz
