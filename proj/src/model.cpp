#include "tietz/model.hpp"

#include "tietz/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace tietz {

namespace units {

double hbar2_over_2mu_molecular(double mu_amu)
{
    return hbar_c_eV_angstrom * hbar_c_eV_angstrom / (2.0 * mu_amu * amu_eV);
}

} // namespace units

PotentialParams PotentialParams::natural(double D, double r_e, double b_h, double c_h, double hbar2_over_2mu)
{
    PotentialParams p{D, r_e, b_h, c_h, 0.5 / hbar2_over_2mu, hbar2_over_2mu, UnitSystem::natural};
    p.validate();
    return p;
}

PotentialParams PotentialParams::molecular(double D_eV, double r_e_angstrom, double b_h_inv_angstrom, double c_h,
                                           double mu_amu)
{
    PotentialParams p{D_eV,   r_e_angstrom, b_h_inv_angstrom, c_h, mu_amu, units::hbar2_over_2mu_molecular(mu_amu),
                      UnitSystem::molecular};
    p.validate();
    return p;
}

void PotentialParams::validate() const
{
    auto require = [](bool ok, char const* what) {
        if (!ok) {
            throw DomainError(what);
        }
    };
    require(std::isfinite(D) && D > 0.0, "D must be > 0");
    require(std::isfinite(r_e) && r_e > 0.0, "r_e must be > 0");
    require(std::isfinite(b_h) && b_h > 0.0, "b_h must be > 0");
    require(std::isfinite(c_h) && std::abs(c_h) < 1.0, "|c_h| must be < 1");
    require(std::isfinite(mu) && mu > 0.0, "mu must be > 0");
    require(std::isfinite(hbar2_over_2mu) && hbar2_over_2mu > 0.0, "hbar2_over_2mu must be > 0");
    double const expected =
        units == UnitSystem::natural ? 0.5 / mu : units::hbar2_over_2mu_molecular(mu);
    require(std::abs(hbar2_over_2mu - expected) <= 1e-12 * expected,
            "hbar2_over_2mu inconsistent with mu in the active unit system");
}

std::string_view to_string(RegimeKind kind)
{
    switch (kind) {
        case RegimeKind::case1_mr:
            return "Case1";
        case RegimeKind::case2_half_space_mr:
            return "Case2";
        case RegimeKind::case3_rm:
            return "Case3";
        case RegimeKind::morse:
            return "Morse";
    }
    return "unknown";
}

Regime classify_regime(PotentialParams const& p)
{
    if (!(std::abs(p.c_h) < 1.0)) {
        throw DomainError("|c_h| must be < 1");
    }
    p.validate();
    Regime regime;
    regime.threshold = std::exp(-p.b_h * p.r_e);
    double const c = p.c_h;
    if (c == 0.0) {
        regime.kind = RegimeKind::morse;
    } else if (c < 0.0) {
        regime.kind = RegimeKind::case3_rm;
        regime.boundary_offset = -0.5 * (p.b_h * p.r_e + std::log(-c));
    } else if (c >= regime.threshold) {
        regime.kind = RegimeKind::case1_mr;
        regime.r0 = std::max(0.0, p.r_e + std::log(c) / p.b_h);
    } else {
        regime.kind = RegimeKind::case2_half_space_mr;
        regime.boundary_offset = -0.5 * (p.b_h * p.r_e + std::log(c));
    }
    return regime;
}

MRConstants mr_constants(PotentialParams const& p)
{
    double const c = p.c_h;
    if (!(c > 0.0 && c < 1.0)) {
        throw RegimeError("Manning-Rosen constants need 0 < c_h < 1");
    }
    double const inv = 1.0 / c;
    return {0.5 * p.D * (1.0 + inv * inv), 0.5 * p.D * (inv + 1.0) * (inv - 1.0),
            0.25 * p.D * c * (inv - 1.0) * (inv - 1.0)};
}

RMConstants rm_constants(PotentialParams const& p)
{
    double const c = p.c_h;
    if (!(c < 0.0 && c > -1.0)) {
        throw RegimeError("Rosen-Morse constants need -1 < c_h < 0");
    }
    double const inv = 1.0 / std::abs(c);
    return {0.5 * p.D * (1.0 + inv * inv), 0.5 * p.D * (1.0 - inv) * (1.0 + inv),
            0.25 * p.D * std::abs(c) * (inv + 1.0) * (inv + 1.0)};
}

double deformed_hyperbolic(HyperbolicKind kind, double q, double x)
{
    if (!(q > 0.0)) {
        throw DomainError("deformed_hyperbolic: q must be > 0");
    }
    double const up = std::exp(x);
    double const down = q * std::exp(-x);
    double const sinh_q = 0.5 * (up - down);
    double const cosh_q = 0.5 * (up + down);
    // sinh_q vanishes at x = ln(q)/2; treat rounding-level values as that zero.
    bool const sinh_zero = std::abs(up - down) <= 4.0 * std::numeric_limits<double>::epsilon() * (up + down);
    switch (kind) {
        case HyperbolicKind::sinh:
            return sinh_q;
        case HyperbolicKind::cosh:
            return cosh_q;
        case HyperbolicKind::tanh:
            return sinh_q / cosh_q;
        case HyperbolicKind::coth:
            if (sinh_zero) {
                throw SingularityError("deformed coth: sinh_q vanishes at x = ln(q)/2");
            }
            return cosh_q / sinh_q;
    }
    return 0.0;
}

double potential_eval(PotentialParams const& p, double r)
{
    if (!(r > 0.0)) {
        throw DomainError("potential_eval: r must be > 0");
    }
    double const e = std::exp(-p.b_h * (r - p.r_e));
    double const num = 1.0 - e;
    double const den = 1.0 - p.c_h * e;
    if (std::abs(den) <= 8.0 * std::numeric_limits<double>::epsilon()) {
        throw SingularityError("potential_eval: r coincides with the singular point r0");
    }
    double const ratio = num / den;
    return p.D * ratio * ratio;
}

double potential_eval_deformed(PotentialParams const& p, double r)
{
    if (!(r > 0.0)) {
        throw DomainError("potential_eval_deformed: r must be > 0");
    }
    double const x = 0.5 * p.b_h * (r - p.r_e);
    if (p.c_h > 0.0) {
        MRConstants const mr = mr_constants(p);
        double const s = deformed_hyperbolic(HyperbolicKind::sinh, p.c_h, x);
        if (s == 0.0) {
            throw SingularityError("potential_eval_deformed: r coincides with the singular point r0");
        }
        double const coth = deformed_hyperbolic(HyperbolicKind::coth, p.c_h, x);
        return mr.V0 - mr.V1 * coth + mr.V2 / (s * s);
    }
    if (p.c_h < 0.0) {
        RMConstants const rm = rm_constants(p);
        double const q = std::abs(p.c_h);
        double const ch = deformed_hyperbolic(HyperbolicKind::cosh, q, x);
        return rm.U0 + rm.U1 * deformed_hyperbolic(HyperbolicKind::tanh, q, x) - rm.U2 / (ch * ch);
    }
    double const e = std::exp(-p.b_h * (r - p.r_e));
    return p.D * (1.0 - e) * (1.0 - e);
}

CentrifugalApprox fit_centrifugal_approx(PotentialParams const& p)
{
    if (classify_regime(p).kind != RegimeKind::case1_mr) {
        throw RegimeError("centrifugal approximation is only used in case 1 (e^{-b_h r_e} <= c_h < 1)");
    }
    double const b = p.b_h;
    double const re = p.r_e;
    double const t0 = 1.0 - p.c_h; // e^{b(r-r_e)} - c at r = r_e
    double const C0 = b * b / 12.0;
    // Value and slope of 1/r^2 at r_e:
    //   C0 + B0/t0 + A0/t0^2 = 1/r_e^2,  -b (B0/t0^2 + 2 A0/t0^3) = -2/r_e^3
    double const value_gap = 1.0 / (re * re) - C0;
    double const slope = 2.0 / (b * re * re * re);
    double const A0 = slope * t0 * t0 * t0 - value_gap * t0 * t0;
    double const B0 = value_gap * t0 - A0 / t0;
    return {C0, B0, A0};
}

double inverse_square_approx(CentrifugalApprox const& approx, double b_h, double c_h, double r_e, double r)
{
    double const t = std::exp(b_h * (r - r_e)) - c_h;
    return approx.C0 + approx.B0 / t + approx.A0 / (t * t);
}

double inverse_square_approx(CentrifugalApprox const& approx, PotentialParams const& p, double r)
{
    return inverse_square_approx(approx, p.b_h, p.c_h, p.r_e, r);
}

MRConstants effective_mr_constants(PotentialParams const& p, int l, CentrifugalApprox const& approx)
{
    if (classify_regime(p).kind != RegimeKind::case1_mr) {
        throw RegimeError("effective Manning-Rosen constants need case 1 (e^{-b_h r_e} <= c_h < 1)");
    }
    if (l < 0) {
        throw DomainError("l must be >= 0");
    }
    MRConstants const base = mr_constants(p);
    double const c = p.c_h;
    double const rot = p.hbar2_over_2mu * l * (l + 1.0); // hbar^2 l(l+1) / 2mu
    double const mix = approx.A0 / c - approx.B0;
    return {base.V0 + rot * (approx.C0 + mix / (2.0 * c)), base.V1 + rot * mix / (2.0 * c),
            base.V2 + rot * approx.A0 / (4.0 * c)};
}

} // namespace tietz
