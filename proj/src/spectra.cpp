#include "tietz/spectra.hpp"

#include "tietz/errors.hpp"
#include "tietz/specfun.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>

namespace tietz {

namespace {

constexpr double kPoleTolerance = 1e-9;
constexpr double kBracketEpsilon = 1e-9;

struct Case1Core
{
    MRConstants eff;   ///< V0^l, V1^l, V2^l
    double delta{0.0}; ///< delta_l
    double lambda{0.0};
    double k{0.0}; ///< hbar^2 / 2mu
    double b{0.0};
};

Case1Core case1_core(PotentialParams const& p, int l, CentrifugalApprox const& approx)
{
    if (classify_regime(p).kind != RegimeKind::case1_mr) {
        throw RegimeError("closed-form spectrum needs case 1 (e^{-b_h r_e} <= c_h < 1)");
    }
    if (l < 0) {
        throw DomainError("l must be >= 0");
    }
    MRConstants const base = mr_constants(p);
    double const k = p.hbar2_over_2mu;
    double const b = p.b_h;
    double const c = p.c_h;
    double const ll = l * (l + 1.0);

    Case1Core core;
    core.eff = effective_mr_constants(p, l, approx);
    core.delta = std::sqrt(4.0 * base.V2 / (k * b * b * c) + ll * approx.A0 / (b * b * c * c) + 0.25);
    core.lambda = 2.0 * base.V1 / (k * b * b) + ll / (b * b * c) * (approx.A0 / c - approx.B0);
    core.k = k;
    core.b = b;
    return core;
}

int count_below(double bound)
{
    return bound > 0.0 ? static_cast<int>(std::ceil(bound)) : 0;
}

int case1_count(Case1Core const& core)
{
    if (!(core.lambda > 0.0)) {
        return 0;
    }
    return count_below(std::sqrt(core.lambda) - core.delta - 0.5);
}

double case1_energy_value(Case1Core const& core, int n_r)
{
    double const N = n_r + core.delta + 0.5;
    return core.eff.V0 - 0.25 * core.k * core.b * core.b * (N * N + core.lambda * core.lambda / (N * N));
}

struct PoleParameters
{
    double L_E;
    double M1;
    double M2;
};

PoleParameters case1_pole_parameters(Case1Core const& core, double energy)
{
    double const outer = core.eff.V0 + core.eff.V1 - energy;
    double const inner = core.eff.V0 - core.eff.V1 - energy;
    if (!(inner >= 0.0) || !(outer >= 0.0)) {
        throw DomainError("energy above V0^l - V1^l: pole parameters are complex");
    }
    double const kb = std::sqrt(core.k) * core.b;
    double const root_inner = std::sqrt(inner) / kb;
    return {-0.5 + std::sqrt(outer) / kb, core.delta + root_inner, core.delta - root_inner};
}

/// Adds ln|x| to `log_abs` and folds the sign of x into `sign`.
void accumulate(double x, double& log_abs, int& sign)
{
    if (x == 0.0) {
        sign = 0;
        return;
    }
    log_abs += std::log(std::abs(x));
    if (x < 0.0) {
        sign = -sign;
    }
}

template <typename Quantization>
LevelScan scan_roots(PotentialParams const& p, RootScanConfig const& scan, Quantization&& f, LevelMethod method)
{
    scan.validate(p);
    int const n = scan.grid_points;
    std::vector<double> energies(n);
    std::vector<double> values(n);
    double const step = (scan.e_max - scan.e_min) / (n - 1);
    LevelScan result;
    for (int i = 0; i < n; ++i) {
        energies[i] = i + 1 == n ? scan.e_max : scan.e_min + i * step;
        values[i] = f(energies[i]);
        result.f_scale = std::max(result.f_scale, std::abs(values[i]));
    }

    auto changes_sign = [&](int i) { return values[i] == 0.0 || values[i] * values[i + 1] < 0.0; };

    for (int i = 0; i + 1 < n; ++i) {
        if (!changes_sign(i)) {
            continue;
        }
        double lo = energies[i];
        double hi = energies[i + 1];
        double f_lo = values[i];
        if (f_lo != 0.0) {
            for (int it = 0; it < 200 && hi - lo > scan.bisect_rel_tol * std::max(std::abs(lo), std::abs(hi));
                 ++it) {
                double const mid = 0.5 * (lo + hi);
                double const f_mid = f(mid);
                if (f_mid == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((f_mid < 0.0) == (f_lo < 0.0)) {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
        } else {
            hi = lo;
        }
        double const root = 0.5 * (lo + hi);
        BoundLevel level;
        level.n_r = static_cast<int>(result.levels.size());
        level.l = 0;
        level.energy = root;
        level.method = method;
        level.residual = result.f_scale > 0.0 ? std::abs(f(root)) / result.f_scale : 0.0;
        result.levels.push_back(level);
        if (values[i] == 0.0) {
            ++i; // the next interval starts at this exact zero
        }
    }

    for (int i = 0; i + 2 < n; ++i) {
        if (changes_sign(i) && changes_sign(i + 1) && values[i + 1] != 0.0) {
            result.warnings.push_back(fmt::format(
                "sign changes in adjacent grid cells near E = {:.12g}; roots may be unresolved", energies[i + 1]));
        }
    }
    for (int i = 1; i + 1 < n; ++i) {
        double const a = std::abs(values[i - 1]);
        double const b = std::abs(values[i]);
        double const c = std::abs(values[i + 1]);
        if (b < a && b < c && !changes_sign(i - 1) && !changes_sign(i)) {
            result.warnings.push_back(fmt::format(
                "|F| has a local minimum without sign change near E = {:.12g}; possible missed tangency",
                energies[i]));
        }
    }
    return result;
}

} // namespace

std::string_view to_string(LevelMethod method)
{
    switch (method) {
        case LevelMethod::closed_form_case1:
            return "closed_form_case1";
        case LevelMethod::transcendental_case2:
            return "transcendental_case2";
        case LevelMethod::transcendental_case3:
            return "transcendental_case3";
        case LevelMethod::morse:
            return "morse";
        case LevelMethod::oracle:
            return "oracle";
    }
    return "unknown";
}

Case1Auxiliaries case1_auxiliaries(PotentialParams const& p, int l, int n_r, CentrifugalApprox const& approx)
{
    Case1Core const core = case1_core(p, l, approx);
    BoundLevel const level = case1_energy(p, l, n_r, approx);
    PoleParameters const pole = case1_pole_parameters(core, level.energy);
    return {core.delta, core.lambda, n_r + core.delta + 0.5, pole.L_E, pole.M1, pole.M2};
}

int case1_level_count(PotentialParams const& p, int l, CentrifugalApprox const& approx)
{
    return case1_count(case1_core(p, l, approx));
}

BoundLevel case1_energy(PotentialParams const& p, int l, int n_r, CentrifugalApprox const& approx)
{
    Case1Core const core = case1_core(p, l, approx);
    if (n_r < 0) {
        throw DomainError("n_r must be >= 0");
    }
    int const count = case1_count(core);
    if (n_r >= count) {
        throw IndexError(fmt::format("n_r = {} exceeds n_r,max = {} (bound: n_r < sqrt(lambda_l) - delta_l - 1/2 "
                                     "= {:.12g})",
                                     n_r, count - 1,
                                     core.lambda > 0.0 ? std::sqrt(core.lambda) - core.delta - 0.5 : 0.0));
    }
    BoundLevel level;
    level.n_r = n_r;
    level.l = l;
    level.energy = case1_energy_value(core, n_r);
    level.method = LevelMethod::closed_form_case1;
    PoleParameters const pole = case1_pole_parameters(core, level.energy);
    level.residual = std::abs(pole.M1 - pole.L_E + n_r);
    return level;
}

std::vector<BoundLevel> case1_levels(PotentialParams const& p, int l, CentrifugalApprox const& approx)
{
    int const count = case1_level_count(p, l, approx);
    std::vector<BoundLevel> levels;
    levels.reserve(count);
    for (int n = 0; n < count; ++n) {
        levels.push_back(case1_energy(p, l, n, approx));
    }
    return levels;
}

double case1_pole_residual(PotentialParams const& p, int l, int n_r, CentrifugalApprox const& approx)
{
    return case1_energy(p, l, n_r, approx).residual;
}

double case1_pole_residual_at(PotentialParams const& p, int l, int n_r, double energy,
                              CentrifugalApprox const& approx)
{
    PoleParameters const pole = case1_pole_parameters(case1_core(p, l, approx), energy);
    return std::abs(pole.M1 - pole.L_E + n_r);
}

GreenValue case1_green_function(PotentialParams const& p, int l, double r1, double r2, double energy,
                                CentrifugalApprox const& approx)
{
    Case1Core const core = case1_core(p, l, approx);
    double const r0 = *classify_regime(p).r0;
    if (!(r1 > r0) || !(r2 > r0)) {
        throw DomainError("case1_green_function: r1 and r2 must exceed r0");
    }
    PoleParameters const pole = case1_pole_parameters(core, energy);
    double const a = pole.M1 - pole.L_E;
    double const b = pole.L_E + pole.M1 + 1.0;
    if (near_nonpositive_integer(a, kPoleTolerance)) {
        throw SingularityError(fmt::format("case1_green_function: E = {:.12g} sits on a pole (M1 - L_E = {:.6g})",
                                           energy, a));
    }
    double const c_big = pole.M1 - pole.M2 + 1.0;
    double const c_small = pole.M1 + pole.M2 + 1.0;

    auto y_of = [&](double r) { return p.c_h * std::exp(-p.b_h * (r - p.r_e)); };
    double const y1 = y_of(r1);
    double const y2 = y_of(r2);
    double const y_far = y_of(std::max(r1, r2));
    double const y_near = y_of(std::min(r1, r2));

    SignedLog const prefactor = [&] {
        SignedLog g1 = log_gamma_signed(a);
        SignedLog g2 = log_gamma_signed(b);
        SignedLog g3 = log_gamma_signed(c_big);
        SignedLog g4 = log_gamma_signed(c_small);
        return SignedLog{g1.log_abs + g2.log_abs - g3.log_abs - g4.log_abs, g1.sign * g2.sign * g3.sign * g4.sign};
    }();

    double log_abs = prefactor.log_abs + 0.5 * c_small * (std::log1p(-y1) + std::log1p(-y2)) +
                     0.5 * (pole.M1 - pole.M2) * (std::log(y1) + std::log(y2));
    int sign = prefactor.sign;
    accumulate(gauss_2f1(a, b, c_big, y_far), log_abs, sign);
    accumulate(gauss_2f1(a, b, c_small, 1.0 - y_near), log_abs, sign);

    GreenValue out;
    out.value = sign == 0 ? 0.0 : sign * std::exp(log_abs);
    out.scale = 1.0 / (p.hbar2_over_2mu * p.b_h);
    return out;
}

RootScanConfig RootScanConfig::defaults_for(PotentialParams const& p)
{
    RootScanConfig scan;
    scan.e_min = kBracketEpsilon * p.D;
    scan.e_max = p.D * (1.0 - kBracketEpsilon);
    return scan;
}

void RootScanConfig::validate(PotentialParams const& p) const
{
    if (!(e_min < e_max)) {
        throw DomainError("root scan: e_min must be < e_max");
    }
    if (e_min < 0.0 || e_max > p.D) {
        throw DomainError("root scan: bracket must lie inside (0, D); M2 turns complex above D");
    }
    if (grid_points < 16) {
        throw DomainError("root scan: grid_points must be >= 16");
    }
    if (!(bisect_rel_tol > 0.0)) {
        throw DomainError("root scan: bisect_rel_tol must be > 0");
    }
}

// The parameters are formed in long double: near a root M1 - L can sit within
// 1e-16 of a non-positive integer, and the cancellation in M1 - L would
// otherwise cost two digits of exactly that distance.

QuantizationArgs case2_quantization_args(PotentialParams const& p, double energy)
{
    if (classify_regime(p).kind != RegimeKind::case2_half_space_mr) {
        throw RegimeError("case-2 quantization needs 0 < c_h < e^{-b_h r_e}");
    }
    if (!(energy <= p.D)) {
        throw DomainError("case-2 quantization: energy above D");
    }
    using ld = long double;
    ld const k = p.hbar2_over_2mu;
    ld const b = p.b_h;
    ld const c = p.c_h;
    ld const D = p.D;
    ld const E = energy;
    ld const kb = std::sqrt(k) * b;
    // 4 V2 / (k b^2 c) = D (1 - c)^2 / (k b^2 c^2)
    ld const delta0 = std::sqrt(0.25L + D * (1 - c) * (1 - c) / (kb * kb * c * c));
    ld const L = -0.5L + std::sqrt(D / (c * c) - E) / kb; // V0 + V1 = D/c^2
    ld const root = std::sqrt(D - E) / kb;                  // V0 - V1 = D
    ld const M1 = delta0 + root;
    ld const M2 = delta0 - root;
    return {static_cast<double>(M1 - L), static_cast<double>(L + M1 + 1), static_cast<double>(M1 - M2 + 1),
            static_cast<double>(c * std::exp(b * static_cast<ld>(p.r_e)))};
}

QuantizationArgs case3_quantization_args(PotentialParams const& p, double energy)
{
    if (classify_regime(p).kind != RegimeKind::case3_rm) {
        throw RegimeError("case-3 quantization needs -1 < c_h < 0");
    }
    if (!(energy <= p.D)) {
        throw DomainError("case-3 quantization: energy above D");
    }
    using ld = long double;
    ld const k = p.hbar2_over_2mu;
    ld const b = p.b_h;
    ld const g = std::abs(static_cast<ld>(p.c_h));
    ld const D = p.D;
    ld const E = energy;
    ld const kb = std::sqrt(k) * b;
    // 4 U2 / (k b^2 |c|) = D (1 + |c|)^2 / (k b^2 |c|^2)
    ld const L = -0.5L + std::sqrt(0.25L + D * (1 + g) * (1 + g) / (kb * kb * g * g));
    ld const P1 = std::sqrt(D - E) / kb;
    ld const P2 = std::sqrt(D / (g * g) - E) / kb;
    ld const M1 = P1 + P2;
    ld const M2 = P1 - P2;
    return {static_cast<double>(M1 - L), static_cast<double>(L + M1 + 1), static_cast<double>(M1 + M2 + 1),
            static_cast<double>(g / (std::exp(-b * static_cast<ld>(p.r_e)) + g))};
}

double case2_quantization(PotentialParams const& p, double energy)
{
    QuantizationArgs const q = case2_quantization_args(p, energy);
    return gauss_2f1(q.a, q.b, q.c, q.z);
}

double case3_quantization(PotentialParams const& p, double energy)
{
    QuantizationArgs const q = case3_quantization_args(p, energy);
    return gauss_2f1(q.a, q.b, q.c, q.z);
}

LevelScan transcendental_case2_levels(PotentialParams const& p, RootScanConfig const& scan)
{
    if (classify_regime(p).kind != RegimeKind::case2_half_space_mr) {
        throw RegimeError("case-2 levels need 0 < c_h < e^{-b_h r_e}");
    }
    return scan_roots(p, scan, [&](double e) { return case2_quantization(p, e); }, LevelMethod::transcendental_case2);
}

LevelScan transcendental_case3_levels(PotentialParams const& p, RootScanConfig const& scan)
{
    if (classify_regime(p).kind != RegimeKind::case3_rm) {
        throw RegimeError("case-3 levels need -1 < c_h < 0");
    }
    return scan_roots(p, scan, [&](double e) { return case3_quantization(p, e); }, LevelMethod::transcendental_case3);
}

double morse_depth_parameter(PotentialParams const& p)
{
    if (classify_regime(p).kind != RegimeKind::morse) {
        throw RegimeError("Morse levels need c_h = 0");
    }
    return std::sqrt(p.D / p.hbar2_over_2mu) / p.beta();
}

int morse_level_count(PotentialParams const& p)
{
    return count_below(morse_depth_parameter(p) - 0.5);
}

std::vector<BoundLevel> morse_levels(PotentialParams const& p)
{
    double const s = morse_depth_parameter(p);
    double const beta = p.beta();
    double const scale = p.hbar2_over_2mu * beta * beta;
    int const count = morse_level_count(p);
    std::vector<BoundLevel> levels;
    levels.reserve(count);
    for (int n = 0; n < count; ++n) {
        double const v = n + 0.5;
        BoundLevel level;
        level.n_r = n;
        level.l = 0;
        level.energy = -scale * (v * v - 2.0 * v * s);
        level.method = LevelMethod::morse;
        double const kappa = std::sqrt(std::max(0.0, p.D - level.energy) / p.hbar2_over_2mu) / beta;
        level.residual = std::abs(0.5 - s + kappa + n);
        levels.push_back(level);
    }
    return levels;
}

LevelScan bound_levels(PotentialParams const& p, int l, CentrifugalApprox const& approx, RootScanConfig const& scan)
{
    Regime const regime = classify_regime(p);
    if (regime.kind != RegimeKind::case1_mr && l != 0) {
        throw RegimeError(fmt::format("{} is solved for s-waves only (l = 0)", to_string(regime.kind)));
    }
    switch (regime.kind) {
        case RegimeKind::case1_mr: {
            LevelScan out;
            out.levels = case1_levels(p, l, approx);
            return out;
        }
        case RegimeKind::case2_half_space_mr:
            return transcendental_case2_levels(p, scan);
        case RegimeKind::case3_rm:
            return transcendental_case3_levels(p, scan);
        case RegimeKind::morse: {
            LevelScan out;
            out.levels = morse_levels(p);
            return out;
        }
    }
    return {};
}

} // namespace tietz
