#include "tietz/wavefn.hpp"

#include "tietz/errors.hpp"
#include "tietz/quadrature.hpp"
#include "tietz/specfun.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace tietz {

namespace {

constexpr double kNormalizationCut = 1e-7; // |chi| cut, i.e. 1e-14 on chi^2
constexpr int kSupportSamples = 4000;

// Unnormalized, unsigned shapes. Each one requires r inside its regime's domain.

double case1_shape(WavefunctionSpec const& spec, double r)
{
    PotentialParams const& p = spec.params;
    double const r0 = *spec.regime.r0;
    if (!(r > r0)) {
        throw DomainError(fmt::format("case-1 wave function needs r > r0 = {:.12g}", r0));
    }
    Case1Auxiliaries const aux = case1_auxiliaries(p, spec.level.l, spec.level.n_r, spec.approx);
    int const n = spec.level.n_r;
    double const N = aux.N_r;
    double const ratio = aux.lambda_l / N;
    double const y = p.c_h * std::exp(-p.b_h * (r - p.r_e));
    double const log_pref = (N - n) * std::log1p(-y) + 0.5 * (ratio - N) * std::log(y);
    return std::exp(log_pref) * gauss_2f1(-n, N + ratio - n, ratio - N + 1.0, y);
}

struct Case2Parameters
{
    double delta0, p;
    QuantizationArgs args;
};

Case2Parameters case2_parameters(PotentialParams const& p, double energy)
{
    MRConstants const mr = mr_constants(p);
    double const k = p.hbar2_over_2mu;
    double const delta0 = std::sqrt(0.25 + 4.0 * mr.V2 / (k * p.b_h * p.b_h * p.c_h));
    double const root = std::sqrt(p.D - energy) / (std::sqrt(k) * p.b_h);
    return {delta0, root, case2_quantization_args(p, energy)};
}

double case2_shape(WavefunctionSpec const& spec, double r)
{
    if (!(r > 0.0)) {
        throw DomainError("case-2 wave function needs r > 0");
    }
    PotentialParams const& p = spec.params;
    Case2Parameters const q = case2_parameters(p, spec.level.energy);
    double const y = p.c_h * std::exp(-p.b_h * (r - p.r_e));
    // The y exponent is (M1 - M2)/2, which makes chi solve the radial equation.
    double const log_pref = (q.delta0 + 0.5) * std::log1p(-y) + q.p * std::log(y);
    return std::exp(log_pref) * gauss_2f1(q.args.a, q.args.b, q.args.c, y);
}

struct Case3Parameters
{
    double P1, P2;
    QuantizationArgs args;
};

Case3Parameters case3_parameters(PotentialParams const& p, double energy)
{
    double const kb = std::sqrt(p.hbar2_over_2mu) * p.b_h;
    double const g = std::abs(p.c_h);
    return {std::sqrt(p.D - energy) / kb, std::sqrt(p.D / (g * g) - energy) / kb, case3_quantization_args(p, energy)};
}

double case3_shape(WavefunctionSpec const& spec, double r)
{
    if (!(r > 0.0)) {
        throw DomainError("case-3 wave function needs r > 0");
    }
    PotentialParams const& p = spec.params;
    Case3Parameters const q = case3_parameters(p, spec.level.energy);
    double const g = std::abs(p.c_h);
    double const x = p.b_h * (r - p.r_e);
    double const tail = std::log1p(g * std::exp(-x)); // -ln(1 - w)
    double const log_w = std::log(g) - x - tail;      // w = g / (g + e^x)
    double const w = std::exp(log_w);
    double const log_pref = q.P1 * log_w - q.P2 * tail;
    return std::exp(log_pref) * gauss_2f1(q.args.a, q.args.b, q.args.c, w);
}

double morse_shape(WavefunctionSpec const& spec, double r)
{
    if (!(r > 0.0)) {
        throw DomainError("Morse wave function needs r > 0");
    }
    PotentialParams const& p = spec.params;
    double const s = morse_depth_parameter(p);
    int const n = spec.level.n_r;
    double const log_u = -p.beta() * (r - p.r_e);
    double const u = std::exp(log_u);
    return std::exp(-s * u + (s - n - 0.5) * log_u) * kummer_1f1(-n, 2.0 * s - 2.0 * n, 2.0 * s * u);
}

double shape(WavefunctionSpec const& spec, double r)
{
    switch (spec.regime.kind) {
        case RegimeKind::case1_mr:
            return case1_shape(spec, r);
        case RegimeKind::case2_half_space_mr:
            return case2_shape(spec, r);
        case RegimeKind::case3_rm:
            return case3_shape(spec, r);
        case RegimeKind::morse:
            return morse_shape(spec, r);
    }
    return 0.0;
}

/// Dissociation asymptote of the effective potential.
double asymptote(WavefunctionSpec const& spec)
{
    PotentialParams const& p = spec.params;
    int const l = spec.level.l;
    return p.D + p.hbar2_over_2mu * l * (l + 1.0) * spec.approx.C0;
}

/// Support of the unnormalized shape; `peak` is in shape units.
Support shape_support(WavefunctionSpec const& spec, double rel_amplitude)
{
    PotentialParams const& p = spec.params;
    double const start = spec.regime.domain_start();
    double const gap = asymptote(spec) - spec.level.energy;
    double const kappa = std::sqrt(std::max(gap, 1e-300) / p.hbar2_over_2mu);
    double far = std::max(p.r_e, start) + (std::log(1.0 / rel_amplitude) + 40.0) / kappa + 5.0 / p.b_h;

    for (int attempt = 0; attempt < 8; ++attempt, far = start + 2.0 * (far - start)) {
        double const h = (far - start) / kSupportSamples;
        std::vector<double> values(kSupportSamples);
        Support s;
        for (int i = 0; i < kSupportSamples; ++i) {
            double const r = start + (i + 1) * h;
            values[i] = std::abs(shape(spec, r));
            if (values[i] > s.peak) {
                s.peak = values[i];
                s.peak_r = r;
            }
        }
        if (!(s.peak > 0.0) || !std::isfinite(s.peak)) {
            throw ConvergenceError("wave function support: no finite peak found");
        }
        double const cut = rel_amplitude * s.peak;
        if (values.back() >= cut) {
            continue;
        }
        auto crossing = [&](double inside, double outside) {
            for (int it = 0; it < 60; ++it) {
                double const mid = 0.5 * (inside + outside);
                (std::abs(shape(spec, mid)) >= cut ? inside : outside) = mid;
            }
            return outside;
        };
        int first = 0;
        while (values[first] < cut) {
            ++first;
        }
        int last = kSupportSamples - 1;
        while (values[last] < cut) {
            --last;
        }
        s.lo = first == 0 ? start + 1e-12 * (far - start) : crossing(start + (first + 1) * h, start + first * h);
        s.hi = crossing(start + (last + 1) * h, start + (last + 2) * h);
        return s;
    }
    throw ConvergenceError("wave function support: no decay found");
}

double shape_norm(WavefunctionSpec const& spec)
{
    Support const s = shape_support(spec, kNormalizationCut);
    double const integral = integrate(
        [&](double r) {
            double const v = shape(spec, r);
            return v * v;
        },
        s.lo, s.hi);
    return 1.0 / std::sqrt(integral);
}

int shape_sign(WavefunctionSpec const& spec)
{
    Support const s = shape_support(spec, 1e-3);
    double const v = shape(spec, s.lo + 1e-6 * (s.hi - s.lo));
    return v < 0.0 ? -1 : 1;
}

void check_level(PotentialParams const& p, Regime const& regime, BoundLevel const& level,
                 CentrifugalApprox const& approx)
{
    if (level.n_r < 0 || level.l < 0) {
        throw DomainError("quantum numbers must be >= 0");
    }
    if (regime.kind != RegimeKind::case1_mr && level.l != 0) {
        throw RegimeError(fmt::format("{} wave functions are s-wave only", to_string(regime.kind)));
    }
    auto mismatch = [&](double expected) {
        if (std::abs(level.energy - expected) > 1e-9 * p.D) {
            throw DomainError(fmt::format("level mismatch: E = {:.12g} but the closed form gives {:.12g}",
                                          level.energy, expected));
        }
    };
    switch (regime.kind) {
        case RegimeKind::case1_mr:
            mismatch(case1_energy(p, level.l, level.n_r, approx).energy);
            return;
        case RegimeKind::morse: {
            auto const levels = morse_levels(p);
            if (level.n_r >= static_cast<int>(levels.size())) {
                throw IndexError(fmt::format("n_r = {} exceeds the Morse n_r,max = {}", level.n_r,
                                             static_cast<int>(levels.size()) - 1));
            }
            mismatch(levels[level.n_r].energy);
            return;
        }
        case RegimeKind::case2_half_space_mr:
        case RegimeKind::case3_rm: {
            if (!(level.energy > 0.0 && level.energy < p.D)) {
                throw DomainError("level mismatch: energy outside (0, D)");
            }
            auto f = [&](double e) {
                return regime.kind == RegimeKind::case2_half_space_mr ? case2_quantization(p, e)
                                                                      : case3_quantization(p, e);
            };
            double const step = 1e-6 * p.D;
            double const lo = std::max(level.energy - step, 0.5 * level.energy);
            double const hi = std::min(level.energy + step, 0.5 * (level.energy + p.D));
            double const neighbour = std::max(std::abs(f(lo)), std::abs(f(hi)));
            if (std::abs(f(level.energy)) > 1e-3 * neighbour) {
                throw DomainError(fmt::format("level mismatch: E = {:.12g} is not a root of the quantization "
                                              "condition",
                                              level.energy));
            }
            return;
        }
    }
}

/// Bisects the quantization condition down to adjacent doubles. Near small
/// |c_h| the wall at r = 0 is so high that any residual energy error shows up
/// as a growing solution under it.
double polish_root(PotentialParams const& p, RegimeKind kind, double energy)
{
    auto f = [&](double e) {
        return kind == RegimeKind::case2_half_space_mr ? case2_quantization(p, e) : case3_quantization(p, e);
    };
    double const f0 = f(energy);
    if (f0 == 0.0) {
        return energy;
    }
    double lo = energy;
    double hi = energy;
    bool found = false;
    for (double step = 4.0 * std::numeric_limits<double>::epsilon() * energy; step <= 1e-6 * p.D && !found;
         step *= 4.0) {
        for (double candidate : {energy - step, energy + step}) {
            if (candidate > 0.0 && candidate < p.D && (f(candidate) < 0.0) != (f0 < 0.0)) {
                (candidate < energy ? lo : hi) = candidate;
                found = true;
                break;
            }
        }
    }
    if (!found) {
        return energy;
    }
    double f_lo = f(lo);
    while (true) {
        double const mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        double const f_mid = f(mid);
        if (f_mid == 0.0) {
            return mid;
        }
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        }
        else {
            hi = mid;
        }
    }
    return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

} // namespace

WavefunctionSpec make_wavefunction(PotentialParams const& p, BoundLevel const& level, CentrifugalApprox const& approx)
{
    WavefunctionSpec spec;
    spec.regime = classify_regime(p);
    spec.level = level;
    spec.params = p;
    spec.approx = approx;
    check_level(p, spec.regime, level, approx);
    if (spec.regime.kind == RegimeKind::case2_half_space_mr || spec.regime.kind == RegimeKind::case3_rm) {
        spec.level.energy = polish_root(p, spec.regime.kind, level.energy);
    }
    spec.norm_constant = spec.regime.kind == RegimeKind::case1_mr
                             ? case1_analytic_norm(p, level.l, level.n_r, approx)
                             : shape_norm(spec);
    spec.sign = shape_sign(spec);
    return spec;
}

double case1_analytic_norm(PotentialParams const& p, int l, int n_r, CentrifugalApprox const& approx)
{
    Case1Auxiliaries const aux = case1_auxiliaries(p, l, n_r, approx);
    double const N = aux.N_r;
    double const ratio = aux.lambda_l / N;
    double const n = n_r;
    double const log_square = std::log(p.b_h / (2.0 * N)) + std::log(ratio + N) + std::log(ratio - N) +
                              log_gamma(N - n + ratio) + log_gamma(1.0 - N + n + ratio) - log_gamma(n + 1.0) -
                              log_gamma(2.0 * N - n);
    return std::exp(0.5 * log_square - log_gamma(ratio - N + 1.0));
}

double quadrature_norm(WavefunctionSpec const& spec)
{
    return shape_norm(spec);
}

namespace {

double normalized(WavefunctionSpec const& spec, RegimeKind expected, double r)
{
    if (spec.regime.kind != expected) {
        throw RegimeError(fmt::format("wave function is for {}, not {}", to_string(spec.regime.kind),
                                      to_string(expected)));
    }
    return spec.sign * spec.norm_constant * shape(spec, r);
}

} // namespace

double case1_wavefunction(WavefunctionSpec const& spec, double r)
{
    return normalized(spec, RegimeKind::case1_mr, r);
}

double case2_wavefunction(WavefunctionSpec const& spec, double r)
{
    return normalized(spec, RegimeKind::case2_half_space_mr, r);
}

double case3_wavefunction(WavefunctionSpec const& spec, double r)
{
    return normalized(spec, RegimeKind::case3_rm, r);
}

double morse_wavefunction(WavefunctionSpec const& spec, double r)
{
    return normalized(spec, RegimeKind::morse, r);
}

double evaluate(WavefunctionSpec const& spec, double r)
{
    return normalized(spec, spec.regime.kind, r);
}

Support support(WavefunctionSpec const& spec, double rel_amplitude)
{
    Support s = shape_support(spec, rel_amplitude);
    s.peak *= spec.norm_constant;
    return s;
}

double overlap(WavefunctionSpec const& a, WavefunctionSpec const& b)
{
    PotentialParams const& pa = a.params;
    PotentialParams const& pb = b.params;
    if (a.regime.kind != b.regime.kind || pa.D != pb.D || pa.r_e != pb.r_e || pa.b_h != pb.b_h ||
        pa.c_h != pb.c_h || pa.hbar2_over_2mu != pb.hbar2_over_2mu) {
        throw RegimeError("overlap: wave functions belong to different problems");
    }
    Support const sa = shape_support(a, kNormalizationCut);
    Support const sb = shape_support(b, kNormalizationCut);
    return integrate([&](double r) { return evaluate(a, r) * evaluate(b, r); }, std::min(sa.lo, sb.lo),
                     std::max(sa.hi, sb.hi));
}

int count_nodes(WavefunctionSpec const& spec, int samples)
{
    Support const s = support(spec, 1e-6);
    double const floor = 1e-6 * s.peak;
    int nodes = 0;
    int last_sign = 0;
    for (int i = 0; i <= samples; ++i) {
        double const v = evaluate(spec, s.lo + (s.hi - s.lo) * i / samples);
        if (std::abs(v) < floor) {
            continue;
        }
        int const sign = v > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) {
            ++nodes;
        }
        last_sign = sign;
    }
    return nodes;
}

double effective_potential(WavefunctionSpec const& spec, double r)
{
    PotentialParams const& p = spec.params;
    double v = potential_eval(p, r);
    int const l = spec.level.l;
    if (spec.regime.kind == RegimeKind::case1_mr && l > 0) {
        v += p.hbar2_over_2mu * l * (l + 1.0) * inverse_square_approx(spec.approx, p, r);
    }
    return v;
}

SchrodingerResidual schrodinger_residual(WavefunctionSpec const& spec, int points)
{
    Support const s = support(spec, kNormalizationCut);
    double const h = (s.hi - s.lo) / (points - 1);
    double const k = spec.params.hbar2_over_2mu;
    double const e = spec.level.energy;
    std::vector<double> chi(points);
    for (int i = 0; i < points; ++i) {
        chi[i] = evaluate(spec, s.lo + i * h);
    }
    double sum = 0.0;
    for (int i = 1; i + 1 < points; ++i) {
        double const r = s.lo + i * h;
        double const second = (chi[i + 1] - 2.0 * chi[i] + chi[i - 1]) / (h * h);
        double const res = -k * second + (effective_potential(spec, r) - e) * chi[i];
        sum += res * res;
    }
    return {std::sqrt(sum / (points - 2)), s.peak};
}

} // namespace tietz
