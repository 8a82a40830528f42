#include "tietz/oracle.hpp"

#include "tietz/errors.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace tietz {

namespace {

constexpr double kRescale = 1e100;

/// Potential sampled once; every shot at a new energy reuses it.
class Grid
{
public:
    Grid(RadialProblem const& problem, int n_points)
        : k_(problem.hbar2_over_2mu), r_min_(problem.r_min),
          h_((problem.r_max - problem.r_min) / (n_points - 1)), v_(n_points)
    {
        for (int i = 1; i + 1 < n_points; ++i) {
            v_[i] = problem.potential(r(i));
            if (!std::isfinite(v_[i])) {
                throw DomainError(fmt::format("oracle: potential is not finite at r = {:.12g}", r(i)));
            }
        }
        v_min_ = *std::min_element(v_.begin() + 1, v_.end() - 1);
        // A repulsive wall that Numerov cannot resolve is replaced by chi = 0.
        first_ = 1;
        while (first_ < n_points - 3 && h_ * h_ * (v_[first_] - v_min_) / (12.0 * k_) >= 0.5) {
            ++first_;
        }
    }

    int size() const { return static_cast<int>(v_.size()); }
    double r(int i) const { return r_min_ + i * h_; }
    double v(int i) const { return v_[i]; }
    double v_min() const { return v_min_; }
    int first() const { return first_; }

    /// Numerov weight 1 + h^2 (E - V) / (12 k).
    double weight(int i, double energy) const { return 1.0 + h_ * h_ * (energy - v_[i]) / (12.0 * k_); }

private:
    double k_;
    double r_min_;
    double h_;
    std::vector<double> v_;
    double v_min_{0.0};
    int first_{1};
};

double numerov_step(Grid const& g, int from, int to, double energy, double prev, double cur)
{
    int const mid = (from + to) / 2;
    return ((12.0 - 10.0 * g.weight(mid, energy)) * cur - g.weight(from, energy) * prev) / g.weight(to, energy);
}

/// Sign changes of the outward solution over the whole grid: the number of
/// eigenvalues below `energy`.
int count_below(Grid const& g, double energy)
{
    double prev = 0.0;
    double cur = 1e-30;
    int sign = 1;
    int changes = 0;
    for (int i = g.first(); i + 1 < g.size() - 1; ++i) {
        double const next = numerov_step(g, i - 1, i + 1, energy, prev, cur);
        if (!std::isfinite(next)) {
            throw ConvergenceError("oracle: outward integration overflowed");
        }
        if (next != 0.0) {
            int const s = next > 0.0 ? 1 : -1;
            if (s != sign) {
                ++changes;
                sign = s;
            }
        }
        prev = cur;
        cur = next;
        if (std::abs(cur) > kRescale) {
            prev /= kRescale;
            cur /= kRescale;
        }
    }
    return changes;
}

struct Shot
{
    std::vector<double> chi;
    double wronskian{0.0};
};

/// Outward solution on [first, m+1], inward solution on [m, n-1], joined at m.
Shot shoot(Grid const& g, int m, double energy)
{
    int const n = g.size();
    std::vector<double> out(n, 0.0);
    out[g.first()] = 1e-30;
    for (int i = g.first(); i <= m; ++i) {
        out[i + 1] = numerov_step(g, i - 1, i + 1, energy, out[i - 1], out[i]);
        if (std::abs(out[i + 1]) > kRescale) {
            for (int j = g.first(); j <= i + 1; ++j) {
                out[j] /= kRescale;
            }
        }
    }
    std::vector<double> in(n, 0.0);
    in[n - 2] = 1e-30;
    for (int i = n - 2; i >= m; --i) {
        in[i - 1] = numerov_step(g, i + 1, i - 1, energy, in[i + 1], in[i]);
        if (std::abs(in[i - 1]) > kRescale) {
            for (int j = i - 1; j < n; ++j) {
                in[j] /= kRescale;
            }
        }
    }
    if (!std::isfinite(out[m + 1]) || !std::isfinite(in[m - 1])) {
        throw ConvergenceError("oracle: shooting overflowed");
    }

    // Scale-free Wronskian at the matching point.
    double const scale_out = std::hypot(out[m], out[m + 1]);
    double const scale_in = std::hypot(in[m], in[m + 1]);
    Shot shot;
    shot.wronskian = (out[m + 1] * in[m] - out[m] * in[m + 1]) / (scale_out * scale_in);

    double const join = in[m] != 0.0 ? out[m] / in[m] : 0.0;
    shot.chi.assign(n, 0.0);
    for (int i = 0; i < m; ++i) {
        shot.chi[i] = out[i];
    }
    for (int i = m; i < n; ++i) {
        shot.chi[i] = join * in[i];
    }
    return shot;
}

/// Classical turning point closest to the requested fraction of the domain.
int matching_index(Grid const& g, double energy, double fraction)
{
    int const lo = g.first() + 2;
    int const hi = g.size() - 4;
    int const target = std::clamp(static_cast<int>(std::lround(fraction * (g.size() - 1))), lo, hi);
    int best = target;
    int best_distance = std::numeric_limits<int>::max();
    for (int i = lo; i < hi; ++i) {
        bool const crossing = (g.v(i) - energy) * (g.v(i + 1) - energy) <= 0.0;
        if (crossing && std::abs(i - target) < best_distance) {
            best = i;
            best_distance = std::abs(i - target);
        }
    }
    return best;
}

int count_nodes(std::vector<double> const& chi)
{
    double peak = 0.0;
    for (double v : chi) {
        peak = std::max(peak, std::abs(v));
    }
    int nodes = 0;
    int sign = 0;
    for (double v : chi) {
        if (std::abs(v) <= 1e-12 * peak) {
            continue;
        }
        int const s = v > 0.0 ? 1 : -1;
        if (sign != 0 && s != sign) {
            ++nodes;
        }
        sign = s;
    }
    return nodes;
}

OracleLevel refine(Grid const& g, ShootingOptions const& options, int index, double lo, double hi)
{
    int const m = matching_index(g, 0.5 * (lo + hi), options.match_fraction);
    auto mismatch = [&](double e) { return shoot(g, m, e).wronskian; };
    auto converged = [&] { return hi - lo <= options.e_tol_rel * std::abs(0.5 * (lo + hi)); };
    double f_lo = mismatch(lo);
    bool const bracketed = (f_lo < 0.0) != (mismatch(hi) < 0.0);
    for (int it = 0; it < 400 && !converged(); ++it) {
        double const mid = 0.5 * (lo + hi);
        if (bracketed) {
            double const f_mid = mismatch(mid);
            if ((f_lo < 0.0) != (f_mid < 0.0)) {
                hi = mid;
            }
            else {
                lo = mid;
                f_lo = f_mid;
            }
        }
        else if (count_below(g, mid) > index) {
            hi = mid;
        }
        else {
            lo = mid;
        }
    }
    if (!converged()) {
        throw ConvergenceError(fmt::format("oracle: level {} did not converge", index));
    }
    OracleLevel result;
    result.level.n_r = index;
    result.level.energy = 0.5 * (lo + hi);
    result.level.method = LevelMethod::oracle;
    Shot const shot = shoot(g, m, result.level.energy);
    result.level.residual = std::abs(shot.wronskian);
    result.nodes = count_nodes(shot.chi);
    return result;
}

} // namespace

std::vector<double> OracleResult::energies() const
{
    std::vector<double> out;
    out.reserve(levels.size());
    for (auto const& l : levels) {
        out.push_back(l.level.energy);
    }
    return out;
}

OracleResult solve_radial(RadialProblem const& problem, ShootingOptions const& options, double ceiling,
                          int max_levels)
{
    if (!(problem.r_min < problem.r_max) || options.n_points < 101 || !(problem.hbar2_over_2mu > 0.0)) {
        throw DomainError("oracle: need r_min < r_max, n_points >= 101 and hbar^2/2mu > 0");
    }
    if (!(options.match_fraction > 0.0 && options.match_fraction < 1.0) || !(options.e_tol_rel > 0.0)) {
        throw DomainError("oracle: match_fraction must lie in (0, 1) and e_tol_rel must be > 0");
    }
    Grid const g(problem, options.n_points);
    OracleResult result;
    result.ceiling = ceiling;
    if (!(ceiling > g.v_min())) {
        return result;
    }
    int const available = std::min(count_below(g, ceiling), max_levels);
    double const span = ceiling - g.v_min();
    for (int index = 0; index < available; ++index) {
        // Bracket level `index` by node counting: count(lo) <= index < count(hi).
        double lo = result.levels.empty() ? g.v_min() : result.levels.back().level.energy;
        double hi = ceiling;
        while (hi - lo > 1e-3 * span) {
            double const mid = 0.5 * (lo + hi);
            if (count_below(g, mid) > index) {
                hi = mid;
            }
            else {
                lo = mid;
            }
        }
        result.levels.push_back(refine(g, options, index, lo, hi));
    }
    return result;
}

NumerovConfig NumerovConfig::defaults_for(PotentialParams const& p)
{
    Regime const regime = classify_regime(p);
    NumerovConfig cfg;
    cfg.r_min = regime.kind == RegimeKind::case1_mr ? *regime.r0 + 1e-6 : 1e-6;
    cfg.r_max = p.r_e + 30.0 / p.b_h;
    if (regime.kind == RegimeKind::case1_mr) {
        cfg.approx = fit_centrifugal_approx(p);
    }
    return cfg;
}

void NumerovConfig::validate(PotentialParams const& p) const
{
    if (!(r_min < r_max) || !(r_min > 0.0)) {
        throw DomainError("oracle: need 0 < r_min < r_max");
    }
    if (n_points < 101) {
        throw DomainError("oracle: n_points must be >= 101");
    }
    if (!(match_fraction > 0.0 && match_fraction < 1.0)) {
        throw DomainError("oracle: match_fraction must lie in (0, 1)");
    }
    if (!(e_tol_rel > 0.0)) {
        throw DomainError("oracle: e_tol_rel must be > 0");
    }
    Regime const regime = classify_regime(p);
    if (regime.kind == RegimeKind::case1_mr && !(r_min > *regime.r0)) {
        throw DomainError(fmt::format("oracle: case 1 needs r_min > r0 = {:.12g}", *regime.r0));
    }
}

OracleResult numerov_levels(PotentialParams const& p, int l, NumerovConfig const& cfg, int max_levels)
{
    p.validate();
    cfg.validate(p);
    if (l < 0) {
        throw DomainError("l must be >= 0");
    }
    double const rot = p.hbar2_over_2mu * l * (l + 1.0);
    CentrifugalMode const mode = l == 0 ? CentrifugalMode::none : cfg.centrifugal_mode;

    RadialProblem problem;
    problem.hbar2_over_2mu = p.hbar2_over_2mu;
    problem.r_min = cfg.r_min;
    problem.r_max = cfg.r_max;
    double ceiling = p.D;
    switch (mode) {
        case CentrifugalMode::none:
            problem.potential = [&p](double r) { return potential_eval(p, r); };
            break;
        case CentrifugalMode::exact:
            problem.potential = [&p, rot](double r) { return potential_eval(p, r) + rot / (r * r); };
            break;
        case CentrifugalMode::approximated: {
            CentrifugalApprox const a = cfg.approx;
            problem.potential = [&p, rot, a](double r) {
                return potential_eval(p, r) + rot * inverse_square_approx(a, p, r);
            };
            ceiling += rot * a.C0;
            break;
        }
    }
    ShootingOptions options;
    options.n_points = cfg.n_points;
    options.match_fraction = cfg.match_fraction;
    options.e_tol_rel = cfg.e_tol_rel;
    OracleResult result = solve_radial(problem, options, ceiling, max_levels);
    for (auto& level : result.levels) {
        level.level.l = l;
    }
    return result;
}

RichardsonReport richardson_check(PotentialParams const& p, int l, NumerovConfig const& cfg, int max_levels)
{
    RichardsonReport report;
    report.coarse = numerov_levels(p, l, cfg, max_levels);
    NumerovConfig fine = cfg;
    fine.n_points = 2 * cfg.n_points - 1;
    report.fine = numerov_levels(p, l, fine, max_levels);
    std::size_t const common = std::min(report.coarse.levels.size(), report.fine.levels.size());
    for (std::size_t i = 0; i < common; ++i) {
        double const a = report.coarse.levels[i].level.energy;
        double const b = report.fine.levels[i].level.energy;
        report.max_shift = std::max(report.max_shift, std::abs(a - b) / std::abs(b));
    }
    // A level that appears or vanishes with resolution is unresolved.
    if (report.coarse.levels.size() != report.fine.levels.size()) {
        report.max_shift = std::numeric_limits<double>::infinity();
    }
    report.warning = report.max_shift > 10.0 * cfg.e_tol_rel;
    return report;
}

} // namespace tietz
