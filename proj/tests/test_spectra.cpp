#include "tietz/errors.hpp"
#include "tietz/oracle.hpp"
#include "tietz/spectra.hpp"

#include <boost/math/tools/roots.hpp>

#include <doctest.h>

#include <cmath>
#include <random>

using namespace tietz;

namespace {

double rel(double got, double want)
{
    return std::abs(got - want) / std::abs(want);
}

/// Oracle domain long enough for the shallowest level, at the default spacing.
NumerovConfig oracle_config(PotentialParams const& p, double shallowest)
{
    NumerovConfig cfg = NumerovConfig::defaults_for(p);
    double const spacing = (cfg.r_max - cfg.r_min) / (cfg.n_points - 1);
    double const kappa = std::sqrt((p.D - shallowest) / p.hbar2_over_2mu);
    cfg.r_max = std::max(cfg.r_max, p.r_e + 40.0 / kappa + 5.0 / p.b_h);
    cfg.n_points = static_cast<int>((cfg.r_max - cfg.r_min) / spacing) + 1;
    return cfg;
}

void check_against_oracle(PotentialParams const& p, std::vector<BoundLevel> const& levels, double tol,
                          int l = 0, CentrifugalMode mode = CentrifugalMode::none,
                          CentrifugalApprox const& approx = {})
{
    REQUIRE(!levels.empty());
    NumerovConfig cfg = oracle_config(p, levels.back().energy);
    cfg.centrifugal_mode = mode;
    cfg.approx = approx;
    OracleResult const oracle = numerov_levels(p, l, cfg, 1000);
    CHECK(oracle.levels.size() == levels.size());
    for (std::size_t i = 0; i < std::min(levels.size(), oracle.levels.size()); ++i) {
        CAPTURE(i);
        CHECK(rel(levels[i].energy, oracle.levels[i].level.energy) <= tol);
        CHECK(oracle.levels[i].nodes == levels[i].n_r);
    }
}

PotentialParams synthetic(double c_h)
{
    return PotentialParams::natural(10.0, 2.0, 1.0, c_h);
}

} // namespace

TEST_CASE("case 1 closed form against the oracle, l = 0")
{
    PotentialParams const sets[] = {
        synthetic(0.5),
        PotentialParams::natural(25.0, 1.5, 1.2, 0.4),
        PotentialParams::natural(40.0, 3.0, 0.8, 0.7),
    };
    for (auto const& p : sets) {
        CAPTURE(p.D);
        check_against_oracle(p, case1_levels(p, 0), 1e-6);
    }
}

TEST_CASE("case 1 closed form against the oracle on the approximated potential, l = 1, 2")
{
    auto const p = synthetic(0.5);
    CentrifugalApprox const fit = fit_centrifugal_approx(p);
    for (int l : {1, 2}) {
        CAPTURE(l);
        check_against_oracle(p, case1_levels(p, l, fit), 1e-6, l, CentrifugalMode::approximated, fit);
    }
}

TEST_CASE("case 1 energies depend on n_r and delta_l only through N_r")
{
    auto const p = synthetic(0.5);
    Case1Auxiliaries const aux0 = case1_auxiliaries(p, 0, 0);
    // l = 1 with B0 = A0/c and C0 = 0 shifts delta_l by exactly one and leaves lambda_l and V0^l alone.
    CentrifugalApprox shift;
    shift.A0 = (2.0 * aux0.delta_l + 1.0) * p.b_h * p.b_h * p.c_h * p.c_h / 2.0;
    shift.B0 = shift.A0 / p.c_h;
    shift.C0 = 0.0;
    Case1Auxiliaries const aux1 = case1_auxiliaries(p, 1, 0, shift);
    CHECK(aux1.delta_l == doctest::Approx(aux0.delta_l + 1.0).epsilon(1e-14));
    CHECK(aux1.lambda_l == doctest::Approx(aux0.lambda_l).epsilon(1e-14));
    CHECK(rel(case1_energy(p, 1, 0, shift).energy, case1_energy(p, 0, 1).energy) < 1e-14);
}

TEST_CASE("centrifugal coefficients are irrelevant for l = 0")
{
    auto const p = synthetic(0.5);
    CentrifugalApprox const fit = fit_centrifugal_approx(p);
    for (int n = 0; n < case1_level_count(p, 0); ++n) {
        CHECK(case1_energy(p, 0, n, fit).energy == case1_energy(p, 0, n).energy);
    }
}

TEST_CASE("case 1 level count")
{
    // c = 0.5, hbar^2/2mu = b = 1: sqrt(lambda) - delta - 1/2 = sqrt(3D) - sqrt(D + 1/4) - 1/2.
    auto bound = [](double D) { return std::sqrt(3.0 * D) - std::sqrt(D + 0.25) - 0.5; };
    auto solve = [&](double target) {
        auto const [lo, hi] = boost::math::tools::bisect([&](double D) { return bound(D) - target; }, 1e-9, 500.0,
                                                        boost::math::tools::eps_tolerance<double>(50));
        return 0.5 * (lo + hi);
    };
    auto p = synthetic(0.5);
    p.D = solve(3.2);
    Case1Auxiliaries const aux = case1_auxiliaries(p, 0, 0);
    CHECK(std::sqrt(aux.lambda_l) - aux.delta_l - 0.5 == doctest::Approx(3.2).epsilon(1e-12));
    CHECK(case1_level_count(p, 0) == 4);
    CHECK_NOTHROW(case1_energy(p, 0, 3));
    CHECK_THROWS_AS(case1_energy(p, 0, 4), IndexError);

    p.D = solve(2.999);
    CHECK(case1_level_count(p, 0) == 3);

    p.D = solve(-0.3); // lambda <= (delta + 1/2)^2
    CHECK(case1_level_count(p, 0) == 0);
    CHECK(case1_levels(p, 0).empty());
    CHECK_THROWS_AS(case1_energy(p, 0, 0), IndexError);
}

TEST_CASE("pole residual of the closed-form energies")
{
    PotentialParams const sets[] = {synthetic(0.5), PotentialParams::natural(25.0, 1.5, 1.2, 0.4),
                                    PotentialParams::natural(400.0, 3.0, 0.8, 0.7)};
    for (auto const& p : sets) {
        CentrifugalApprox const fit = fit_centrifugal_approx(p);
        for (int l = 0; l <= 3; ++l) {
            for (int n = 0; n < case1_level_count(p, l, fit); ++n) {
                CHECK(case1_pole_residual(p, l, n, fit) <= 1e-10);
            }
        }
    }
    auto const p = synthetic(0.5);
    CHECK(case1_pole_residual(p, 0, 0) <= 1e-12);
    double const e0 = case1_energy(p, 0, 0).energy;
    CHECK(case1_pole_residual_at(p, 0, 0, e0 + 0.01 * p.D) > 1e-4);
    CHECK(case1_pole_residual_at(p, 0, 0, e0) <= 1e-12);
}

TEST_CASE("case 1 Green's function")
{
    auto const p = synthetic(0.5);
    double const e0 = case1_energy(p, 0, 0).energy;
    double const e1 = case1_energy(p, 0, 1).energy;
    GreenValue const mid = case1_green_function(p, 0, 1.8, 2.5, 0.5 * (e0 + e1));
    CHECK(std::isfinite(mid.value));
    CHECK(mid.value != 0.0);
    CHECK(mid.scale == doctest::Approx(1.0));

    GreenValue const near = case1_green_function(p, 0, 1.8, 2.5, e0 + 1e-9 * p.D);
    CHECK(std::abs(near.value) >= 1e3 * std::abs(mid.value));
    CHECK_THROWS_AS(case1_green_function(p, 0, 1.8, 2.5, e0), SingularityError);

    // Below the ground state every gamma argument is positive and so is G.
    GreenValue const deep = case1_green_function(p, 0, 2.2, 2.2, 0.05 * e0);
    CHECK(std::isfinite(deep.value));
    CHECK(deep.value > 0.0);

    // Symmetric in its two radii.
    CHECK(rel(case1_green_function(p, 0, 2.5, 1.8, 0.5 * (e0 + e1)).value, mid.value) < 1e-12);
    CHECK_THROWS_AS(case1_green_function(p, 0, 1.0, 2.5, 0.5 * (e0 + e1)), DomainError);
}

TEST_CASE("case 2 roots against the oracle")
{
    PotentialParams const sets[] = {synthetic(0.05), PotentialParams::natural(30.0, 1.5, 1.5, 0.02)};
    for (auto const& p : sets) {
        LevelScan const scan = transcendental_case2_levels(p, RootScanConfig::defaults_for(p));
        CHECK(!scan.possibly_incomplete());
        for (auto const& level : scan.levels) {
            CHECK(std::abs(case2_quantization(p, level.energy)) <= 1e-10 * scan.f_scale);
            CHECK(level.energy > 0.0);
            CHECK(level.energy < p.D);
            CHECK(level.method == LevelMethod::transcendental_case2);
        }
        check_against_oracle(p, scan.levels, 1e-5);
    }
}

TEST_CASE("case 3 roots against the oracle")
{
    PotentialParams const sets[] = {synthetic(-0.3), PotentialParams::natural(30.0, 1.5, 1.5, -0.6)};
    for (auto const& p : sets) {
        LevelScan const scan = transcendental_case3_levels(p, RootScanConfig::defaults_for(p));
        CHECK(!scan.possibly_incomplete());
        for (auto const& level : scan.levels) {
            CHECK(std::abs(case3_quantization(p, level.energy)) <= 1e-10 * scan.f_scale);
            CHECK(level.energy > 0.0);
            CHECK(level.energy < p.D);
        }
        check_against_oracle(p, scan.levels, 1e-5);
    }
}

TEST_CASE("case 3 hypergeometric argument lies in (0, 1)")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> cc(1e-6, 1.0 - 1e-6), bb(0.1, 5.0), ee(0.1, 5.0);
    for (int i = 0; i < 1000; ++i) {
        auto const p = PotentialParams::natural(10.0, ee(rng), bb(rng), -cc(rng));
        double const z = case3_quantization_args(p, 0.5 * p.D).z;
        CHECK(z > 0.0);
        CHECK(z < 1.0);
    }
}

TEST_CASE("case 3 approaches the Morse spectrum as c_h -> 0")
{
    auto const morse = morse_levels(synthetic(0.0));
    REQUIRE(!morse.empty());
    double previous = INFINITY;
    for (double g : {1e-2, 1e-3}) {
        auto const p = synthetic(-g);
        LevelScan const scan = transcendental_case3_levels(p, RootScanConfig::defaults_for(p));
        REQUIRE(!scan.levels.empty());
        double const deviation = std::abs(scan.levels[0].energy - morse[0].energy);
        CAPTURE(g);
        CHECK(deviation < previous);
        previous = deviation;
        if (g == 1e-3) {
            CHECK(deviation <= 1e-3 * p.D);
        }
    }
}

TEST_CASE("Morse spectrum")
{
    auto const p = PotentialParams::natural(25.0, 10.0, 1.0, 0.0);
    CHECK(morse_depth_parameter(p) == doctest::Approx(5.0).epsilon(1e-15));
    auto const levels = morse_levels(p);
    REQUIRE(levels.size() == 5);
    CHECK(levels[0].energy == doctest::Approx(4.75).epsilon(1e-15));
    for (std::size_t i = 1; i < levels.size(); ++i) {
        CHECK(levels[i].energy > levels[i - 1].energy);
    }
    CHECK(levels.back().energy < p.D);
    check_against_oracle(p, levels, 1e-6);
    CHECK_THROWS_AS(morse_levels(synthetic(0.5)), RegimeError);
}

TEST_CASE("root scan flags sign changes in adjacent cells")
{
    auto const p = PotentialParams::natural(100.0, 2.0, 1.0, 0.05);
    auto const all = transcendental_case2_levels(p, RootScanConfig::defaults_for(p)).levels;
    REQUIRE(all.size() >= 3);
    bool tried = false;
    for (std::size_t i = 0; i + 1 < all.size() && !tried; ++i) {
        // Grid step equal to the gap: roots i and i+1 fall into cells j and j+1.
        double const h = all[i + 1].energy - all[i].energy;
        for (int j = 0; j <= 13 && !tried; ++j) {
            RootScanConfig scan;
            scan.grid_points = 16;
            scan.e_min = all[i].energy - (j + 0.5) * h;
            scan.e_max = scan.e_min + 15.0 * h;
            if (scan.e_min <= 0.0 || scan.e_max >= p.D) {
                continue;
            }
            tried = true;
            LevelScan const coarse = transcendental_case2_levels(p, scan);
            CHECK(coarse.possibly_incomplete());
        }
    }
    CHECK(tried);
}

TEST_CASE("configuration and regime errors")
{
    auto const p2 = synthetic(0.05);
    RootScanConfig scan = RootScanConfig::defaults_for(p2);
    CHECK(scan.e_min == doctest::Approx(1e-9 * p2.D));
    CHECK(scan.e_max == doctest::Approx(p2.D * (1.0 - 1e-9)));
    scan.e_max = 1.1 * p2.D;
    CHECK_THROWS_AS(transcendental_case2_levels(p2, scan), DomainError);
    scan = RootScanConfig::defaults_for(p2);
    scan.grid_points = 15;
    CHECK_THROWS_AS(scan.validate(p2), DomainError);
    scan = RootScanConfig::defaults_for(p2);
    std::swap(scan.e_min, scan.e_max);
    CHECK_THROWS_AS(scan.validate(p2), DomainError);

    CHECK_THROWS_AS(case1_energy(p2, 0, 0), RegimeError);
    CHECK_THROWS_AS(transcendental_case3_levels(p2, RootScanConfig::defaults_for(p2)), RegimeError);
    CHECK_THROWS_AS(transcendental_case2_levels(synthetic(-0.3), RootScanConfig::defaults_for(p2)), RegimeError);
    CHECK_THROWS_AS(bound_levels(p2, 1, {}, RootScanConfig::defaults_for(p2)), RegimeError);
    CHECK_THROWS_AS(case1_energy(synthetic(0.5), -1, 0), DomainError);

    auto const p1 = synthetic(0.5);
    CHECK(bound_levels(p1, 0, {}, RootScanConfig::defaults_for(p1)).levels.size() ==
          static_cast<std::size_t>(case1_level_count(p1, 0)));
    CHECK(to_string(LevelMethod::transcendental_case3) == "transcendental_case3");
}
