#include "tietz/errors.hpp"
#include "tietz/specfun.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <doctest.h>

#include <cmath>
#include <random>

using namespace tietz;

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;
using Rational = boost::multiprecision::cpp_rational;

double rel(double got, double want)
{
    return std::abs(got - want) / std::abs(want);
}

/// Partial sum of the Gauss series in 50-digit arithmetic.
double big_2f1(double a, double b, double c, double z, int terms)
{
    Big term = 1, sum = 1;
    for (int n = 0; n < terms; ++n) {
        term *= (Big(a) + n) * (Big(b) + n) / ((Big(c) + n) * (n + 1)) * Big(z);
        sum += term;
    }
    return sum.convert_to<double>();
}

double big_1f1(double a, double b, double z, int terms)
{
    Big term = 1, sum = 1;
    for (int n = 0; n < terms; ++n) {
        term *= (Big(a) + n) / ((Big(b) + n) * (n + 1)) * Big(z);
        sum += term;
    }
    return sum.convert_to<double>();
}

} // namespace

TEST_CASE("log_gamma at exact points")
{
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(rel(log_gamma(0.5), std::log(std::sqrt(M_PI))) < 1e-14);
    CHECK(rel(log_gamma(5.0), std::log(24.0)) < 1e-14);
    CHECK(std::abs(0.5723649429 - log_gamma(0.5)) < 1e-10);
}

TEST_CASE("log_gamma rejects non-positive arguments")
{
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-2.5), DomainError);
}

TEST_CASE("log_gamma against 50-digit reference over [1e-3, 1e4]")
{
    double worst = 0.0;
    for (double x = 1e-3; x <= 1e4; x *= 1.37) {
        Big const ref = boost::math::lgamma(Big(x));
        double const got = log_gamma(x);
        double const r = ref.convert_to<double>();
        // ln Gamma has a zero near x = 1 and x = 2; compare absolutely there.
        worst = std::max(worst, std::abs(got - r) / std::max(std::abs(r), 1.0));
    }
    CHECK(worst <= 1e-13);
}

TEST_CASE("signed log gamma and reciprocal gamma")
{
    SignedLog const g = log_gamma_signed(-0.5); // Gamma(-1/2) = -2 sqrt(pi)
    CHECK(g.sign == -1);
    CHECK(rel(g.value(), -2.0 * std::sqrt(M_PI)) < 1e-14);
    CHECK_THROWS_AS(log_gamma_signed(-3.0), DomainError);
    CHECK(log_reciprocal_gamma(-3.0).sign == 0);
    CHECK(log_reciprocal_gamma(-3.0).value() == 0.0);
}

TEST_CASE("gauss_2f1 closed forms")
{
    CHECK(gauss_2f1(2.3, -4.1, 1.7, 0.0) == 1.0);
    for (double z : {0.1, 0.45, 0.8, 0.95}) {
        CHECK(rel(gauss_2f1(-1.0, 3.3, 1.4, z), 1.0 - 3.3 / 1.4 * z) < 1e-15);
        CHECK(rel(gauss_2f1(1.0, 1.0, 2.0, z), -std::log1p(-z) / z) < 1e-14);
    }
    CHECK(std::abs(gauss_2f1(1.0, 1.0, 2.0, 0.5) - 1.3862943611) < 1e-10);
}

TEST_CASE("gauss_2f1 against rational-arithmetic series")
{
    // a = 3/10, b = 17/10, c = 22/10, z = 9/10, 200 exact terms.
    Rational term = 1, sum = 1;
    Rational const a(3, 10), b(17, 10), c(22, 10), z(9, 10);
    for (int n = 0; n < 200; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z;
        sum += term;
    }
    double const partial = static_cast<double>(sum);
    double const got = gauss_2f1(0.3, 1.7, 2.2, 0.9);
    // The 200-term partial sum stops short of the limit by ~1e-11 relative.
    CHECK(rel(got, partial) < 1e-9);
    CHECK(got > partial);
    CHECK(rel(got, big_2f1(0.3, 1.7, 2.2, 0.9, 6000)) < 1e-13);
}

TEST_CASE("gauss_2f1 against 50-digit series, large parameters and z > 1/2")
{
    struct Case
    {
        double a, b, c, z;
    };
    Case const cases[] = {
        {12.5, -7.25, 3.5, 0.3},  {40.0, 35.5, 60.25, 0.45}, {-20.5, 30.25, 12.75, 0.2}, {0.3, 1.7, 2.2, 0.75},
        {2.5, 3.25, 4.0, 0.85},   {1.1, 2.2, 3.3, 0.97},     {-3.5, 6.5, 2.25, 0.7},    {7.5, 1.25, 20.5, 0.9},
        {0.5, 0.5, 1.0, 0.6},     {-9.0, 14.5, 3.5, 0.9},    {4.0, 5.0, 9.0, 0.8},       {3.5, 2.0, 6.5005, 0.75},
    };
    for (auto const& t : cases) {
        CAPTURE(t.a);
        CAPTURE(t.b);
        CAPTURE(t.c);
        CAPTURE(t.z);
        double const ref = big_2f1(t.a, t.b, t.c, t.z, 20000);
        CHECK(rel(gauss_2f1(t.a, t.b, t.c, t.z), ref) < 1e-11);
    }
}

TEST_CASE("gauss_2f1 domain and convergence errors")
{
    CHECK_THROWS_AS(gauss_2f1(1.0, 1.0, 2.0, 1.0), DomainError);
    CHECK_THROWS_AS(gauss_2f1(1.0, 1.0, 2.0, -0.1), DomainError);
    CHECK_THROWS_AS(gauss_2f1(1.0, 1.0, -2.0, 0.3), DomainError);
    SeriesControl tight;
    tight.max_terms = 5;
    CHECK_THROWS_AS(gauss_2f1(0.3, 1.7, 2.2, 0.4, tight), ConvergenceError);
    SeriesControl bad;
    bad.rel_tolerance = 0.0;
    CHECK_THROWS_AS(gauss_2f1(0.3, 1.7, 2.2, 0.4, bad), DomainError);
}

TEST_CASE("Gauss summation recovered through the z -> 1 - z transformation")
{
    struct Case
    {
        double a, b, c;
    };
    Case const cases[] = {{0.3, 0.7, 2.5}, {1.2, -0.4, 3.1}, {2.5, 1.5, 5.2}, {-1.5, 0.5, 1.8}, {3.25, 4.5, 9.0}};
    for (auto const& t : cases) {
        double const limit = std::exp(log_gamma_signed(t.c).log_abs + log_gamma_signed(t.c - t.a - t.b).log_abs -
                                      log_gamma_signed(t.c - t.a).log_abs - log_gamma_signed(t.c - t.b).log_abs) *
                             log_gamma_signed(t.c).sign * log_gamma_signed(t.c - t.a - t.b).sign *
                             log_gamma_signed(t.c - t.a).sign * log_gamma_signed(t.c - t.b).sign;
        CAPTURE(t.a);
        CHECK(rel(gauss_2f1(t.a, t.b, t.c, 1.0 - 1e-13), limit) < 1e-10);
    }
}

TEST_CASE("contiguous relation in a")
{
    // (c - a) F(a - 1) + (2a - c + (b - a) z) F(a) + a (z - 1) F(a + 1) = 0
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> ab(-50.0, 50.0);
    std::uniform_real_distribution<double> cc(0.5, 60.0);
    std::uniform_real_distribution<double> zz(0.05, 0.9);
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
        double const a = ab(rng), b = ab(rng), c = cc(rng), z = zz(rng);
        double const t1 = (c - a) * gauss_2f1(a - 1.0, b, c, z);
        double const t2 = (2.0 * a - c + (b - a) * z) * gauss_2f1(a, b, c, z);
        double const t3 = a * (z - 1.0) * gauss_2f1(a + 1.0, b, c, z);
        double const scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
        worst = std::max(worst, std::abs(t1 + t2 + t3) / scale);
    }
    CHECK(worst <= 1e-11);
}

TEST_CASE("terminating polynomial agrees with the generic series")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> bb(-30.0, 30.0);
    std::uniform_real_distribution<double> cc(0.5, 30.0);
    std::uniform_real_distribution<double> zz(0.0, 0.5);
    SeriesControl const ctrl;
    for (int n = 0; n <= 12; ++n) {
        for (int i = 0; i < 20; ++i) {
            double const b = bb(rng), c = cc(rng), z = zz(rng);
            double const poly = detail::hyp2f1_terminating(n, b, c, z);
            double const series = detail::hyp2f1_power_series(-n, b, c, z, ctrl);
            double scale = 0.0, term = 1.0;
            for (int k = 0; k <= n; ++k) {
                scale += std::abs(term);
                term *= (k - n) * (b + k) / ((c + k) * (k + 1.0)) * z;
            }
            CHECK(std::abs(poly - series) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("kummer_1f1 closed forms and reference series")
{
    CHECK(kummer_1f1(2.7, 1.3, 0.0) == 1.0);
    for (double z : {-12.0, -1.5, 0.3, 4.0, 25.0}) {
        CAPTURE(z);
        CHECK(rel(kummer_1f1(3.3, 3.3, z), std::exp(z)) < 1e-13);
        CHECK(rel(kummer_1f1(-1.0, 2.5, z), 1.0 - z / 2.5) < 1e-14);
    }
    CHECK(rel(kummer_1f1(0.7, 2.2, 8.5), big_1f1(0.7, 2.2, 8.5, 400)) < 1e-13);
    CHECK(rel(kummer_1f1(-4.0, 3.5, 12.0), big_1f1(-4.0, 3.5, 12.0, 10)) < 1e-13);
    CHECK(rel(kummer_1f1(1.5, 4.5, -20.0), big_1f1(1.5, 4.5, -20.0, 400)) < 1e-11);
    CHECK_THROWS_AS(kummer_1f1(1.0, -3.0, 0.5), DomainError);
    SeriesControl tight;
    tight.max_terms = 3;
    CHECK_THROWS_AS(kummer_1f1(0.7, 2.2, 8.5, tight), ConvergenceError);
}
