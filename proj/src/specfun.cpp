#include "tietz/specfun.hpp"

#include "tietz/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>

namespace tietz {

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

// c-a-b closer than this to an integer goes to the wide path, where the
// connection formula is evaluated at c +- wide_shift() and averaged.
constexpr double kConnectionGap = 1e-3;
// Up to here the direct series is tried first for z > 1/2.
constexpr double kDirectSeriesLimit = 0.9;
// Sum of |contributions| over |result| above which a double result is redone wide.
constexpr double kMaxCancellation = 1e3;
constexpr double kWideTolerance = 1e-40;

Wide const& wide_shift()
{
    static Wide const shift("1e-20");
    return shift;
}

template <class T>
bool is_nonpositive_integer(T const& x)
{
    using std::floor;
    return x <= 0 && x == floor(x);
}

template <class T>
struct Sum
{
    T value;
    T magnitude; ///< sum of |terms|
};

template <class T>
T tolerance_for(SeriesControl const& ctrl)
{
    if constexpr (std::is_same_v<T, double>) {
        return ctrl.rel_tolerance;
    }
    else {
        return T(kWideTolerance);
    }
}

template <class T>
double to_double(T const& x)
{
    return static_cast<double>(x);
}

template <class T>
Sum<T> terminating(int n, T const& b, T const& c, T const& z)
{
    using std::abs;
    T term = 1, sum = 1, mag = 1;
    for (int k = 0; k < n; ++k) {
        term *= T(k - n) * (b + k) * z / ((c + k) * (k + 1));
        sum += term;
        mag += abs(term);
    }
    return {sum, mag};
}

/// Shared tail loop: `ratio(n)` gives term_{n+1}/term_n.
template <class T, class Ratio>
Sum<T> sum_series(Ratio ratio, double settle, SeriesControl const& ctrl, char const* who)
{
    using std::abs;
    T const tol = tolerance_for<T>(ctrl);
    T term = 1, sum = 1, mag = 1;
    int small_run = 0;
    for (int n = 0; n < ctrl.max_terms; ++n) {
        T const r = ratio(n);
        term *= r;
        sum += term;
        mag += abs(term);
        if (!boost::math::isfinite(mag)) {
            throw ConvergenceError(std::string(who) + ": series overflow");
        }
        if (term == 0) {
            return {sum, mag};
        }
        // A sum that cancels to ~0 is judged against its magnitude instead.
        bool const small = abs(term) <= tol * abs(sum) || abs(term) <= tol * T(1e-3) * mag;
        small_run = small ? small_run + 1 : 0;
        // Past `settle` every Pochhammer factor keeps its sign.
        if (small_run >= 2 && n + 1 > settle && abs(r) < 1) {
            return {sum, mag};
        }
    }
    throw ConvergenceError(std::string(who) + ": no convergence after " + std::to_string(ctrl.max_terms) + " terms");
}

template <class T>
Sum<T> power_series(T const& a, T const& b, T const& c, T const& z, SeriesControl const& ctrl)
{
    double const settle = std::max({0.0, -to_double(a), -to_double(b), -to_double(c)}) + 1.0;
    return sum_series<T>([&](int n) { return T((a + n) * (b + n) * z / ((c + n) * (n + 1))); }, settle, ctrl,
                         "gauss_2f1");
}

template <class T>
Sum<T> series_or_polynomial(T const& a, T const& b, T const& c, T const& z, SeriesControl const& ctrl)
{
    bool const a_int = is_nonpositive_integer(a);
    bool const b_int = is_nonpositive_integer(b);
    if (a_int && (!b_int || a >= b)) {
        return terminating<T>(static_cast<int>(-to_double(a)), b, c, z);
    }
    if (b_int) {
        return terminating<T>(static_cast<int>(-to_double(b)), a, c, z);
    }
    return power_series<T>(a, b, c, z, ctrl);
}

template <class T>
struct LogGamma
{
    T log_abs;
    int sign; ///< 0 at a pole, where 1/Gamma vanishes
};

template <class T>
LogGamma<T> log_gamma_of(T const& x)
{
    if (is_nonpositive_integer(x)) {
        return {T(0), 0};
    }
    int sign = 1;
    T const lg = boost::math::lgamma(x, &sign);
    return {lg, sign};
}

/// z -> 1-z connection formula; c-a-b must not be an integer.
template <class T>
Sum<T> connection(T const& a, T const& b, T const& c, T const& z, SeriesControl const& ctrl)
{
    using std::abs;
    using std::exp;
    using std::log;
    T const w = 1 - z;
    T const m = c - a - b;
    LogGamma<T> const gc = log_gamma_of(c);
    Sum<T> out{T(0), T(0)};

    auto add = [&](LogGamma<T> const& num, LogGamma<T> const& den1, LogGamma<T> const& den2, T const& log_w_power,
                   Sum<T> const& series) {
        if (den1.sign == 0 || den2.sign == 0) {
            return;
        }
        T const log_coef = gc.log_abs + num.log_abs - den1.log_abs - den2.log_abs + log_w_power;
        int const sign = gc.sign * num.sign * den1.sign * den2.sign;
        if (series.value != 0) {
            T const v = exp(log_coef + log(abs(series.value)));
            out.value += (series.value < 0 ? -sign : sign) * v;
        }
        out.magnitude += exp(log_coef + log(series.magnitude));
    };

    add(log_gamma_of(m), log_gamma_of(T(c - a)), log_gamma_of(T(c - b)), T(0),
        series_or_polynomial<T>(a, b, T(1 - m), w, ctrl));
    add(log_gamma_of(T(-m)), log_gamma_of(a), log_gamma_of(b), T(m * log(w)),
        series_or_polynomial<T>(T(c - a), T(c - b), T(1 + m), w, ctrl));
    return out;
}

Sum<Wide> wide_connection(double a, double b, double c, double z, SeriesControl const& ctrl)
{
    Wide const wa(a), wb(b), wc(c), wz(z);
    Wide const m = wc - wa - wb;
    if (abs(m - round(m)) > Wide(1e-10)) {
        return connection<Wide>(wa, wb, wc, wz, ctrl);
    }
    // Symmetric shift of c: the poles cancel and the error is O(shift^2).
    Sum<Wide> const lo = connection<Wide>(wa, wb, Wide(wc - wide_shift()), wz, ctrl);
    Sum<Wide> const hi = connection<Wide>(wa, wb, Wide(wc + wide_shift()), wz, ctrl);
    return {(lo.value + hi.value) / 2, (lo.magnitude + hi.magnitude) / 2};
}

double cancellation(Sum<double> const& s)
{
    double const r = s.magnitude / std::abs(s.value);
    return std::isfinite(r) ? r : std::numeric_limits<double>::infinity();
}

bool well_conditioned(Sum<double> const& s)
{
    return cancellation(s) <= kMaxCancellation;
}

template <class T>
Sum<T> kummer_series(T const& a, T const& b, T const& z, SeriesControl const& ctrl)
{
    using std::abs;
    using std::exp;
    if (is_nonpositive_integer(a)) {
        int const n = static_cast<int>(-to_double(a));
        T term = 1, sum = 1, mag = 1;
        for (int k = 0; k < n; ++k) {
            term *= T(k - n) * z / ((b + k) * (k + 1));
            sum += term;
            mag += abs(term);
        }
        return {sum, mag};
    }
    if (z < 0) {
        // Kummer's transformation: all terms positive when b-a and b are.
        Sum<T> const s = kummer_series<T>(T(b - a), b, T(-z), ctrl);
        T const e = exp(z);
        return {T(e * s.value), T(e * s.magnitude)};
    }
    double const settle = std::max({0.0, -to_double(a), -to_double(b)}) + 1.0;
    return sum_series<T>([&](int n) { return T((a + n) * z / ((b + n) * (n + 1))); }, settle, ctrl, "kummer_1f1");
}

} // namespace

void SeriesControl::validate() const
{
    if (!(rel_tolerance > 0.0)) {
        throw DomainError("SeriesControl: rel_tolerance must be positive");
    }
    if (max_terms < 1) {
        throw DomainError("SeriesControl: max_terms must be at least 1");
    }
}

double SignedLog::value() const
{
    if (sign == 0) {
        return 0.0;
    }
    return sign * std::exp(log_abs);
}

double log_gamma(double x)
{
    if (!(x > 0.0)) {
        throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
    }
    return boost::math::lgamma(x);
}

SignedLog log_gamma_signed(double x)
{
    if (std::isnan(x) || is_nonpositive_integer(x)) {
        throw DomainError("log_gamma_signed: pole of Gamma at " + std::to_string(x));
    }
    int sign = 1;
    double const lg = boost::math::lgamma(x, &sign);
    return {lg, sign};
}

SignedLog log_reciprocal_gamma(double x)
{
    if (is_nonpositive_integer(x)) {
        return {0.0, 0};
    }
    SignedLog const g = log_gamma_signed(x);
    return {-g.log_abs, g.sign};
}

bool near_nonpositive_integer(double x, double tol)
{
    double const n = std::round(x);
    return n <= 0.0 && std::abs(x - n) <= tol * std::max(1.0, -n);
}

namespace detail {

double hyp2f1_terminating(int n, double b, double c, double z)
{
    return terminating<double>(n, b, c, z).value;
}

double hyp2f1_power_series(double a, double b, double c, double z, SeriesControl const& ctrl)
{
    return power_series<double>(a, b, c, z, ctrl).value;
}

double hyp2f1_connection(double a, double b, double c, double z, SeriesControl const& ctrl)
{
    return connection<double>(a, b, c, z, ctrl).value;
}

} // namespace detail

double gauss_2f1(double a, double b, double c, double z, SeriesControl const& ctrl)
{
    ctrl.validate();
    if (!(z >= 0.0 && z < 1.0)) {
        throw DomainError("gauss_2f1: z must lie in [0, 1), got " + std::to_string(z));
    }
    if (is_nonpositive_integer(c)) {
        throw DomainError("gauss_2f1: c must not be a non-positive integer");
    }
    if (z == 0.0) {
        return 1.0;
    }
    bool const terminates = is_nonpositive_integer(a) || is_nonpositive_integer(b);
    if (z <= 0.5 || terminates) {
        Sum<double> const fast = series_or_polynomial<double>(a, b, c, z, ctrl);
        if (well_conditioned(fast)) {
            return fast.value;
        }
        return static_cast<double>(series_or_polynomial<Wide>(Wide(a), Wide(b), Wide(c), Wide(z), ctrl).value);
    }
    // Both representations are valid on (1/2, 1); large parameters can make
    // either one cancel badly, so take the one that does not.
    double direct_loss = std::numeric_limits<double>::infinity();
    if (z <= kDirectSeriesLimit) {
        Sum<double> const fast = power_series<double>(a, b, c, z, ctrl);
        if (well_conditioned(fast)) {
            return fast.value;
        }
        direct_loss = cancellation(fast);
    }
    double connection_loss = std::numeric_limits<double>::infinity();
    double const m = c - a - b;
    if (std::abs(m - std::round(m)) > kConnectionGap) {
        Sum<double> const fast = connection<double>(a, b, c, z, ctrl);
        if (well_conditioned(fast)) {
            return fast.value;
        }
        connection_loss = cancellation(fast);
    }
    if (direct_loss < connection_loss) {
        return static_cast<double>(power_series<Wide>(Wide(a), Wide(b), Wide(c), Wide(z), ctrl).value);
    }
    return static_cast<double>(wide_connection(a, b, c, z, ctrl).value);
}

double kummer_1f1(double a, double b, double z, SeriesControl const& ctrl)
{
    ctrl.validate();
    if (is_nonpositive_integer(b)) {
        throw DomainError("kummer_1f1: b must not be a non-positive integer");
    }
    Sum<double> const fast = kummer_series<double>(a, b, z, ctrl);
    if (well_conditioned(fast)) {
        return fast.value;
    }
    return static_cast<double>(kummer_series<Wide>(Wide(a), Wide(b), Wide(z), ctrl).value);
}

} // namespace tietz
