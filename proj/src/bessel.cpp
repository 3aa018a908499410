#include "hcm/bessel.hpp"
#include "hcm/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hcm {
namespace detail {

double bessel_j_series(double nu, double x) {
    // J_nu(x) = sum_k (-1)^k (x/2)^{nu+2k} / (k! Gamma(nu+k+1)),
    // built by term recurrence term_{k+1} = -term_k * (x^2/4)/((k+1)(nu+k+1)).
    const double q = 0.25 * x * x;
    double term = std::pow(0.5 * x, nu) / std::tgamma(nu + 1.0);
    double sum = term;
    for (int k = 1; k <= 200; ++k) {
        term *= -q / (k * (nu + k));
        sum += term;
        if (std::abs(term) <= 1e-18 * std::max(1.0, std::abs(sum)))
            return sum;
    }
    throw NumericalError("bessel series did not converge at x=" + std::to_string(x));
}

double bessel_j_asymptotic(double nu, double x) {
    // Hankel expansion: J_nu(x) ~ sqrt(2/(pi x)) (P cos w - Q sin w),
    // w = x - nu*pi/2 - pi/4.  P collects even-k terms, Q odd-k terms,
    // both with sign (-1)^(k/2); truncate at the smallest term.
    const double mu = 4.0 * nu * nu;
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k <= 40; ++k) {
        const double num = mu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
        term *= num / (8.0 * x * k);
        if (std::abs(term) >= prev)
            break; // divergent tail reached; stop at the smallest term
        prev = std::abs(term);
        const double signed_term = ((k / 2) % 2 == 0) ? term : -term;
        if (k % 2 == 1)
            q += signed_term;
        else
            p += signed_term;
        if (std::abs(term) < 1e-18)
            break;
    }
    const double w = x - nu * 1.5707963267948966 - 0.7853981633974483;
    return std::sqrt(2.0 / (3.141592653589793 * x)) * (p * std::cos(w) - q * std::sin(w));
}

} // namespace detail

namespace {

constexpr double kSwitchover = 12.0;

double bessel_j(double nu, double x) {
    return x < kSwitchover ? detail::bessel_j_series(nu, x)
                           : detail::bessel_j_asymptotic(nu, x);
}

} // namespace

double bessel_j_quarter(double x) {
    if (!(x >= 0.0))
        throw ValidationError("bessel_j_quarter: x must be finite and >= 0, got " +
                              std::to_string(x));
    return bessel_j(0.25, x);
}

double bessel_j_neg_three_quarter(double x) {
    if (!(x > 0.0))
        throw ValidationError("bessel_j_neg_three_quarter: x must be finite and > 0, got " +
                              std::to_string(x));
    return bessel_j(-0.75, x);
}

double first_zero_j_quarter() {
    static const double zero = [] {
        double lo = 2.0, hi = 3.0;
        double flo = bessel_j_quarter(lo);
        if (!(flo > 0.0) || !(bessel_j_quarter(hi) < 0.0))
            throw NumericalError("first_zero_j_quarter: bracket [2,3] lost the sign change");
        while (hi - lo > 1e-15) {
            const double mid = 0.5 * (lo + hi);
            const double fmid = bessel_j_quarter(mid);
            if (fmid == 0.0)
                return mid;
            if ((fmid > 0.0) == (flo > 0.0)) {
                lo = mid;
                flo = fmid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    }();
    return zero;
}

double buckling_mode_constant() {
    static const double c = [] {
        const double v = 2.0 * first_zero_j_quarter();
        // Guard against a silently wrong zero: the constant is known to
        // four decimals from the classical lateral-buckling solution.
        if (std::abs(v - 5.5618) > 1e-3 * 5.5618)
            throw NumericalError("buckling_mode_constant: computed value " +
                                 std::to_string(v) + " is off the known 5.5618");
        return v;
    }();
    return c;
}

} // namespace hcm
