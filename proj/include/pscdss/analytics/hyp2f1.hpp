#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace pscdss::analytics {

namespace detail {

// sum_{n>=0} (a)_n (b)_n / (c)_n z^n / n!  for |z| < 1.
// Relative target 1e-12 so the callers' 1e-10 contract has headroom.
inline double gauss_series(double a, double b, double c, double z,
                           std::size_t max_terms) {
    double term = 1.0;
    double sum = 1.0;
    for (std::size_t n = 0; n < max_terms; ++n) {
        const double dn = static_cast<double>(n);
        term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
        sum += term;
        if (std::abs(term) <= 1e-14 * std::abs(sum)) return sum;
    }
    throw std::domain_error("hyp2f1: series did not converge");
}

// I_m(u) = integral_0^u (t/(1+t))^m dt for integer m >= 1, exact antiderivative.
// This is the kernel of the interference PGFL; 2F1(m, m+1; m+2; -u) equals
// (m+1) I_m(u) / u^{m+1}.
inline double pgfl_kernel_integral(int m, double u) {
    if (u <= 0.0) return 0.0;
    if (u < 0.25) {
        // closed form cancels catastrophically near 0; series in u instead
        double binom = 1.0;  // binom(m+k-1, k), negative-binomial expansion of (1+t)^-m
        double upow = std::pow(u, m + 1);
        double sum = 0.0;
        for (int k = 0; k < 64; ++k) {
            const double term = binom * upow / (m + 1 + k);
            sum += (k % 2 == 0) ? term : -term;
            if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
            binom *= static_cast<double>(m + k) / (k + 1);
            upow *= u;
        }
        return sum;
    }
    double result = u;
    double binom = 1.0;  // binom(m, j)
    for (int j = 1; j <= m; ++j) {
        binom *= static_cast<double>(m - j + 1) / j;
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        const double piece = (j == 1) ? std::log1p(u)
                                      : (1.0 - std::pow(1.0 + u, 1.0 - j)) / (j - 1);
        result += sign * binom * piece;
    }
    return result;
}

inline bool is_positive_integer(double a, int& out) {
    const double r = std::round(a);
    if (r >= 1.0 && std::abs(a - r) < 1e-12) {
        out = static_cast<int>(r);
        return true;
    }
    return false;
}

}  // namespace detail

// Gaussian hypergeometric function 2F1(a, b; c; z) for c > 0 and either
// z <= 0 or |z| < 1 (the only regions the outage analysis touches).
// Direct series for |z| < 0.5, Pfaff transform z -> z/(z-1) otherwise; the
// (m, m+1; m+2; z<=0) family is evaluated through its elementary
// antiderivative, which stays cheap for arbitrarily large |z|.
inline double hyp2f1(double a, double b, double c, double z) {
    if (!(c > 0.0)) throw std::domain_error("hyp2f1: requires c > 0");
    if (!(z <= 0.0 || std::abs(z) < 1.0)) {
        throw std::domain_error("hyp2f1: requires z <= 0 or |z| < 1");
    }
    if (z == 0.0) return 1.0;

    int m = 0;
    if (z < 0.0 && detail::is_positive_integer(a, m) &&
        std::abs(b - (a + 1.0)) < 1e-12 && std::abs(c - (a + 2.0)) < 1e-12) {
        const double u = -z;
        return (m + 1) * detail::pgfl_kernel_integral(m, u) / std::pow(u, m + 1);
    }

    if (std::abs(z) < 0.5) return detail::gauss_series(a, b, c, z, 600);

    if (z < 0.0) {
        // 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)); the mapped
        // argument lies in [0,1), 1e6 terms covers z down to about -1e5.
        const double w = z / (z - 1.0);
        return std::pow(1.0 - z, -a) * detail::gauss_series(a, c - b, c, w, 1000000);
    }

    // z in [0.5, 1): direct series, slow near 1; callers that wander here get
    // the documented domain error on non-convergence.
    return detail::gauss_series(a, b, c, z, 2000000);
}

}  // namespace pscdss::analytics
