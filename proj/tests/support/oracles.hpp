#pragma once

// Test-only reference implementations. Each one recomputes a quantity the
// library also produces, through an independent route: brute-force series,
// exhaustive enumeration, or direct numerical integration of a definition.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

// 2F1 by brute-force series at extended precision; Pfaff-mapped first so the
// series argument is in [0,1) for z < 0. Test-side only.
inline long double hyp2f1_series(long double a, long double b, long double c,
                                 long double z, int terms = 400) {
    long double prefactor = 1.0L;
    if (z < -0.5L) {
        prefactor = std::pow(1.0L - z, -a);
        b = c - b;
        z = z / (z - 1.0L);
    }
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int n = 0; n < terms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0L)) * z;
        sum += term;
    }
    return prefactor * sum;
}

// Exhaustive fault-pattern enumeration of the two-tier consensus success
// rate. Bits: [0] the region's regulator, [1 .. Ng-1] its other ground
// nodes, [Ng .. Ng+Ns-1] its satellites, [Ng+Ns ..] the other M-1
// regulators. Event logic straight from the round description: intra-fault
// count within floor(Nr/3), at least one healthy satellite to reach tier 2,
// and at most floor(M/2) faulty regulators counting the submitter.
inline double ps_enumeration(double pf_g, double pf_s, int m, int ng, int ns) {
    const int bits = ng + ns + (m - 1);
    if (bits > 24) throw std::invalid_argument("ps_enumeration: too many nodes");
    double total = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
        double prob = 1.0;
        int ground_faults = 0, sat_faults = 0, reg_faults = 0;
        bool regulator_faulty = false;
        for (int bit = 0; bit < bits; ++bit) {
            const bool faulty = (mask >> bit) & 1u;
            const bool is_sat = bit >= ng && bit < ng + ns;
            const double pf = is_sat ? pf_s : pf_g;
            prob *= faulty ? pf : 1.0 - pf;
            if (prob == 0.0) break;
            if (!faulty) continue;
            if (bit == 0) {
                regulator_faulty = true;
            } else if (bit < ng) {
                ++ground_faults;
            } else if (bit < ng + ns) {
                ++sat_faults;
            } else {
                ++reg_faults;
            }
        }
        if (prob == 0.0) continue;
        const int intra = ground_faults + sat_faults + (regulator_faulty ? 1 : 0);
        const bool intra_ok = intra <= (ng + ns) / 3;
        const bool relay_ok = sat_faults < ns;
        const bool tier2_ok = reg_faults + (regulator_faulty ? 1 : 0) <= m / 2;
        if (intra_ok && relay_ok && tier2_ok) total += prob;
    }
    return total;
}

// Two-sided Kolmogorov-Smirnov statistic against a reference CDF.
inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        worst = std::max(worst, std::abs(f - static_cast<double>(i) / n));
        worst = std::max(worst, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return worst;
}

// KS critical value at the 1% level (asymptotic).
inline double ks_critical_1pct(std::size_t n) {
    return 1.628 / std::sqrt(static_cast<double>(n));
}

// Simpson integration, test-side cross-check for the adaptive integrator.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int intervals = 20000) {
    if (intervals % 2 != 0) ++intervals;
    const double h = (b - a) / intervals;
    double sum = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) {
        sum += f(a + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
    }
    return sum * h / 3.0;
}

}  // namespace oracles
