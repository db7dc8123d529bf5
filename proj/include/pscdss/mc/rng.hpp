#pragma once

#include <cmath>
#include <cstdint>

namespace pscdss::mc {

// Counter-based splittable generator. A stream is keyed by
// (master seed, stream id, trial index); draws depend only on the key and
// the call counter, so trial-level parallelism and re-ordering cannot
// change results.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t trial = 0)
        : state_(mix(mix(mix(seed + kGamma) ^ stream) ^ trial)) {}

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix(state_);
    }

    // Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    double exponential(double mean = 1.0) {
        double u;
        do {
            u = uniform();
        } while (u <= 0.0);
        return -mean * std::log(u);
    }

    // Marsaglia polar method; pairs are drawn fresh each call to keep the
    // stream's draw count independent of caller history.
    double normal() {
        for (;;) {
            const double v1 = 2.0 * uniform() - 1.0;
            const double v2 = 2.0 * uniform() - 1.0;
            const double s = v1 * v1 + v2 * v2;
            if (s > 0.0 && s < 1.0) {
                return v1 * std::sqrt(-2.0 * std::log(s) / s);
            }
        }
    }

    // Arrival counting; cost O(mean), fine for the desk-scale means used here.
    std::uint64_t poisson(double mean) {
        if (mean <= 0.0) return 0;
        std::uint64_t n = 0;
        double acc = exponential();
        while (acc < mean) {
            ++n;
            acc += exponential();
        }
        return n;
    }

    // Marsaglia-Tsang, valid for shape >= 1 (integerized gamma shapes only).
    double gamma(double shape, double scale) {
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x;
            double v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
            if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
                return d * v * scale;
            }
        }
    }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace pscdss::mc
