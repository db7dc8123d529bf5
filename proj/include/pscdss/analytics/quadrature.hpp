#pragma once

#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace pscdss::analytics {

struct QuadratureError : std::runtime_error {
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_tolerance(achieved) {}
    double achieved_tolerance;
};

namespace detail {

// Kronrod 15-point abscissae on [0,1]; odd indices are the embedded
// 7-point Gauss nodes.
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kGk15Weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
void gk15(const F& f, double a, double b, double& value, double& error) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_mid = f(mid);
    double kronrod = kGk15Weights[7] * f_mid;
    double gauss = kG7Weights[3] * f_mid;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kGk15Nodes[i];
        const double pair = f(mid - dx) + f(mid + dx);
        kronrod += kGk15Weights[i] * pair;
        if (i % 2 == 1) gauss += kG7Weights[i / 2] * pair;
    }
    value = kronrod * half;
    const double diff = std::abs(kronrod - gauss) * half;
    // standard QUADPACK-style sharpened estimate
    error = diff * std::sqrt(std::min(1.0, 200.0 * diff / std::max(std::abs(value), 1e-300)));
    if (!(error > 0.0)) error = diff;
}

}  // namespace detail

// Adaptive Gauss-Kronrod 15(7) to an absolute tolerance, bisecting the
// worst interval first.
template <class F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-8,
                 int max_subdivisions = 2000) {
    if (a == b) return 0.0;
    struct Interval {
        double a, b, value, error;
        bool operator<(const Interval& o) const { return error < o.error; }
    };
    std::priority_queue<Interval> queue;
    Interval whole{a, b, 0.0, 0.0};
    detail::gk15(f, a, b, whole.value, whole.error);
    queue.push(whole);
    double total_value = whole.value;
    double total_error = whole.error;
    int used = 1;
    while (total_error > abs_tol) {
        if (used >= max_subdivisions) {
            throw QuadratureError("integrate: tolerance not reached", total_error);
        }
        const Interval worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Interval left{worst.a, mid, 0.0, 0.0};
        Interval right{mid, worst.b, 0.0, 0.0};
        detail::gk15(f, left.a, left.b, left.value, left.error);
        detail::gk15(f, right.a, right.b, right.value, right.error);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++used;
    }
    return total_value;
}

// Richardson-extrapolated central differences. Used for the k-th
// derivatives of the interference Laplace transform; k = 0 returns f(x).
template <class F>
double nth_derivative(const F& f, double x, int k) {
    if (k == 0) return f(x);
    // step balances h^4 truncation (after extrapolation) against eps/h^k
    // roundoff at the halved step
    const double scale = std::max(std::abs(x), 1.0);
    const double h0 = scale * std::pow(2.220446049250313e-16, 1.0 / (k + 4));

    auto central = [&](double h) {
        // k-th central difference: sum_j (-1)^j C(k,j) f(x + (k/2 - j) h) / h^k
        double num = 0.0;
        double binom = 1.0;
        for (int j = 0; j <= k; ++j) {
            const double offset = (0.5 * k - j) * h;
            num += ((j % 2 == 0) ? 1.0 : -1.0) * binom * f(x + offset);
            binom *= static_cast<double>(k - j) / (j + 1);
        }
        return num / std::pow(h, k);
    };

    const double d1 = central(h0);
    const double d2 = central(0.5 * h0);
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace pscdss::analytics
