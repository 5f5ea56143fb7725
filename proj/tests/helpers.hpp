#pragma once

// Shared fixtures and independent statistics helpers for the test suites.

#include <cmath>
#include <random>
#include <vector>

#include "ionread/rates.hpp"

namespace testutil {

// The measured rate set from the readout experiment: detected bright rate
// 472 kcps, dark pump 341 Hz, bright pump 16.4 Hz, background 4.2 cps,
// eps_sys 4.356%.
inline ionread::RateSet paper_rates() {
    return ionread::RateSet::measured(472e3, 341.0, 16.4, 4.2, 0.04356);
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i)
        out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    return out;
}

// Regularized upper incomplete gamma Q(a, x), series + continued fraction.
inline double gamma_q(double a, double x) {
    if (x < 0 || a <= 0) return std::nan("");
    if (x == 0) return 1.0;
    if (x < a + 1.0) {
        // P(a,x) by series, return 1 - P
        double term = 1.0 / a, sum = term, ap = a;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-15) break;
        }
        const double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        return 1.0 - p;
    }
    // Lentz continued fraction for Q
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// chi-square p-value for statistic `stat` with `dof` degrees of freedom
inline double chi2_pvalue(double stat, double dof) { return gamma_q(dof / 2.0, stat / 2.0); }

}  // namespace testutil
