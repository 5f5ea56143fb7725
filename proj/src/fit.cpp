#include "ionread/fit.hpp"

#include <cmath>
#include <limits>

namespace ionread::fit {

namespace {

// Gaussian elimination with partial pivoting; n is small (<= 4).
std::vector<double> solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        if (a[pivot][col] == 0.0) throw NumericalError("singular normal equations");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const double f = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
            b[row] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

std::vector<std::vector<double>> invert(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        const auto col = solve(a, e);
        for (std::size_t i = 0; i < n; ++i) inv[i][j] = col[i];
    }
    return inv;
}

double chi2_of(const Model& model, const std::vector<double>& xs,
               const std::vector<double>& ys, const std::vector<double>& weights,
               const std::vector<double>& params) {
    double chi2 = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - model(xs[i], params);
        chi2 += weights[i] * r * r;
    }
    return chi2;
}

}  // namespace

Result least_squares(const Model& model, const std::vector<double>& xs,
                     const std::vector<double>& ys, const std::vector<double>& sigmas,
                     std::vector<double> initial, const Options& opts) {
    const std::size_t m = xs.size();
    const std::size_t p = initial.size();
    if (m < p) throw DomainError("fewer data points than parameters");
    if (ys.size() != m || sigmas.size() != m)
        throw DomainError("xs, ys, sigmas must have equal length");

    std::vector<double> weights(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (sigmas[i] <= 0) throw DomainError("sigmas must be positive");
        weights[i] = 1.0 / (sigmas[i] * sigmas[i]);
    }

    Result result;
    result.params = std::move(initial);
    double chi2 = chi2_of(model, xs, ys, weights, result.params);
    double lambda = 1e-3;

    std::vector<std::vector<double>> jtj(p, std::vector<double>(p));
    std::vector<double> jtr(p);
    std::vector<std::vector<double>> jac(m, std::vector<double>(p));

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        result.iterations = iter + 1;

        for (std::size_t j = 0; j < p; ++j) {
            const double h = opts.jacobian_step * std::max(std::abs(result.params[j]), 1e-12);
            auto plus = result.params, minus = result.params;
            plus[j] += h;
            minus[j] -= h;
            for (std::size_t i = 0; i < m; ++i)
                jac[i][j] = (model(xs[i], plus) - model(xs[i], minus)) / (2.0 * h);
        }
        for (std::size_t j = 0; j < p; ++j) {
            jtr[j] = 0.0;
            for (std::size_t k = 0; k < p; ++k) jtj[j][k] = 0.0;
        }
        for (std::size_t i = 0; i < m; ++i) {
            const double r = ys[i] - model(xs[i], result.params);
            for (std::size_t j = 0; j < p; ++j) {
                jtr[j] += weights[i] * jac[i][j] * r;
                for (std::size_t k = 0; k < p; ++k)
                    jtj[j][k] += weights[i] * jac[i][j] * jac[i][k];
            }
        }

        // damped step; retry with more damping if chi2 worsens
        bool accepted = false;
        for (int attempt = 0; attempt < 40 && !accepted; ++attempt) {
            auto damped = jtj;
            for (std::size_t j = 0; j < p; ++j)
                damped[j][j] += lambda * std::max(jtj[j][j], 1e-300);
            std::vector<double> step;
            try {
                step = solve(damped, jtr);
            } catch (const NumericalError&) {
                lambda *= 10.0;
                continue;
            }
            auto trial = result.params;
            for (std::size_t j = 0; j < p; ++j) trial[j] += step[j];
            const double trial_chi2 = chi2_of(model, xs, ys, weights, trial);
            if (trial_chi2 <= chi2) {
                double rel_step = 0.0;
                for (std::size_t j = 0; j < p; ++j)
                    rel_step = std::max(rel_step, std::abs(step[j]) /
                                                      std::max(std::abs(trial[j]), 1e-12));
                result.params = std::move(trial);
                chi2 = trial_chi2;
                lambda = std::max(lambda / 10.0, 1e-12);
                accepted = true;
                if (rel_step < opts.step_tol) {
                    result.converged = true;
                }
            } else {
                lambda *= 10.0;
            }
        }
        if (result.converged) break;
        if (!accepted) {
            // no descent direction found at any damping; treat as stalled
            result.converged = true;
            break;
        }
    }

    if (!result.converged)
        throw NumericalError("least squares did not converge; final chi2 " +
                             std::to_string(chi2));

    result.chi2 = chi2;
    result.residual_norm = std::sqrt(chi2);
    try {
        const auto cov = invert(jtj);
        result.param_errors.resize(p);
        for (std::size_t j = 0; j < p; ++j)
            result.param_errors[j] = std::sqrt(std::max(0.0, cov[j][j]));
    } catch (const NumericalError&) {
        result.param_errors.assign(p, std::numeric_limits<double>::quiet_NaN());
    }
    return result;
}

}  // namespace ionread::fit
