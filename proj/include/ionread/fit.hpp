#pragma once

// Weighted nonlinear least squares: damped Gauss-Newton with
// Levenberg-style diagonal damping and a central-difference Jacobian.
// Sized for the one- and two-parameter model fits in this project.

#include <functional>
#include <vector>

#include "ionread/quadrature.hpp"
#include "ionread/rates.hpp"

namespace ionread::fit {

struct Options {
    int max_iterations = 200;
    double step_tol = 1e-10;       // relative parameter step for convergence
    double jacobian_step = 1e-6;   // relative central-difference step
};

struct Result {
    std::vector<double> params;
    std::vector<double> param_errors;  // sqrt of covariance diagonal
    double chi2 = 0.0;                 // weighted sum of squared residuals
    double residual_norm = 0.0;        // sqrt(chi2)
    bool converged = false;
    int iterations = 0;
};

// model(x, params) -> predicted y. Weights are 1/sigma^2.
using Model = std::function<double(double, const std::vector<double>&)>;

Result least_squares(const Model& model, const std::vector<double>& xs,
                     const std::vector<double>& ys, const std::vector<double>& sigmas,
                     std::vector<double> initial, const Options& opts = {});

}  // namespace ionread::fit
