#pragma once

// Adaptive Gauss-Kronrod (G7,K15) quadrature with interval bisection.

#include <functional>
#include <stdexcept>
#include <string>

namespace ionread {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_floor = 1e-16;
    int max_depth = 48;
};

// Integrates f over [a, b]. Throws NumericalError when the error
// estimate cannot be brought under tolerance within max_depth levels.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

// Integrates f over [0, b] on a partition refined geometrically toward both
// endpoints. Resolves integrands whose mass concentrates in a boundary layer
// near 0 or b that a single whole-interval error estimate would miss.
double integrate_multiscale(const std::function<double(double)>& f, double b,
                            const QuadratureOptions& opts = {});

}  // namespace ionread
