#pragma once

#include <functional>

namespace hcm {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
};

// Adaptive Gauss-Kronrod (7-15) integration of f over [a, b].  All nodes
// are interior, so integrands with integrable endpoint singularities or
// endpoint zeros of infinite slope are handled without special casing.
// Panels are bisected worst-error-first until the global estimate meets
// max(rel_tol*|I|, abs_tol); throws NumericalError if the panel budget is
// exhausted first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-8, double abs_tol = 0.0);

} // namespace hcm
