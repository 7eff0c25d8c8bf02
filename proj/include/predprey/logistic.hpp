#pragma once

#include <span>
#include <vector>

#include "predprey/grid.hpp"
#include "predprey/spectral.hpp"

namespace predprey {

/// Maximal nonnegative solution of (L+V) z = rho z - xi z^2 over the
/// operator's unknowns; zero iff rho <= sigma0[L+V].
struct ThetaSolution {
    std::vector<double> z;
    double rho = 0.0;
    double sigma0_ref = 0.0;
    bool is_zero = true;
    double residual = 0.0;
};

struct LogisticOptions {
    double bifurcation_tol = 1e-10;
    double newton_tol = 1e-11;
    std::size_t max_iter = 100;
    std::size_t max_halvings = 30;
};

/// xi and V are full node fields; xi must be strictly positive everywhere.
ThetaSolution theta(const EllipticOperator& op, const CoefficientField& V, double rho,
                    const CoefficientField& xi, const LogisticOptions& opts = {});

ThetaSolution theta(const EllipticOperator& op, std::span<const double> V_unknowns, double rho,
                    std::span<const double> xi_unknowns, const LogisticOptions& opts = {});

} // namespace predprey
