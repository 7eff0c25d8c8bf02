#include "predprey/logistic.hpp"

#include <algorithm>
#include <cmath>

namespace predprey {

namespace {

double residual_norm(const Tridiag& base, double rho, std::span<const double> xi,
                     std::span<const double> z, std::vector<double>& scratch) {
    base.apply(z, scratch);
    double r = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        double f = scratch[i] - rho * z[i] + xi[i] * z[i] * z[i];
        r = std::max(r, std::fabs(f));
    }
    return r;
}

} // namespace

ThetaSolution theta(const EllipticOperator& op, std::span<const double> V_unknowns, double rho,
                    std::span<const double> xi_unknowns, const LogisticOptions& opts) {
    const std::size_t n = op.size();
    if (xi_unknowns.size() != n || V_unknowns.size() != n)
        throw ValidationError("theta: field length does not match operator unknowns");
    for (double x : xi_unknowns)
        if (!(x > 0)) throw ValidationError("theta: weight xi must be strictly positive");

    EigenPair eig = principal_eigen(op, V_unknowns);

    ThetaSolution sol;
    sol.rho = rho;
    sol.sigma0_ref = eig.sigma0;
    if (rho <= eig.sigma0 + opts.bifurcation_tol) {
        sol.z.assign(n, 0.0);
        sol.is_zero = true;
        return sol;
    }

    Tridiag base = op.matrix();
    for (std::size_t i = 0; i < n; ++i) base.diag[i] += V_unknowns[i];

    // first-order bifurcation amplitude as the starting guess
    double denom = 0.0;
    for (std::size_t i = 0; i < n; ++i) denom = std::max(denom, xi_unknowns[i] * eig.phi[i]);
    double delta = (rho - eig.sigma0) / denom;
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = delta * eig.phi[i];

    const double base_norm = tridiag_inf_norm(base) + std::fabs(rho);
    auto tol_at = [&](std::span<const double> zz) {
        return opts.newton_tol + residual_floor(base_norm, max_abs(zz));
    };

    std::vector<double> scratch(n), rhs(n);
    double rnorm = residual_norm(base, rho, xi_unknowns, z, scratch);
    bool converged = rnorm <= tol_at(z);
    for (std::size_t it = 0; it < opts.max_iter && !converged; ++it) {
        // F(z) = (L+V)z - rho z + xi z^2; J = L+V - rho + 2 xi z
        Tridiag jac = base;
        base.apply(z, scratch);
        for (std::size_t i = 0; i < n; ++i) {
            jac.diag[i] += -rho + 2.0 * xi_unknowns[i] * z[i];
            rhs[i] = -(scratch[i] - rho * z[i] + xi_unknowns[i] * z[i] * z[i]);
        }
        std::vector<double> step = tridiag_solve(jac, rhs);

        double t = 1.0;
        std::vector<double> trial(n);
        for (std::size_t half = 0; half <= opts.max_halvings; ++half) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = std::max(z[i] + t * step[i], 0.0);
            double rt = residual_norm(base, rho, xi_unknowns, trial, scratch);
            if (rt < rnorm || rt <= tol_at(trial)) {
                z = trial;
                rnorm = rt;
                break;
            }
            t *= 0.5;
            if (half == opts.max_halvings)
                throw SolverError("theta: damped Newton stalled at residual " +
                                  std::to_string(rnorm));
        }
        converged = rnorm <= tol_at(z);
    }
    if (!converged)
        throw SolverError("theta: Newton did not converge, residual " + std::to_string(rnorm));

    for (std::size_t i = 0; i < n; ++i)
        if (!(z[i] > 0.0)) throw SolverError("theta: lost positivity");
    sol.z = std::move(z);
    sol.is_zero = false;
    sol.residual = rnorm;
    return sol;
}

ThetaSolution theta(const EllipticOperator& op, const CoefficientField& V, double rho,
                    const CoefficientField& xi, const LogisticOptions& opts) {
    auto v = op.restrict(V);
    auto x = op.restrict(xi);
    return theta(op, v, rho, x, opts);
}

} // namespace predprey
