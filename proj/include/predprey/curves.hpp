#pragma once

#include <vector>

#include "predprey/model.hpp"

namespace predprey {

inline constexpr double kSupportTol = 1e-12;

/// 0/1 flags marking int supp m on the grid nodes: chi_i = 1 iff m(x_i) > m_tol.
std::vector<double> support_indicator(const CoefficientField& m, double m_tol = kSupportTol);

/// Phi(mu) = sigma0[L1 + b theta_{[L2,mu,d]}]: stability threshold of (0, theta2).
double capital_phi(double mu, const ModelCoefficients& model);

/// phi_0(mu) = sigma0[L1 + (1 - chi_{int supp m}) b theta_{[L2,mu,d]}]:
/// left end of the eps = 0 coexistence window.
double phi_zero(double mu, const ModelCoefficients& model);

/// phi_eps(mu): fixed point in lambda of
/// lambda = sigma0[L1 + b theta_{[L2,mu,d]} / (1 + m theta_{[L1,lambda,eps a]})],
/// located by bisection on [sigma01, Phi(mu)].
double phi_eps(double mu, double eps, const ModelCoefficients& model);

/// Psi_eps(lambda) = sigma0[L2 - eps c theta_{[L1,lambda,eps a]} / (1 + m theta_{[L1,lambda,eps a]})].
double psi_eps(double lambda, double eps, const ModelCoefficients& model);

/// Psi_0(lambda) = sigma0[L2 - (1 - chi_{int supp m}) c theta_{[L1,lambda,a]}] <= sigma02.
double psi_zero(double lambda, const ModelCoefficients& model);

enum class WedgeRegion { no_coexistence, guaranteed, indeterminate };

struct WedgePoint {
    double lambda = 0.0;
    double mu = 0.0;
    WedgeRegion region = WedgeRegion::indeterminate;
};

/// Classifies a (lambda, mu) grid: guaranteed iff lambda > Phi(mu) and
/// mu > Psi_eps(lambda); excluded iff lambda <= phi_eps(mu) or mu <= Psi_eps(lambda).
std::vector<WedgePoint> wedge_scan(double lambda_lo, double lambda_hi, double mu_lo,
                                   double mu_hi, double eps, const ModelCoefficients& model,
                                   std::size_t resolution, unsigned jobs = 1);

} // namespace predprey
