#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace predprey::oracle {

/// Constant coefficients of the spatially homogeneous Neumann model with
/// m = 1. All algebra below is exact (no discretization).
struct ConstParams {
    double a = 1.0, b = 1.0, c = 1.0, d = 1.0;
    double mu = 1.0;
};

/// Phi = b mu / d: the bifurcation value of lambda along the semitrivial curve.
double capital_phi(const ConstParams& p);

/// eps restricted to the constant state: eps*(lambda) = (2 d lambda - b mu)/(b c + a d);
/// the saturation level at which lambda sits exactly at the vertical tangent.
double eps_star_lambda(const ConstParams& p, double lambda);

/// eps* = eps*(Phi) = b mu / (b c + a d).
double eps_star(const ConstParams& p);

/// theta_{[rho, xi]} for the constant Neumann logistic problem: max(rho, 0)/xi.
double theta_const(double rho, double xi);

/// Closed forms of the threshold curves for the constant model:
/// phi_eps solves lambda (1 + lambda/(eps a)) = b mu / d.
double phi_eps_const(const ConstParams& p, double eps);
/// Psi_eps(lambda) = -eps c theta1 / (1 + theta1) with theta1 = lambda/(eps a).
double psi_eps_const(const ConstParams& p, double eps, double lambda);

/// Branch slope at the bifurcation point: lambda'(0) at saturation eps.
double lambda_prime_const(const ConstParams& p, double eps);

/// Monic cubic x^3 + c2 x^2 + c1 x + c0 whose positive admissible roots are
/// the prey components of constant coexistence states at (lambda, eps > 0).
std::array<double, 3> cubic_coeffs(const ConstParams& p, double eps, double lambda);

/// Real roots of a monic cubic, ascending, polished by Newton; each root r
/// satisfies |P(r)| <= 1e-10 * max(1, max |coeff|). Roots closer than 1e-8
/// are reported once (a double root).
std::vector<double> cubic_roots(const std::array<double, 3>& coeffs);

struct ConstState {
    double w = 0.0;
    double v = 0.0;
    bool critical = false; // admissibility margin lambda - eps a w within tolerance of 0
};

/// All constant coexistence states at (lambda, eps): cubic roots with w > 0
/// and lambda - eps a w > 1e-12 (v > 0); roots on the admissibility boundary
/// are included flagged critical.
std::vector<ConstState> constant_states(const ConstParams& p, double eps, double lambda);

/// The eps = 0 constant coexistence state, unique for 0 < lambda < Phi:
/// w = b mu/(d lambda) - 1, v = mu/d.
ConstState eps0_state(const ConstParams& p, double lambda);

/// lambda as a graph over the prey amplitude w > 0 along the constant branch:
/// lambda(w) = eps a [w^3 + 2w^2 + (1 + bc/(ad) + b mu/(eps a d)) w + b mu/(eps a d)] / (1+w)^2.
double lambda_of_w(const ConstParams& p, double eps, double w);

/// Roots of the quadratic factor w^2 + (2 - Phi/(eps a)) w + 1 + bc/(ad) - b mu/(eps a d)
/// carrying the two nonzero states at lambda = Phi, ascending. Empty if complex.
std::vector<double> q_roots(const ConstParams& p, double eps);

enum class Regime { monotone, single_fold, s_shaped };

const char* regime_name(Regime r);

/// Shape classification of the constant branch with certificates: folds are
/// interior critical points of lambda_of_w restricted to admissible w.
struct RegimeCertificate {
    Regime regime = Regime::monotone;
    double phi = 0.0;
    double eps_star = 0.0;
    std::vector<double> fold_w;      // prey amplitude at each fold, ascending
    std::vector<double> fold_lambda; // matching lambda values
    double eta = 0.0;                // min distance from Phi to a fold (0 if none)
    std::string explanation;
};

RegimeCertificate regime_classify(const ConstParams& p, double eps);

} // namespace predprey::oracle
