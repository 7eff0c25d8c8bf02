#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "predprey/banded.hpp"
#include "predprey/model.hpp"
#include "predprey/spectral.hpp"

namespace predprey {

/// A candidate steady state of the coupled system. w and v live on the
/// unknowns of op1 and op2 respectively.
struct SteadyState {
    double lambda = 0.0, mu = 0.0, eps = 0.0;
    std::vector<double> w, v;
    double residual_norm = std::numeric_limits<double>::infinity();
    int morse_index = -1; // -1: not computed
    double tau0 = std::numeric_limits<double>::quiet_NaN();
    bool is_coexistence = false;

    double norm_w_inf() const { return max_abs(w); }
    double norm_v_inf() const { return max_abs(v); }
};

/// Node-to-unknown index maps for the coupled (w, v) system, interleaved by
/// node so the Jacobian is banded with bandwidth <= 3.
struct CoupledIndex {
    std::vector<std::ptrdiff_t> iw, iv; // -1 where the node is not an unknown
    std::size_t total = 0;

    explicit CoupledIndex(const ModelCoefficients& model);
};

struct NewtonOptions {
    double newton_tol = 1e-10;
    std::size_t max_iter = 60;
    std::size_t max_halvings = 30;
    double cone_guard = 0.1; // iterates must keep 1 + m w > cone_guard
};

/// Steady-state residual of the coupled system at the unknown nodes:
///   F1 = L1 w - lambda w + eps a w^2 + b w v / (1 + m w)
///   F2 = L2 v - mu v + d v^2 - eps c w v / (1 + m w)
std::pair<std::vector<double>, std::vector<double>>
residual(const SteadyState& state, const ModelCoefficients& model);

/// Analytic Jacobian of `residual` as a banded matrix over the interleaved
/// unknowns (not factored).
BandedMatrix jacobian_banded(const SteadyState& state, const ModelCoefficients& model,
                             const CoupledIndex& idx);

/// Dense copy of the Jacobian (w block first, then v block), used for
/// stability eigensolves and tests.
DenseMatrix jacobian_dense(const SteadyState& state, const ModelCoefficients& model);

/// d residual / d lambda = (-w, 0) over the interleaved unknowns.
std::vector<double> residual_dlambda(const SteadyState& state, const ModelCoefficients& model,
                                     const CoupledIndex& idx);

/// Damped Newton from (w0, v0). Positivity is checked, not enforced: a
/// converged sign-changing solution is returned with is_coexistence = false.
SteadyState newton_solve(std::vector<double> w0, std::vector<double> v0, double lambda,
                         double mu, double eps, const ModelCoefficients& model,
                         const NewtonOptions& opts = {});

/// Morse data of the linearization at the state; the state is linearly stable
/// iff every eigenvalue of the Jacobian has positive real part.
MorseData stability(SteadyState& state, const ModelCoefficients& model);

struct AprioriReport {
    bool ok = false;
    std::vector<std::string> violations;
};

/// Pointwise bounds 0 << w << theta_{[L1,lambda,eps a]} and
/// theta_{[L2,mu,d]} << v << theta_{[L2, mu + eps c theta1/(1+m theta1), d]},
/// with discrete strictness slack bound_slack * h.
AprioriReport apriori_check(const SteadyState& state, const ModelCoefficients& model,
                            double bound_slack = 1e-9);

/// The semitrivial predator-only state (0, theta2) packaged as a SteadyState,
/// for stability queries along the trivial curve.
SteadyState semitrivial_state(double lambda, double mu, double eps,
                              const ModelCoefficients& model);

} // namespace predprey
