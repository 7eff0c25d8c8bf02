#pragma once

#include <cstddef>
#include <vector>

#include "predprey/coexistence.hpp"
#include "predprey/curves.hpp"

namespace predprey {

/// Local bifurcation data at (lambda, w, v) = (Phi(mu), 0, theta2):
/// kernel direction (w1, v1), adjoint kernel w1_star, and the branch slope
/// dlambda/ds at s = 0. Normalized <w1, w1> = 1 and <w1, w1_star> = 1 in the
/// trapezoid inner product.
struct TangentData {
    std::vector<double> w1;      // op1 unknowns
    std::vector<double> w1_star; // op1 unknowns
    std::vector<double> v1;      // op2 unknowns
    double lambda_prime = 0.0;
    double phi = 0.0; // Phi(mu), the bifurcation value
};

TangentData crandall_rabinowitz_tangent(double mu, double eps, const ModelCoefficients& model);

enum class Termination { lambda_max_reached, norm_cap_reached, step_failure, max_steps };

const char* termination_name(Termination t);

struct FoldPoint {
    double s = 0.0;
    double lambda = 0.0;
};

struct BranchPoint {
    double s = 0.0;
    SteadyState state;
    double dlambda_ds = 0.0;
};

struct ContinuationOptions {
    double ds0 = 1e-3;
    double ds_min = 1e-8;
    double ds_max = 5e-2;
    std::size_t max_steps = 50000;
    std::size_t corrector_max_iter = 12;
    double corrector_tol = 1e-10;
    double norm_cap_factor = 1e3;
    /// Continuation stops once lambda exceeds this; <= 0 means use the
    /// default Phi + 5 (Phi - phi_0).
    double lambda_max = 0.0;
    double seed_amplitude = 1e-3; // seed pin s0 = seed_amplitude * ||theta2||_inf
};

struct Branch {
    double mu = 0.0;
    double eps = 0.0;
    double lambda_max = 0.0;
    double norm_cap = 0.0;
    std::vector<BranchPoint> points;
    std::vector<FoldPoint> folds;
    Termination termination = Termination::step_failure;
};

/// First coexistence state on the branch: predictor from the local expansion
/// at amplitude s0, corrected by Newton with the amplitude pin <w, w1> = s0.
SteadyState branch_seed(double mu, double eps, const ModelCoefficients& model, double s0,
                        const TangentData& tangent);

/// Global coexistence branch from the bifurcation point at lambda = Phi(mu)
/// by pseudo-arclength continuation. The first stored point is the
/// bifurcation point itself at s = 0.
Branch continue_branch(double mu, double eps, const ModelCoefficients& model,
                       const ContinuationOptions& opts = {});

/// The eps = 0 branch: v stays pinned at theta2 and only the prey equation
/// w satisfies L1 w = lambda w - b theta2 w / (1 + m w).
Branch scalar_branch_eps0(double mu, const ModelCoefficients& model,
                          const ContinuationOptions& opts = {});

/// Morse indices along an eps = 0 branch. Exploits the block-triangular
/// Jacobian at eps = 0: the fixed predator block is solved once and the
/// tridiagonal prey block's inertia is read off its pivot signs (O(n) per
/// point), so 10^4-point branches stay fast.
void scalar_branch_stability(Branch& branch, const ModelCoefficients& model);

/// Number of branch states at a given lambda, counted as transversal
/// crossings of the polygonal branch. A fold within fold_tol of lambda that
/// is not already crossed contributes one (critical) state.
std::size_t count_states_at(const Branch& branch, double lambda, double fold_tol = 0.0);

} // namespace predprey
