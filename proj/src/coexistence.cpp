#include "predprey/coexistence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace predprey {

namespace {

struct FullFields {
    std::vector<double> w, v;
};

FullFields full_fields(const SteadyState& state, const ModelCoefficients& model) {
    FullFields f;
    f.w = model.op1.to_full(state.w);
    f.v = model.op2.to_full(state.v);
    for (std::size_t j = 0; j < f.w.size(); ++j)
        if (1.0 + model.m[j] * f.w[j] <= 0.0)
            throw ValidationError("state outside admissible cone: 1 + m w <= 0 at node " +
                                  std::to_string(j));
    return f;
}

double residual_pair_norm(const std::pair<std::vector<double>, std::vector<double>>& r) {
    return std::max(max_abs(r.first), max_abs(r.second));
}

} // namespace

CoupledIndex::CoupledIndex(const ModelCoefficients& model) {
    std::size_t nn = model.grid.num_nodes();
    iw.assign(nn, -1);
    iv.assign(nn, -1);
    std::ptrdiff_t k = 0;
    for (std::size_t j = 0; j < nn; ++j) {
        if (j >= model.op1.node_lo() && j <= model.op1.node_hi()) iw[j] = k++;
        if (j >= model.op2.node_lo() && j <= model.op2.node_hi()) iv[j] = k++;
    }
    total = static_cast<std::size_t>(k);
}

std::pair<std::vector<double>, std::vector<double>>
residual(const SteadyState& state, const ModelCoefficients& model) {
    FullFields f = full_fields(state, model);
    const auto& op1 = model.op1;
    const auto& op2 = model.op2;

    std::vector<double> F1(op1.size()), F2(op2.size());
    op1.matrix().apply(state.w, F1);
    op2.matrix().apply(state.v, F2);
    for (std::size_t i = 0; i < op1.size(); ++i) {
        std::size_t j = op1.node_lo() + i;
        double w = state.w[i];
        F1[i] += -state.lambda * w + state.eps * model.a[j] * w * w +
                 model.b[j] * w * f.v[j] / (1.0 + model.m[j] * w);
    }
    for (std::size_t i = 0; i < op2.size(); ++i) {
        std::size_t j = op2.node_lo() + i;
        double v = state.v[i];
        F2[i] += -state.mu * v + model.d[j] * v * v -
                 state.eps * model.c[j] * f.w[j] * v / (1.0 + model.m[j] * f.w[j]);
    }
    return {std::move(F1), std::move(F2)};
}

namespace {

/// Pointwise Jacobian blocks at a node, using full node fields.
struct NodeBlocks {
    double diag1, j12, diag2, j21;
};

NodeBlocks node_blocks(std::size_t j, const SteadyState& state, const ModelCoefficients& model,
                       const FullFields& f) {
    double w = f.w[j], v = f.v[j];
    double denom = 1.0 + model.m[j] * w;
    NodeBlocks nb;
    nb.diag1 = -state.lambda + 2.0 * state.eps * model.a[j] * w +
               model.b[j] * v / (denom * denom);
    nb.j12 = model.b[j] * w / denom;
    nb.j21 = -state.eps * model.c[j] * v / (denom * denom);
    nb.diag2 = -state.mu + 2.0 * model.d[j] * v -
               state.eps * model.c[j] * w / denom;
    return nb;
}

} // namespace

BandedMatrix jacobian_banded(const SteadyState& state, const ModelCoefficients& model,
                             const CoupledIndex& idx) {
    FullFields f = full_fields(state, model);
    BandedMatrix J(idx.total, 3, 3);
    const Tridiag& t1 = model.op1.matrix();
    const Tridiag& t2 = model.op2.matrix();

    for (std::size_t i = 0; i < model.op1.size(); ++i) {
        std::size_t j = model.op1.node_lo() + i;
        std::size_t r = static_cast<std::size_t>(idx.iw[j]);
        if (i > 0) J.add(r, static_cast<std::size_t>(idx.iw[j - 1]), t1.sub[i]);
        J.add(r, r, t1.diag[i]);
        if (i + 1 < model.op1.size())
            J.add(r, static_cast<std::size_t>(idx.iw[j + 1]), t1.sup[i]);
        NodeBlocks nb = node_blocks(j, state, model, f);
        J.add(r, r, nb.diag1);
        if (idx.iv[j] >= 0) J.add(r, static_cast<std::size_t>(idx.iv[j]), nb.j12);
    }
    for (std::size_t i = 0; i < model.op2.size(); ++i) {
        std::size_t j = model.op2.node_lo() + i;
        std::size_t r = static_cast<std::size_t>(idx.iv[j]);
        if (i > 0) J.add(r, static_cast<std::size_t>(idx.iv[j - 1]), t2.sub[i]);
        J.add(r, r, t2.diag[i]);
        if (i + 1 < model.op2.size())
            J.add(r, static_cast<std::size_t>(idx.iv[j + 1]), t2.sup[i]);
        NodeBlocks nb = node_blocks(j, state, model, f);
        J.add(r, r, nb.diag2);
        if (idx.iw[j] >= 0) J.add(r, static_cast<std::size_t>(idx.iw[j]), nb.j21);
    }
    return J;
}

DenseMatrix jacobian_dense(const SteadyState& state, const ModelCoefficients& model) {
    FullFields f = full_fields(state, model);
    std::size_t n1 = model.op1.size(), n2 = model.op2.size();
    DenseMatrix J = DenseMatrix::zeros(n1 + n2);
    const Tridiag& t1 = model.op1.matrix();
    const Tridiag& t2 = model.op2.matrix();

    for (std::size_t i = 0; i < n1; ++i) {
        std::size_t j = model.op1.node_lo() + i;
        if (i > 0) J.at(i, i - 1) = t1.sub[i];
        if (i + 1 < n1) J.at(i, i + 1) = t1.sup[i];
        NodeBlocks nb = node_blocks(j, state, model, f);
        J.at(i, i) = t1.diag[i] + nb.diag1;
        if (j >= model.op2.node_lo() && j <= model.op2.node_hi())
            J.at(i, n1 + (j - model.op2.node_lo())) = nb.j12;
    }
    for (std::size_t i = 0; i < n2; ++i) {
        std::size_t j = model.op2.node_lo() + i;
        std::size_t r = n1 + i;
        if (i > 0) J.at(r, r - 1) = t2.sub[i];
        if (i + 1 < n2) J.at(r, r + 1) = t2.sup[i];
        NodeBlocks nb = node_blocks(j, state, model, f);
        J.at(r, r) = t2.diag[i] + nb.diag2;
        if (j >= model.op1.node_lo() && j <= model.op1.node_hi())
            J.at(r, j - model.op1.node_lo()) = nb.j21;
    }
    return J;
}

std::vector<double> residual_dlambda(const SteadyState& state, const ModelCoefficients& model,
                                     const CoupledIndex& idx) {
    std::vector<double> g(idx.total, 0.0);
    for (std::size_t i = 0; i < model.op1.size(); ++i) {
        std::size_t j = model.op1.node_lo() + i;
        g[static_cast<std::size_t>(idx.iw[j])] = -state.w[i];
    }
    return g;
}

namespace {

bool cone_ok(const std::vector<double>& w_unknowns, const ModelCoefficients& model,
             double guard) {
    for (std::size_t i = 0; i < w_unknowns.size(); ++i) {
        std::size_t j = model.op1.node_lo() + i;
        if (1.0 + model.m[j] * w_unknowns[i] <= guard) return false;
    }
    return true;
}

} // namespace

SteadyState newton_solve(std::vector<double> w0, std::vector<double> v0, double lambda,
                         double mu, double eps, const ModelCoefficients& model,
                         const NewtonOptions& opts) {
    if (w0.size() != model.op1.size() || v0.size() != model.op2.size())
        throw ValidationError("newton_solve: initial guess has wrong size");

    SteadyState state;
    state.lambda = lambda;
    state.mu = mu;
    state.eps = eps;
    state.w = std::move(w0);
    state.v = std::move(v0);
    if (!cone_ok(state.w, model, opts.cone_guard))
        throw ValidationError("state outside admissible cone: initial guess violates 1 + m w > " +
                              std::to_string(opts.cone_guard));

    CoupledIndex idx(model);
    const double base_norm =
        std::max(tridiag_inf_norm(model.op1.matrix()), tridiag_inf_norm(model.op2.matrix())) +
        std::fabs(lambda) + std::fabs(mu);
    auto tol_now = [&] {
        double amp = std::max(max_abs(state.w), max_abs(state.v));
        return opts.newton_tol + residual_floor(base_norm, amp);
    };
    auto r = residual(state, model);
    double rnorm = residual_pair_norm(r);

    for (std::size_t it = 0; it < opts.max_iter; ++it) {
        if (rnorm <= tol_now()) break;

        BandedMatrix J = jacobian_banded(state, model, idx);
        J.factor();
        std::vector<double> rhs(idx.total);
        for (std::size_t i = 0; i < model.op1.size(); ++i)
            rhs[static_cast<std::size_t>(idx.iw[model.op1.node_lo() + i])] = r.first[i];
        for (std::size_t i = 0; i < model.op2.size(); ++i)
            rhs[static_cast<std::size_t>(idx.iv[model.op2.node_lo() + i])] = r.second[i];
        std::vector<double> step = J.solve(rhs);

        double t = 1.0;
        bool accepted = false;
        for (std::size_t halving = 0; halving <= opts.max_halvings; ++halving, t *= 0.5) {
            SteadyState trial = state;
            for (std::size_t i = 0; i < model.op1.size(); ++i)
                trial.w[i] = state.w[i] - t * step[static_cast<std::size_t>(
                                                  idx.iw[model.op1.node_lo() + i])];
            for (std::size_t i = 0; i < model.op2.size(); ++i)
                trial.v[i] = state.v[i] - t * step[static_cast<std::size_t>(
                                                  idx.iv[model.op2.node_lo() + i])];
            if (!cone_ok(trial.w, model, opts.cone_guard)) continue;
            auto r_trial = residual(trial, model);
            double rnorm_trial = residual_pair_norm(r_trial);
            if (rnorm_trial < rnorm) {
                state.w = std::move(trial.w);
                state.v = std::move(trial.v);
                r = std::move(r_trial);
                rnorm = rnorm_trial;
                accepted = true;
                break;
            }
        }
        if (!accepted)
            throw SolverError("newton_solve: line search failed at residual " +
                              std::to_string(rnorm));
    }
    if (rnorm > tol_now())
        throw SolverError("newton_solve: did not converge (residual " + std::to_string(rnorm) +
                          "); near a fold, use arclength continuation");

    state.residual_norm = rnorm;
    state.is_coexistence = min_value(state.w) > 0.0 && min_value(state.v) > 0.0;
    return state;
}

MorseData stability(SteadyState& state, const ModelCoefficients& model) {
    DenseMatrix J = jacobian_dense(state, model);
    MorseData md = morse_index(J);
    state.morse_index = md.index;
    state.tau0 = md.tau0;
    return md;
}

AprioriReport apriori_check(const SteadyState& state, const ModelCoefficients& model,
                            double bound_slack) {
    if (!(state.eps > 0.0))
        throw ValidationError("apriori_check requires eps > 0");

    AprioriReport rep;
    double slack = bound_slack * model.grid.h;

    ThetaSolution th1 = model.semitrivial_prey(state.lambda, state.eps);
    ThetaSolution th2 = model.semitrivial_predator(state.mu);
    auto theta1_full = model.op1.to_full(th1.z);

    // upper predator envelope: theta_{[L2 - eps c theta1/(1+m theta1), mu, d]}
    const auto& op2 = model.op2;
    std::vector<double> V(op2.size()), xi(op2.size());
    for (std::size_t i = 0; i < op2.size(); ++i) {
        std::size_t j = op2.node_lo() + i;
        V[i] = -state.eps * model.c[j] * theta1_full[j] / (1.0 + model.m[j] * theta1_full[j]);
        xi[i] = model.d[j];
    }
    ThetaSolution th2_up = theta(op2, V, state.mu, xi);

    auto note = [&](std::size_t node, const std::string& what) {
        rep.violations.push_back(what + " at node " + std::to_string(node));
    };
    for (std::size_t i = 0; i < model.op1.size(); ++i) {
        std::size_t j = model.op1.node_lo() + i;
        if (state.w[i] <= 0.0) note(j, "w not positive");
        if (state.w[i] >= th1.z[i] + slack) note(j, "w exceeds prey envelope theta1");
    }
    for (std::size_t i = 0; i < model.op2.size(); ++i) {
        std::size_t j = model.op2.node_lo() + i;
        if (state.v[i] <= th2.z[i] - slack) note(j, "v below predator floor theta2");
        if (state.v[i] >= th2_up.z[i] + slack) note(j, "v exceeds predator envelope");
    }
    rep.ok = rep.violations.empty();
    return rep;
}

SteadyState semitrivial_state(double lambda, double mu, double eps,
                              const ModelCoefficients& model) {
    SteadyState state;
    state.lambda = lambda;
    state.mu = mu;
    state.eps = eps;
    state.w.assign(model.op1.size(), 0.0);
    state.v = model.semitrivial_predator(mu).z;
    auto r = residual(state, model);
    state.residual_norm = residual_pair_norm(r);
    state.is_coexistence = false;
    return state;
}

} // namespace predprey
