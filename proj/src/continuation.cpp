#include "predprey/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>

namespace predprey {

const char* termination_name(Termination t) {
    switch (t) {
    case Termination::lambda_max_reached: return "lambda_max_reached";
    case Termination::norm_cap_reached: return "norm_cap_reached";
    case Termination::step_failure: return "step_failure";
    case Termination::max_steps: return "max_steps";
    }
    return "unknown";
}

TangentData crandall_rabinowitz_tangent(double mu, double eps, const ModelCoefficients& model) {
    const auto& op1 = model.op1;
    const auto& op2 = model.op2;

    ThetaSolution th2 = model.semitrivial_predator(mu);
    if (th2.is_zero)
        throw ValidationError("crandall_rabinowitz_tangent: theta2 vanishes (mu <= sigma02)");
    auto theta2_full = op2.to_full(th2.z);

    std::vector<double> V1(op1.size());
    for (std::size_t i = 0; i < op1.size(); ++i) {
        std::size_t j = op1.node_lo() + i;
        V1[i] = model.b[j] * theta2_full[j];
    }
    EigenPair primal = principal_eigen(op1, std::span<const double>(V1));
    EigenPair adjoint = adjoint_principal_eigen(op1, std::span<const double>(V1));

    TangentData t;
    t.phi = primal.sigma0;
    t.w1 = primal.phi;
    double nrm = std::sqrt(op1.inner(t.w1, t.w1));
    for (auto& x : t.w1) x /= nrm;
    t.w1_star = adjoint.phi;
    double pairing = op1.inner(t.w1, t.w1_star);
    for (auto& x : t.w1_star) x /= pairing;

    // v1 = (L2 + 2 d theta2 - mu)^{-1} (eps c theta2 w1)
    auto w1_full = op1.to_full(t.w1);
    Tridiag m2 = op2.matrix();
    std::vector<double> rhs(op2.size());
    for (std::size_t i = 0; i < op2.size(); ++i) {
        std::size_t j = op2.node_lo() + i;
        m2.diag[i] += 2.0 * model.d[j] * th2.z[i] - mu;
        rhs[i] = eps * model.c[j] * th2.z[i] * w1_full[j];
    }
    t.v1 = tridiag_solve(m2, rhs);

    // lambda'(0) = <(eps a - m b theta2) w1^2, w1*> + <b v1 w1, w1*>
    auto v1_full = op2.to_full(t.v1);
    std::vector<double> integrand(op1.size());
    for (std::size_t i = 0; i < op1.size(); ++i) {
        std::size_t j = op1.node_lo() + i;
        integrand[i] = (eps * model.a[j] - model.m[j] * model.b[j] * theta2_full[j]) *
                           t.w1[i] * t.w1[i] +
                       model.b[j] * v1_full[j] * t.w1[i];
    }
    t.lambda_prime = op1.inner(integrand, t.w1_star);
    return t;
}

namespace {

constexpr double kConeGuard = 0.1;

/// Parameter-dependent nonlinear system F(x, lambda) = 0 with a banded
/// Jacobian, as consumed by the pseudo-arclength engine.
class ArcSystem {
public:
    virtual ~ArcSystem() = default;
    virtual std::size_t dim() const = 0;
    virtual std::vector<double> residual(const std::vector<double>& x, double lambda) const = 0;
    virtual BandedMatrix jacobian(const std::vector<double>& x, double lambda) const = 0;
    virtual std::vector<double> d_lambda(const std::vector<double>& x, double lambda) const = 0;
    virtual bool admissible(const std::vector<double>& x) const = 0;
    virtual double primary_norm(const std::vector<double>& x) const = 0;
    /// Floating-point floor of the residual at this state (see residual_floor).
    virtual double floor_at(const std::vector<double>& x) const = 0;
};

double rms_dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s / static_cast<double>(a.size());
}

/// Bordered Newton for F(x, lambda) = 0 with the scalar constraint
/// a.x + t_lam * lambda = rhs_const (the dot is a plain euclidean dot; scale
/// the weights into `a`). Returns false instead of throwing on failure.
bool bordered_newton(const ArcSystem& sys, std::vector<double>& x, double& lambda,
                     const std::vector<double>& a, double t_lam, double rhs_const,
                     std::size_t max_iter, double tol) {
    std::vector<double> xi = x;
    double li = lambda;
    try {
        for (std::size_t it = 0; it < max_iter; ++it) {
            if (!sys.admissible(xi)) return false;
            std::vector<double> r = sys.residual(xi, li);
            double g = -rhs_const + t_lam * li;
            for (std::size_t k = 0; k < xi.size(); ++k) g += a[k] * xi[k];
            if (std::max(max_abs(r), std::fabs(g)) <= tol + sys.floor_at(xi)) {
                x = std::move(xi);
                lambda = li;
                return true;
            }
            BandedMatrix J = sys.jacobian(xi, li);
            J.factor();
            std::vector<double> x1 = J.solve(r);
            std::vector<double> x2 = J.solve(sys.d_lambda(xi, li));
            double ax1 = 0.0, ax2 = 0.0;
            for (std::size_t k = 0; k < xi.size(); ++k) {
                ax1 += a[k] * x1[k];
                ax2 += a[k] * x2[k];
            }
            double denom = ax2 - t_lam;
            if (std::fabs(denom) < 1e-300) return false;
            double dl = (ax1 - g) / denom;
            for (std::size_t k = 0; k < xi.size(); ++k) xi[k] -= x1[k] - dl * x2[k];
            li -= dl;
            if (!std::isfinite(li)) return false;
        }
    } catch (const SolverError&) {
        return false;
    } catch (const ValidationError&) {
        return false;
    }
    return false;
}

struct GenericPoint {
    double s = 0.0;
    std::vector<double> x;
    double lambda = 0.0;
    double dlambda_ds = 0.0;
};

struct GenericBranch {
    std::vector<GenericPoint> points;
    std::vector<FoldPoint> folds;
    Termination termination = Termination::step_failure;
};

double arc_distance(const std::vector<double>& xa, double la, const std::vector<double>& xb,
                    double lb) {
    double s = 0.0;
    for (std::size_t i = 0; i < xa.size(); ++i) {
        double d = xa[i] - xb[i];
        s += d * d;
    }
    s /= static_cast<double>(xa.size());
    double dl = la - lb;
    return std::sqrt(s + dl * dl);
}

/// Pseudo-arclength continuation from two already-converged points p0, p1.
GenericBranch continue_generic(const ArcSystem& sys, GenericPoint p0, GenericPoint p1,
                               const ContinuationOptions& opts, double lambda_max,
                               double norm_cap, double s_max) {
    GenericBranch br;
    std::size_t n = sys.dim();

    p0.s = 0.0;
    p1.s = arc_distance(p1.x, p1.lambda, p0.x, p0.lambda);

    // unit secant tangent in the RMS metric
    std::vector<double> tx(n);
    double t_lam = 0.0;
    auto set_tangent = [&](const GenericPoint& prev, const GenericPoint& cur) {
        double ds = cur.s - prev.s;
        for (std::size_t i = 0; i < n; ++i) tx[i] = (cur.x[i] - prev.x[i]) / ds;
        t_lam = (cur.lambda - prev.lambda) / ds;
        double nrm = std::sqrt(rms_dot(tx, tx) + t_lam * t_lam);
        for (auto& v : tx) v /= nrm;
        t_lam /= nrm;
    };
    set_tangent(p0, p1);
    p0.dlambda_ds = t_lam;
    p1.dlambda_ds = t_lam;

    br.points.push_back(std::move(p0));
    br.points.push_back(std::move(p1));

    double ds = opts.ds0;
    std::size_t run_of_successes = 0;
    br.termination = Termination::max_steps;

    for (std::size_t step = 0; step < opts.max_steps; ++step) {
        const GenericPoint& cur = br.points.back();
        if (sys.primary_norm(cur.x) >= norm_cap) {
            br.termination = Termination::norm_cap_reached;
            break;
        }
        if (cur.lambda >= lambda_max) {
            br.termination = Termination::lambda_max_reached;
            break;
        }
        if (cur.s >= s_max) {
            br.termination = Termination::max_steps;
            break;
        }

        GenericPoint next;
        next.x.resize(n);
        bool ok = false;
        while (!ok) {
            for (std::size_t i = 0; i < n; ++i) next.x[i] = cur.x[i] + ds * tx[i];
            next.lambda = cur.lambda + ds * t_lam;

            std::vector<double> a(n);
            for (std::size_t i = 0; i < n; ++i) a[i] = tx[i] / static_cast<double>(n);
            double rhs_const = t_lam * next.lambda;
            for (std::size_t i = 0; i < n; ++i) rhs_const += a[i] * next.x[i];

            ok = bordered_newton(sys, next.x, next.lambda, a, t_lam, rhs_const,
                                 opts.corrector_max_iter, opts.corrector_tol);
            if (!ok) {
                ds *= 0.5;
                run_of_successes = 0;
                if (ds < opts.ds_min) break;
            }
        }
        if (!ok) {
            br.termination = Termination::step_failure;
            break;
        }

        double ds_actual = arc_distance(next.x, next.lambda, cur.x, cur.lambda);
        next.s = cur.s + ds_actual;
        set_tangent(cur, next);
        next.dlambda_ds = t_lam;
        br.points.push_back(std::move(next));

        if (++run_of_successes >= 3) {
            ds = std::min(ds * 1.3, opts.ds_max);
            run_of_successes = 0;
        }
    }

    // folds: sign change of the segment slopes d lambda / d s, refined by the
    // vertex of the parabola through the three bracketing points
    const auto& pts = br.points;
    for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
        double sl0 = (pts[i + 1].lambda - pts[i].lambda) / (pts[i + 1].s - pts[i].s);
        double sl1 = (pts[i + 2].lambda - pts[i + 1].lambda) / (pts[i + 2].s - pts[i + 1].s);
        if (sl0 == 0.0 || sl0 * sl1 >= 0.0) continue;
        double s0 = pts[i].s, s1 = pts[i + 1].s, s2 = pts[i + 2].s;
        double l0 = pts[i].lambda, l1 = pts[i + 1].lambda, l2 = pts[i + 2].lambda;
        double f01 = (l1 - l0) / (s1 - s0);
        double f12 = (l2 - l1) / (s2 - s1);
        double f012 = (f12 - f01) / (s2 - s0);
        FoldPoint fold;
        if (std::fabs(f012) < 1e-300) {
            fold.s = s1;
            fold.lambda = l1;
        } else {
            fold.s = 0.5 * (s0 + s1) - f01 / (2.0 * f012);
            fold.s = std::clamp(fold.s, s0, s2);
            fold.lambda = l0 + f01 * (fold.s - s0) + f012 * (fold.s - s0) * (fold.s - s1);
        }
        br.folds.push_back(fold);
    }
    return br;
}

class CoupledSystem final : public ArcSystem {
public:
    CoupledSystem(const ModelCoefficients& model, double mu, double eps)
        : model_(model), idx_(model), mu_(mu), eps_(eps),
          base_norm_(std::max(tridiag_inf_norm(model.op1.matrix()),
                              tridiag_inf_norm(model.op2.matrix())) +
                     std::fabs(mu)) {}

    std::size_t dim() const override { return idx_.total; }
    const CoupledIndex& index() const { return idx_; }

    std::vector<double> pack(const SteadyState& st) const {
        std::vector<double> x(idx_.total);
        for (std::size_t i = 0; i < model_.op1.size(); ++i)
            x[static_cast<std::size_t>(idx_.iw[model_.op1.node_lo() + i])] = st.w[i];
        for (std::size_t i = 0; i < model_.op2.size(); ++i)
            x[static_cast<std::size_t>(idx_.iv[model_.op2.node_lo() + i])] = st.v[i];
        return x;
    }

    SteadyState unpack(const std::vector<double>& x, double lambda) const {
        SteadyState st;
        st.lambda = lambda;
        st.mu = mu_;
        st.eps = eps_;
        st.w.resize(model_.op1.size());
        st.v.resize(model_.op2.size());
        for (std::size_t i = 0; i < st.w.size(); ++i)
            st.w[i] = x[static_cast<std::size_t>(idx_.iw[model_.op1.node_lo() + i])];
        for (std::size_t i = 0; i < st.v.size(); ++i)
            st.v[i] = x[static_cast<std::size_t>(idx_.iv[model_.op2.node_lo() + i])];
        return st;
    }

    std::vector<double> residual(const std::vector<double>& x, double lambda) const override {
        SteadyState st = unpack(x, lambda);
        auto [F1, F2] = predprey::residual(st, model_);
        std::vector<double> r(idx_.total);
        for (std::size_t i = 0; i < F1.size(); ++i)
            r[static_cast<std::size_t>(idx_.iw[model_.op1.node_lo() + i])] = F1[i];
        for (std::size_t i = 0; i < F2.size(); ++i)
            r[static_cast<std::size_t>(idx_.iv[model_.op2.node_lo() + i])] = F2[i];
        return r;
    }

    BandedMatrix jacobian(const std::vector<double>& x, double lambda) const override {
        return jacobian_banded(unpack(x, lambda), model_, idx_);
    }

    std::vector<double> d_lambda(const std::vector<double>& x, double lambda) const override {
        return residual_dlambda(unpack(x, lambda), model_, idx_);
    }

    bool admissible(const std::vector<double>& x) const override {
        for (std::size_t i = 0; i < model_.op1.size(); ++i) {
            std::size_t j = model_.op1.node_lo() + i;
            double w = x[static_cast<std::size_t>(idx_.iw[j])];
            if (!std::isfinite(w) || 1.0 + model_.m[j] * w <= kConeGuard) return false;
        }
        return true;
    }

    double primary_norm(const std::vector<double>& x) const override {
        double m = 0.0;
        for (std::size_t i = 0; i < model_.op1.size(); ++i)
            m = std::max(m, std::fabs(x[static_cast<std::size_t>(
                                idx_.iw[model_.op1.node_lo() + i])]));
        return m;
    }

    double floor_at(const std::vector<double>& x) const override {
        return residual_floor(base_norm_, max_abs(x));
    }

private:
    const ModelCoefficients& model_;
    CoupledIndex idx_;
    double mu_, eps_;
    double base_norm_;
};

/// The eps = 0 prey equation with the predator pinned at theta2:
/// F(w, lambda) = L1 w - lambda w + b theta2 w / (1 + m w).
class ScalarSystem final : public ArcSystem {
public:
    ScalarSystem(const ModelCoefficients& model, std::vector<double> theta2_full)
        : model_(model), theta2_full_(std::move(theta2_full)),
          base_norm_(tridiag_inf_norm(model.op1.matrix())) {}

    std::size_t dim() const override { return model_.op1.size(); }

    std::vector<double> residual(const std::vector<double>& x, double lambda) const override {
        std::vector<double> r(x.size());
        model_.op1.matrix().apply(x, r);
        for (std::size_t i = 0; i < x.size(); ++i) {
            std::size_t j = model_.op1.node_lo() + i;
            r[i] += -lambda * x[i] +
                    model_.b[j] * theta2_full_[j] * x[i] / (1.0 + model_.m[j] * x[i]);
        }
        return r;
    }

    BandedMatrix jacobian(const std::vector<double>& x, double lambda) const override {
        const Tridiag& t = model_.op1.matrix();
        BandedMatrix J(x.size(), 1, 1);
        for (std::size_t i = 0; i < x.size(); ++i) {
            std::size_t j = model_.op1.node_lo() + i;
            if (i > 0) J.add(i, i - 1, t.sub[i]);
            if (i + 1 < x.size()) J.add(i, i + 1, t.sup[i]);
            double denom = 1.0 + model_.m[j] * x[i];
            J.add(i, i, t.diag[i] - lambda +
                            model_.b[j] * theta2_full_[j] / (denom * denom));
        }
        return J;
    }

    std::vector<double> d_lambda(const std::vector<double>& x, double) const override {
        std::vector<double> g(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = -x[i];
        return g;
    }

    bool admissible(const std::vector<double>& x) const override {
        for (std::size_t i = 0; i < x.size(); ++i) {
            std::size_t j = model_.op1.node_lo() + i;
            if (!std::isfinite(x[i]) || 1.0 + model_.m[j] * x[i] <= kConeGuard) return false;
        }
        return true;
    }

    double primary_norm(const std::vector<double>& x) const override { return max_abs(x); }

    double floor_at(const std::vector<double>& x) const override {
        return residual_floor(base_norm_, max_abs(x));
    }

private:
    const ModelCoefficients& model_;
    std::vector<double> theta2_full_;
    double base_norm_;
};

/// Quadrature-weighted pin vector <w, w1> embedded in the system unknowns.
std::vector<double> pin_vector(const ArcSystem& sys, const ModelCoefficients& model,
                               const std::vector<double>& w1, const CoupledIndex* idx) {
    std::vector<double> a(sys.dim(), 0.0);
    const auto& quad = model.op1.quad_weights();
    for (std::size_t i = 0; i < model.op1.size(); ++i) {
        std::size_t pos = idx ? static_cast<std::size_t>(idx->iw[model.op1.node_lo() + i]) : i;
        a[pos] = quad[i] * w1[i];
    }
    return a;
}

} // namespace

SteadyState branch_seed(double mu, double eps, const ModelCoefficients& model, double s0,
                        const TangentData& tangent) {
    if (!(s0 > 0)) throw ValidationError("branch_seed: amplitude s0 must be positive");
    CoupledSystem sys(model, mu, eps);

    SteadyState pred;
    pred.lambda = tangent.phi + s0 * tangent.lambda_prime;
    pred.mu = mu;
    pred.eps = eps;
    ThetaSolution th2 = model.semitrivial_predator(mu);
    pred.w.resize(model.op1.size());
    pred.v.resize(model.op2.size());
    for (std::size_t i = 0; i < pred.w.size(); ++i) pred.w[i] = s0 * tangent.w1[i];
    for (std::size_t i = 0; i < pred.v.size(); ++i) pred.v[i] = th2.z[i] + s0 * tangent.v1[i];

    std::vector<double> x = sys.pack(pred);
    double lambda = pred.lambda;
    std::vector<double> a = pin_vector(sys, model, tangent.w1, &sys.index());
    if (!bordered_newton(sys, x, lambda, a, 0.0, s0, 40, 1e-11))
        throw SolverError("branch_seed: pinned corrector did not converge");

    SteadyState st = sys.unpack(x, lambda);
    auto r = residual(st, model);
    st.residual_norm = std::max(max_abs(r.first), max_abs(r.second));
    st.is_coexistence = min_value(st.w) > 0.0 && min_value(st.v) > 0.0;
    return st;
}

namespace {

void finalize_branch(Branch& out, GenericBranch&& gb,
                     const std::function<SteadyState(const std::vector<double>&, double)>& unpack) {
    out.points.reserve(gb.points.size());
    for (auto& gp : gb.points) {
        BranchPoint bp;
        bp.s = gp.s;
        bp.dlambda_ds = gp.dlambda_ds;
        bp.state = unpack(gp.x, gp.lambda);
        bp.state.is_coexistence =
            min_value(bp.state.w) > 0.0 && min_value(bp.state.v) > 0.0;
        out.points.push_back(std::move(bp));
    }
    out.folds = std::move(gb.folds);
    out.termination = gb.termination;
}

} // namespace

Branch continue_branch(double mu, double eps, const ModelCoefficients& model,
                       const ContinuationOptions& opts) {
    TangentData tangent = crandall_rabinowitz_tangent(mu, eps, model);
    ThetaSolution th2 = model.semitrivial_predator(mu);

    Branch out;
    out.mu = mu;
    out.eps = eps;
    out.norm_cap = opts.norm_cap_factor * max_abs(th2.z);
    out.lambda_max = opts.lambda_max > 0.0
                         ? opts.lambda_max
                         : tangent.phi + 5.0 * (tangent.phi - phi_zero(mu, model));

    CoupledSystem sys(model, mu, eps);
    SteadyState bif = semitrivial_state(tangent.phi, mu, eps, model);
    double s0 = opts.seed_amplitude * max_abs(th2.z);
    SteadyState seed = branch_seed(mu, eps, model, s0, tangent);

    GenericPoint p0{0.0, sys.pack(bif), tangent.phi, 0.0};
    GenericPoint p1{0.0, sys.pack(seed), seed.lambda, 0.0};

    double s_max = 1e4;
    GenericBranch gb = continue_generic(sys, std::move(p0), std::move(p1), opts, out.lambda_max,
                                        out.norm_cap, s_max);
    finalize_branch(out, std::move(gb),
                    [&](const std::vector<double>& x, double l) { return sys.unpack(x, l); });
    return out;
}

Branch scalar_branch_eps0(double mu, const ModelCoefficients& model,
                          const ContinuationOptions& opts) {
    ThetaSolution th2 = model.semitrivial_predator(mu);
    if (th2.is_zero)
        throw ValidationError("scalar_branch_eps0: theta2 vanishes (mu <= sigma02)");
    auto theta2_full = model.op2.to_full(th2.z);
    ScalarSystem sys(model, theta2_full);

    TangentData tangent = crandall_rabinowitz_tangent(mu, 0.0, model);

    Branch out;
    out.mu = mu;
    out.eps = 0.0;
    out.norm_cap = opts.norm_cap_factor * max_abs(th2.z);
    out.lambda_max = opts.lambda_max > 0.0
                         ? opts.lambda_max
                         : tangent.phi + 5.0 * (tangent.phi - phi_zero(mu, model));

    // pinned seed at amplitude s0
    double s0 = opts.seed_amplitude * max_abs(th2.z);
    std::vector<double> x(sys.dim());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = s0 * tangent.w1[i];
    double lambda = tangent.phi + s0 * tangent.lambda_prime;
    std::vector<double> a = pin_vector(sys, model, tangent.w1, nullptr);
    if (!bordered_newton(sys, x, lambda, a, 0.0, s0, 40, 1e-11))
        throw SolverError("scalar_branch_eps0: pinned corrector did not converge");

    GenericPoint p0{0.0, std::vector<double>(sys.dim(), 0.0), tangent.phi, 0.0};
    GenericPoint p1{0.0, x, lambda, 0.0};

    double s_max = 10.0 * out.norm_cap; // ample room: arclength tracks ||w||
    GenericBranch gb = continue_generic(sys, std::move(p0), std::move(p1), opts, out.lambda_max,
                                        out.norm_cap, s_max);

    auto unpack = [&](const std::vector<double>& xv, double l) {
        SteadyState st;
        st.lambda = l;
        st.mu = mu;
        st.eps = 0.0;
        st.w = xv;
        st.v = th2.z;
        auto r = residual(st, model);
        st.residual_norm = std::max(max_abs(r.first), max_abs(r.second));
        return st;
    };
    finalize_branch(out, std::move(gb), unpack);
    return out;
}

void scalar_branch_stability(Branch& branch, const ModelCoefficients& model) {
    if (branch.eps != 0.0)
        throw ValidationError("scalar_branch_stability: branch has eps != 0");
    ThetaSolution th2 = model.semitrivial_predator(branch.mu);
    auto theta2_full = model.op2.to_full(th2.z);

    // At eps = 0 the coupled Jacobian is block upper-triangular: the v-block
    // L2 - mu + 2 d theta2 is the same at every point and its index is
    // computed once; the w-block is tridiagonal with nonnegative off-diagonal
    // products, so its inertia follows from the unpivoted pivot signs.
    Tridiag vblock = model.op2.matrix();
    {
        auto dres = model.op2.restrict(model.d.values);
        for (std::size_t i = 0; i < vblock.size(); ++i)
            vblock.diag[i] += -branch.mu + 2.0 * dres[i] * th2.z[i];
        DenseMatrix dm = DenseMatrix::zeros(vblock.size());
        for (std::size_t i = 0; i < dm.n; ++i) {
            dm.at(i, i) = vblock.diag[i];
            if (i > 0) dm.at(i, i - 1) = vblock.sub[i];
            if (i + 1 < dm.n) dm.at(i, i + 1) = vblock.sup[i];
        }
        MorseData vmd = morse_index(dm);
        for (auto& pt : branch.points) pt.state.morse_index = vmd.index;
    }

    const Tridiag& L1 = model.op1.matrix();
    for (auto& pt : branch.points) {
        SteadyState& st = pt.state;
        auto w_full = model.op1.to_full(st.w);
        Tridiag T = L1;
        for (std::size_t i = 0; i < T.size(); ++i) {
            std::size_t j = model.op1.node_lo() + i;
            double den = 1.0 + model.m[j] * w_full[j];
            T.diag[i] += -st.lambda + model.b[j] * theta2_full[j] / (den * den);
        }
        // Sturm-type pivot count of negative eigenvalues
        int neg = 0;
        double piv = T.diag[0];
        if (piv < 0) ++neg;
        for (std::size_t i = 1; i < T.size(); ++i) {
            if (piv == 0.0) piv = 1e-300;
            piv = T.diag[i] - T.sub[i] * T.sup[i - 1] / piv;
            if (piv < 0) ++neg;
        }
        st.morse_index += neg;
    }
}

std::size_t count_states_at(const Branch& branch, double lambda, double fold_tol) {
    const auto& pts = branch.points;
    std::size_t count = 0;
    std::vector<std::pair<double, double>> crossed_segments; // (s_i, s_{i+1})
    auto side = [&](double l) { return l > lambda ? 1 : -1; };
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (!pts[i].state.is_coexistence || !pts[i + 1].state.is_coexistence) continue;
        if (side(pts[i].state.lambda) != side(pts[i + 1].state.lambda)) {
            ++count;
            crossed_segments.emplace_back(pts[i].s, pts[i + 1].s);
        }
    }
    if (fold_tol > 0.0) {
        for (const auto& fold : branch.folds) {
            if (std::fabs(fold.lambda - lambda) > fold_tol) continue;
            bool near_crossing = false;
            for (const auto& [sa, sb] : crossed_segments)
                if (fold.s >= sa - fold_tol && fold.s <= sb + fold_tol) near_crossing = true;
            if (!near_crossing) ++count; // tangency just short of lambda: one critical state
        }
    }
    return count;
}

} // namespace predprey
