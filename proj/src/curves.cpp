#include "predprey/curves.hpp"

#include <cmath>
#include <future>
#include <limits>

namespace predprey {

namespace {

// potential b * theta2 / (1 + m * w_full) on op1 unknowns; w_full may be empty (w = 0)
std::vector<double> predation_potential(const ModelCoefficients& model,
                                        const std::vector<double>& theta2_full,
                                        const std::vector<double>& w_full,
                                        const std::vector<double>* mask = nullptr) {
    const auto& op = model.op1;
    std::vector<double> v(op.size());
    for (std::size_t i = 0; i < op.size(); ++i) {
        std::size_t j = op.node_lo() + i;
        double denom = w_full.empty() ? 1.0 : 1.0 + model.m[j] * w_full[j];
        double val = model.b[j] * theta2_full[j] / denom;
        if (mask) val *= (*mask)[j];
        v[i] = val;
    }
    return v;
}

} // namespace

std::vector<double> support_indicator(const CoefficientField& m, double m_tol) {
    std::vector<double> chi(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) chi[i] = m[i] > m_tol ? 1.0 : 0.0;
    return chi;
}

double capital_phi(double mu, const ModelCoefficients& model) {
    ThetaSolution th2 = model.semitrivial_predator(mu);
    auto theta2_full = model.op2.to_full(th2.z);
    auto V = predation_potential(model, theta2_full, {});
    return principal_eigen(model.op1, std::span<const double>(V)).sigma0;
}

double phi_zero(double mu, const ModelCoefficients& model) {
    ThetaSolution th2 = model.semitrivial_predator(mu);
    auto theta2_full = model.op2.to_full(th2.z);
    auto chi = support_indicator(model.m);
    std::vector<double> mask(chi.size());
    for (std::size_t i = 0; i < chi.size(); ++i) mask[i] = 1.0 - chi[i];
    auto V = predation_potential(model, theta2_full, {}, &mask);
    return principal_eigen(model.op1, std::span<const double>(V)).sigma0;
}

double phi_eps(double mu, double eps, const ModelCoefficients& model) {
    if (!(eps > 0)) throw ValidationError("phi_eps requires eps > 0");
    ThetaSolution th2 = model.semitrivial_predator(mu);
    auto theta2_full = model.op2.to_full(th2.z);

    auto g = [&](double lambda) {
        ThetaSolution th1 = model.semitrivial_prey(lambda, eps);
        auto w_full = model.op1.to_full(th1.z);
        auto V = predation_potential(model, theta2_full, w_full);
        return principal_eigen(model.op1, std::span<const double>(V)).sigma0;
    };

    double lo = model.sigma01;
    double hi = principal_eigen(model.op1,
                                std::span<const double>(
                                    predation_potential(model, theta2_full, {})))
                    .sigma0; // Phi(mu)
    double f_lo = g(lo) - lo;
    double f_hi = g(hi) - hi;
    if (f_lo < 0 || f_hi > 1e-12)
        throw SolverError("wedge curve undefined here: no sign change on [sigma01, Phi]");
    if (f_hi >= 0) return hi; // m plays no role, phi_eps = Phi
    for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
        double mid = 0.5 * (lo + hi);
        if (g(mid) - mid >= 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double psi_eps(double lambda, double eps, const ModelCoefficients& model) {
    if (!(eps > 0)) throw ValidationError("psi_eps requires eps > 0");
    ThetaSolution th1 = model.semitrivial_prey(lambda, eps);
    auto w_full = model.op1.to_full(th1.z);
    const auto& op = model.op2;
    std::vector<double> V(op.size());
    for (std::size_t i = 0; i < op.size(); ++i) {
        std::size_t j = op.node_lo() + i;
        V[i] = -eps * model.c[j] * w_full[j] / (1.0 + model.m[j] * w_full[j]);
    }
    return principal_eigen(op, std::span<const double>(V)).sigma0;
}

double psi_zero(double lambda, const ModelCoefficients& model) {
    ThetaSolution th1 = model.semitrivial_prey(lambda, 1.0); // theta_{[L1,lambda,a]}
    auto w_full = model.op1.to_full(th1.z);
    auto chi = support_indicator(model.m);
    const auto& op = model.op2;
    std::vector<double> V(op.size());
    for (std::size_t i = 0; i < op.size(); ++i) {
        std::size_t j = op.node_lo() + i;
        V[i] = -(1.0 - chi[j]) * model.c[j] * w_full[j];
    }
    return principal_eigen(op, std::span<const double>(V)).sigma0;
}

std::vector<WedgePoint> wedge_scan(double lambda_lo, double lambda_hi, double mu_lo,
                                   double mu_hi, double eps, const ModelCoefficients& model,
                                   std::size_t resolution, unsigned jobs) {
    if (resolution < 2) throw ValidationError("wedge_scan resolution must be >= 2");

    std::vector<double> lambdas(resolution), mus(resolution);
    for (std::size_t i = 0; i < resolution; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(resolution - 1);
        lambdas[i] = lambda_lo + t * (lambda_hi - lambda_lo);
        mus[i] = mu_lo + t * (mu_hi - mu_lo);
    }

    constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> psi_of_lambda(resolution, kNaN);
    std::vector<double> phi_of_mu(resolution, kNaN), phieps_of_mu(resolution, kNaN);

    auto eval_axis = [&](std::size_t i) {
        if (lambdas[i] > model.sigma01) {
            try {
                psi_of_lambda[i] = psi_eps(lambdas[i], eps, model);
            } catch (const SolverError&) {}
        }
        try {
            phi_of_mu[i] = capital_phi(mus[i], model);
            phieps_of_mu[i] = phi_eps(mus[i], eps, model);
        } catch (const SolverError&) {}
    };
    if (jobs <= 1) {
        for (std::size_t i = 0; i < resolution; ++i) eval_axis(i);
    } else {
        std::vector<std::future<void>> futs;
        for (unsigned t = 0; t < jobs; ++t)
            futs.push_back(std::async(std::launch::async, [&, t] {
                for (std::size_t i = t; i < resolution; i += jobs) eval_axis(i);
            }));
        for (auto& f : futs) f.get();
    }

    std::vector<WedgePoint> out;
    out.reserve(resolution * resolution);
    for (std::size_t iu = 0; iu < resolution; ++iu) {
        for (std::size_t il = 0; il < resolution; ++il) {
            WedgePoint p;
            p.lambda = lambdas[il];
            p.mu = mus[iu];
            double phi = phi_of_mu[iu], phieps = phieps_of_mu[iu], psi = psi_of_lambda[il];
            if (p.lambda <= model.sigma01) {
                p.region = WedgeRegion::no_coexistence;
            } else if (std::isnan(psi) || std::isnan(phi) || std::isnan(phieps)) {
                p.region = WedgeRegion::indeterminate;
            } else if (p.lambda <= phieps || p.mu <= psi) {
                p.region = WedgeRegion::no_coexistence;
            } else if (p.lambda > phi && p.mu > psi) {
                p.region = WedgeRegion::guaranteed;
            } else {
                p.region = WedgeRegion::indeterminate;
            }
            out.push_back(p);
        }
    }
    return out;
}

} // namespace predprey
