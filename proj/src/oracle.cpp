#include "predprey/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "predprey/errors.hpp"

namespace predprey::oracle {

namespace {

constexpr double kRootResidualTol = 1e-10;
constexpr double kDoubleRootTol = 1e-8;
constexpr double kAdmissTol = 1e-12;

double eval_cubic(const std::array<double, 3>& c, double x) {
    return ((x + c[0]) * x + c[1]) * x + c[2];
}

double eval_cubic_deriv(const std::array<double, 3>& c, double x) {
    return (3.0 * x + 2.0 * c[0]) * x + c[1];
}

void check_positive(double v, const char* name) {
    if (!(v > 0)) throw ValidationError(std::string("oracle: ") + name + " must be positive");
}

void validate(const ConstParams& p) {
    check_positive(p.a, "a");
    check_positive(p.b, "b");
    check_positive(p.c, "c");
    check_positive(p.d, "d");
    check_positive(p.mu, "mu");
}

} // namespace

double capital_phi(const ConstParams& p) {
    validate(p);
    return p.b * p.mu / p.d;
}

double eps_star_lambda(const ConstParams& p, double lambda) {
    validate(p);
    return (2.0 * p.d * lambda - p.b * p.mu) / (p.b * p.c + p.a * p.d);
}

double eps_star(const ConstParams& p) { return eps_star_lambda(p, capital_phi(p)); }

double theta_const(double rho, double xi) {
    if (!(xi > 0)) throw ValidationError("oracle: theta_const needs xi > 0");
    return std::max(rho, 0.0) / xi;
}

double phi_eps_const(const ConstParams& p, double eps) {
    validate(p);
    check_positive(eps, "eps");
    double ea = eps * p.a;
    return 0.5 * ea * (-1.0 + std::sqrt(1.0 + 4.0 * p.b * p.mu / (p.d * ea)));
}

double psi_eps_const(const ConstParams& p, double eps, double lambda) {
    validate(p);
    check_positive(eps, "eps");
    double theta1 = theta_const(lambda, eps * p.a);
    return -eps * p.c * theta1 / (1.0 + theta1);
}

double lambda_prime_const(const ConstParams& p, double eps) {
    validate(p);
    if (eps < 0) throw ValidationError("oracle: eps must be nonnegative");
    return eps * p.a - p.b * p.mu / p.d + p.b * eps * p.c / p.d;
}

std::array<double, 3> cubic_coeffs(const ConstParams& p, double eps, double lambda) {
    validate(p);
    check_positive(eps, "eps");
    double ead = eps * p.a * p.d;
    return {2.0 - lambda / (eps * p.a),
            1.0 + p.b * p.c / (p.a * p.d) + (p.b * p.mu - 2.0 * p.d * lambda) / ead,
            (p.b * p.mu - p.d * lambda) / ead};
}

std::vector<double> cubic_roots(const std::array<double, 3>& coeffs) {
    const double c2 = coeffs[0], c1 = coeffs[1], c0 = coeffs[2];
    // depressed form t^3 + p t + q with x = t - c2/3
    double shift = c2 / 3.0;
    double pp = c1 - c2 * c2 / 3.0;
    double qq = c0 - c1 * c2 / 3.0 + 2.0 * c2 * c2 * c2 / 27.0;
    double disc = -4.0 * pp * pp * pp - 27.0 * qq * qq;

    std::vector<double> roots;
    double scale = std::max({1.0, std::fabs(pp), std::fabs(qq)});
    if (disc > 1e-14 * scale * scale) {
        // three distinct real roots, trigonometric form
        double r = std::sqrt(-pp / 3.0);
        double arg = std::clamp(3.0 * qq / (2.0 * pp * r), -1.0, 1.0);
        double phi = std::acos(arg);
        for (int k = 0; k < 3; ++k)
            roots.push_back(2.0 * r * std::cos((phi - 2.0 * M_PI * k) / 3.0) - shift);
    } else if (disc < -1e-14 * scale * scale) {
        // one real root, stable Cardano
        double u = std::sqrt(qq * qq / 4.0 + pp * pp * pp / 27.0);
        double t;
        if (qq >= 0) {
            double alpha = std::cbrt(-qq / 2.0 - u);
            t = alpha + (alpha != 0.0 ? -pp / (3.0 * alpha) : 0.0);
        } else {
            double alpha = std::cbrt(-qq / 2.0 + u);
            t = alpha + (alpha != 0.0 ? -pp / (3.0 * alpha) : 0.0);
        }
        roots.push_back(t - shift);
    } else {
        // borderline: a repeated root
        if (std::fabs(pp) < 1e-14 * scale) {
            roots.push_back(-shift); // triple root
        } else {
            double t1 = 3.0 * qq / pp;        // simple root
            double t2 = -3.0 * qq / (2.0 * pp); // double root
            roots.push_back(t1 - shift);
            roots.push_back(t2 - shift);
        }
    }

    // one step of Newton polish (guarded), then sort and dedupe
    double coeff_scale = std::max({1.0, std::fabs(c2), std::fabs(c1), std::fabs(c0)});
    for (auto& x : roots) {
        for (int it = 0; it < 3; ++it) {
            double f = eval_cubic(coeffs, x);
            double df = eval_cubic_deriv(coeffs, x);
            if (std::fabs(df) < 1e-12 * coeff_scale) break;
            double step = f / df;
            if (!std::isfinite(step)) break;
            x -= step;
        }
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double x : roots) {
        if (!out.empty() && std::fabs(x - out.back()) <= kDoubleRootTol) continue;
        if (std::fabs(eval_cubic(coeffs, x)) > kRootResidualTol * coeff_scale)
            throw SolverError("oracle: cubic root failed residual check");
        out.push_back(x);
    }
    return out;
}

std::vector<ConstState> constant_states(const ConstParams& p, double eps, double lambda) {
    auto roots = cubic_roots(cubic_coeffs(p, eps, lambda));
    std::vector<ConstState> states;
    for (double w : roots) {
        if (w <= kAdmissTol) continue;
        double margin = lambda - eps * p.a * w;
        if (margin < -kAdmissTol) continue;
        ConstState st;
        st.w = w;
        st.v = (1.0 + w) * margin / p.b;
        st.critical = margin <= kAdmissTol;
        states.push_back(st);
    }
    return states;
}

ConstState eps0_state(const ConstParams& p, double lambda) {
    validate(p);
    double phi = capital_phi(p);
    if (!(lambda > 0.0) || !(lambda < phi))
        throw ValidationError("oracle: eps0 state exists only for 0 < lambda < Phi");
    ConstState st;
    st.w = p.b * p.mu / (p.d * lambda) - 1.0;
    st.v = p.mu / p.d;
    return st;
}

namespace {

// numerator N(w) with lambda(w) = eps a N(w) / (1+w)^2
double branch_numerator(const ConstParams& p, double eps, double w) {
    double k = p.b * p.mu / (eps * p.a * p.d);
    return ((w + 2.0) * w + 1.0 + p.b * p.c / (p.a * p.d) + k) * w + k;
}

double branch_numerator_deriv(const ConstParams& p, double eps, double w) {
    double k = p.b * p.mu / (eps * p.a * p.d);
    return (3.0 * w + 4.0) * w + 1.0 + p.b * p.c / (p.a * p.d) + k;
}

// sign of d lambda / d w, up to a positive factor
double slope_indicator(const ConstParams& p, double eps, double w) {
    return branch_numerator_deriv(p, eps, w) * (1.0 + w) - 2.0 * branch_numerator(p, eps, w);
}

} // namespace

double lambda_of_w(const ConstParams& p, double eps, double w) {
    validate(p);
    check_positive(eps, "eps");
    if (w < 0) throw ValidationError("oracle: lambda_of_w needs w >= 0");
    return eps * p.a * branch_numerator(p, eps, w) / ((1.0 + w) * (1.0 + w));
}

std::vector<double> q_roots(const ConstParams& p, double eps) {
    validate(p);
    check_positive(eps, "eps");
    double phi = capital_phi(p);
    double qb = 2.0 - phi / (eps * p.a);
    double qc = 1.0 + p.b * p.c / (p.a * p.d) - p.b * p.mu / (eps * p.a * p.d);
    double disc = qb * qb - 4.0 * qc;
    if (disc < 0) return {};
    double sq = std::sqrt(disc);
    double r1 = qb >= 0 ? (-qb - sq) / 2.0 : qc / ((-qb + sq) / 2.0);
    double r2 = qb >= 0 ? qc / ((-qb - sq) / 2.0) : (-qb + sq) / 2.0;
    if (r1 > r2) std::swap(r1, r2);
    return {r1, r2};
}

RegimeCertificate regime_classify(const ConstParams& p, double eps) {
    validate(p);
    check_positive(eps, "eps");
    RegimeCertificate cert;
    cert.phi = capital_phi(p);
    cert.eps_star = eps_star(p);

    // locate interior critical points of lambda(w) on (0, w_hi]
    const double w_hi = 100.0;
    const std::size_t samples = 100000;
    double prev_w = 1e-9;
    double prev_s = slope_indicator(p, eps, prev_w);
    for (std::size_t i = 1; i <= samples; ++i) {
        double w = w_hi * static_cast<double>(i) / static_cast<double>(samples);
        double s = slope_indicator(p, eps, w);
        if (prev_s == 0.0 || prev_s * s < 0.0) {
            double lo = prev_w, hi = w, slo = prev_s;
            for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + hi); ++it) {
                double mid = 0.5 * (lo + hi);
                double smid = slope_indicator(p, eps, mid);
                if (smid == 0.0 || smid * slo > 0.0) {
                    lo = mid;
                    slo = smid;
                } else {
                    hi = mid;
                }
            }
            double wf = 0.5 * (lo + hi);
            double lf = lambda_of_w(p, eps, wf);
            if (lf - eps * p.a * wf > kAdmissTol) { // fold of an admissible state
                cert.fold_w.push_back(wf);
                cert.fold_lambda.push_back(lf);
            }
        }
        prev_w = w;
        prev_s = s;
    }

    cert.regime = cert.fold_w.size() >= 2
                      ? Regime::s_shaped
                      : (cert.fold_w.empty() ? Regime::monotone : Regime::single_fold);
    cert.eta = 0.0;
    if (!cert.fold_lambda.empty()) {
        cert.eta = std::numeric_limits<double>::infinity();
        for (double lf : cert.fold_lambda)
            cert.eta = std::min(cert.eta, std::fabs(lf - cert.phi));
    }
    cert.explanation = "branch lambda(w) has " + std::to_string(cert.fold_w.size()) +
                       " admissible interior critical points; bc - ad = " +
                       std::to_string(p.b * p.c - p.a * p.d) + ", eps - eps* = " +
                       std::to_string(eps - cert.eps_star);
    return cert;
}

const char* regime_name(Regime r) {
    switch (r) {
    case Regime::monotone: return "monotone";
    case Regime::single_fold: return "single_fold";
    case Regime::s_shaped: return "s_shaped";
    }
    return "unknown";
}

} // namespace predprey::oracle
