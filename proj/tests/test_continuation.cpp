#include <doctest.h>

#include <cmath>

#include "predprey/continuation.hpp"
#include "predprey/model.hpp"
#include "predprey/oracle.hpp"

using namespace predprey;

namespace {

ModelCoefficients a1_model(std::size_t n = 64) {
    Grid g = build_grid(n);
    return make_constant_model(g, 1.0, 2.0, 1.0, 1.0);
}

const oracle::ConstParams kA1{1.0, 2.0, 1.0, 1.0, 1.0};

} // namespace

TEST_CASE("tangent at the bifurcation point reproduces the constant closed forms") {
    auto model = a1_model();
    for (double eps : {0.1, 0.3, 0.7}) {
        TangentData td = crandall_rabinowitz_tangent(1.0, eps, model);
        CHECK(td.phi == doctest::Approx(oracle::capital_phi(kA1)).epsilon(1e-8));
        CHECK(td.lambda_prime ==
              doctest::Approx(oracle::lambda_prime_const(kA1, eps)).epsilon(1e-6));
        // normalization <w1, w1> = 1, <w1, w1_star> = 1
        CHECK(model.op1.inner(td.w1, td.w1) == doctest::Approx(1.0));
        CHECK(model.op1.inner(td.w1, td.w1_star) == doctest::Approx(1.0));
    }
}

TEST_CASE("subcritical slope lambda'(0) < 0 in all tested configurations") {
    auto model = a1_model();
    for (double eps : {0.0, 1e-3, 1e-2, 0.1, 0.5})
        CHECK(crandall_rabinowitz_tangent(1.0, eps, model).lambda_prime < 0.0);
}

TEST_CASE("branch seed is a small positive coexistence state") {
    auto model = a1_model();
    const double eps = 0.1;
    TangentData td = crandall_rabinowitz_tangent(1.0, eps, model);
    double s0 = 1e-3;
    SteadyState seed = branch_seed(1.0, eps, model, s0, td);
    CHECK(seed.is_coexistence);
    CHECK(min_value(seed.w) > 0.0);
    CHECK(min_value(seed.v) > 0.0);
    CHECK(seed.lambda < td.phi); // subcritical side
    // first-order amplitude law
    CHECK(std::fabs(seed.norm_w_inf() / s0 - max_abs(td.w1)) < 0.05 * max_abs(td.w1));
}

TEST_CASE("secant slope of the seeded branch matches lambda'(0) within 5 percent") {
    auto model = a1_model();
    const double eps = 0.1;
    TangentData td = crandall_rabinowitz_tangent(1.0, eps, model);
    double s0 = 1e-4, s1 = 2e-4;
    SteadyState a = branch_seed(1.0, eps, model, s0, td);
    SteadyState b = branch_seed(1.0, eps, model, s1, td);
    double secant = (b.lambda - a.lambda) / (s1 - s0);
    CHECK(std::fabs(secant - td.lambda_prime) < 0.05 * std::fabs(td.lambda_prime));
}

TEST_CASE("S-shaped branch at eps = 0.7 has two folds matching the oracle") {
    auto model = a1_model();
    const double eps = 0.7;
    Branch br = continue_branch(1.0, eps, model);
    CHECK(br.termination == Termination::lambda_max_reached);
    REQUIRE(br.folds.size() == 2);

    oracle::RegimeCertificate cert = oracle::regime_classify(kA1, eps);
    CHECK(cert.regime == oracle::Regime::s_shaped);
    REQUIRE(cert.fold_lambda.size() == 2);
    double lo_got = std::min(br.folds[0].lambda, br.folds[1].lambda);
    double hi_got = std::max(br.folds[0].lambda, br.folds[1].lambda);
    double lo_exp = std::min(cert.fold_lambda[0], cert.fold_lambda[1]);
    double hi_exp = std::max(cert.fold_lambda[0], cert.fold_lambda[1]);
    CHECK(std::fabs(lo_got - lo_exp) < 1e-4);
    CHECK(std::fabs(hi_got - hi_exp) < 1e-4);

    // counts across the S-window agree with the oracle
    for (double lambda : {2.002, 1.996, 2.2}) {
        auto states = oracle::constant_states(kA1, eps, lambda);
        CHECK(count_states_at(br, lambda) == states.size());
    }
}

TEST_CASE("monotone branch reports no folds and one state per lambda") {
    auto model = a1_model();
    const double eps = 1.2; // above eps*: monotone regime
    oracle::RegimeCertificate cert = oracle::regime_classify(kA1, eps);
    CHECK(cert.regime == oracle::Regime::monotone);
    Branch br = continue_branch(1.0, eps, model);
    CHECK(br.folds.empty());
    CHECK(count_states_at(br, 0.5 * (br.points.front().state.lambda + br.lambda_max)) >= 1);
    CHECK(count_states_at(br, br.lambda_max + 1.0) == 0);
}

TEST_CASE("eps = 0 scalar branch matches the closed-form graph") {
    auto model = a1_model();
    Branch br = scalar_branch_eps0(1.0, model);
    CHECK(br.termination == Termination::norm_cap_reached);
    double Phi = oracle::capital_phi(kA1);
    for (const auto& pt : br.points) {
        if (pt.s == 0.0) continue; // bifurcation point itself
        double lam = pt.state.lambda;
        CHECK(lam > 0.0);
        CHECK(lam < Phi + 1e-9);
        if (pt.state.norm_w_inf() > 1e-6) {
            // w = b mu/(d lambda) - 1 for the constant model
            double expect = oracle::eps0_state(kA1, lam).w;
            CHECK(pt.state.norm_w_inf() == doctest::Approx(expect).epsilon(1e-6));
        }
    }
}

TEST_CASE("count_states_at counts fold tangencies once") {
    auto model = a1_model();
    const double eps = 0.7;
    Branch br = continue_branch(1.0, eps, model);
    REQUIRE(br.folds.size() == 2);
    double lam_fold = br.folds[0].lambda;
    std::size_t with_fold = count_states_at(br, lam_fold, 1e-7);
    std::size_t around = count_states_at(br, lam_fold);
    CHECK(with_fold >= around);
    CHECK(with_fold >= 2);
}

TEST_CASE("termination names are stable strings") {
    CHECK(std::string(termination_name(Termination::lambda_max_reached)) == "lambda_max_reached");
    CHECK(std::string(termination_name(Termination::norm_cap_reached)) == "norm_cap_reached");
    CHECK(std::string(termination_name(Termination::step_failure)) == "step_failure");
    CHECK(std::string(termination_name(Termination::max_steps)) == "max_steps");
}
