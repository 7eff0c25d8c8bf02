#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "predprey/errors.hpp"
#include "predprey/oracle.hpp"

using namespace predprey;
using namespace predprey::oracle;

namespace {
const ConstParams kA1{1.0, 2.0, 1.0, 1.0, 1.0};
}

TEST_CASE("threshold closed forms for case A1") {
    CHECK(capital_phi(kA1) == doctest::Approx(2.0));
    CHECK(eps_star(kA1) == doctest::Approx(2.0 / 3.0));
    CHECK(eps_star_lambda(kA1, capital_phi(kA1)) == doctest::Approx(eps_star(kA1)));
    CHECK(theta_const(3.0, 1.5) == doctest::Approx(2.0));
    CHECK(theta_const(-1.0, 1.5) == 0.0);
}

TEST_CASE("phi_eps_const solves its defining equation") {
    for (double eps : {0.05, 0.3, 1.0}) {
        double lam = phi_eps_const(kA1, eps);
        CHECK(lam > 0.0);
        CHECK(lam * (1.0 + lam / (eps * kA1.a)) ==
              doctest::Approx(kA1.b * kA1.mu / kA1.d).epsilon(1e-12));
    }
    // psi_eps = -eps c theta1 / (1 + theta1)
    double lam = 1.0, eps = 0.5;
    double t1 = lam / (eps * kA1.a);
    CHECK(psi_eps_const(kA1, eps, lam) == doctest::Approx(-eps * kA1.c * t1 / (1.0 + t1)));
}

TEST_CASE("cubic root solver on factored examples") {
    // x^3 + 2x = x (x^2 + 2): single real root 0
    auto r1 = cubic_roots({0.0, 2.0, 0.0});
    REQUIRE(r1.size() == 1);
    CHECK(std::fabs(r1[0]) < 1e-12);
    // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
    auto r3 = cubic_roots({-6.0, 11.0, -6.0});
    REQUIRE(r3.size() == 3);
    CHECK(r3[0] == doctest::Approx(1.0));
    CHECK(r3[1] == doctest::Approx(2.0));
    CHECK(r3[2] == doctest::Approx(3.0));
    // double root: (x-1)^2 (x+2) = x^3 - 3x + 2
    auto rd = cubic_roots({0.0, -3.0, 2.0});
    REQUIRE(rd.size() == 2);
    CHECK(rd[0] == doctest::Approx(-2.0));
    CHECK(rd[1] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("back-substitution residual on 500 random parameter draws") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> U(0.1, 3.0);
    for (int trial = 0; trial < 500; ++trial) {
        ConstParams p{U(rng), U(rng), U(rng), U(rng), U(rng)};
        double eps = U(rng), lambda = U(rng);
        auto coeffs = cubic_coeffs(p, eps, lambda);
        double scale = std::max({1.0, std::fabs(coeffs[0]), std::fabs(coeffs[1]),
                                 std::fabs(coeffs[2])});
        for (double r : cubic_roots(coeffs)) {
            double val = ((r + coeffs[0]) * r + coeffs[1]) * r + coeffs[2];
            CHECK(std::fabs(val) <= 1e-12 * scale * std::max(1.0, r * r * r));
        }
    }
}

TEST_CASE("constant states are admissible roots of the cubic") {
    const double eps = 0.1;
    for (double lambda : {0.5, 1.5, 1.99, 2.5, 3.0}) {
        auto states = constant_states(kA1, eps, lambda);
        for (const auto& st : states) {
            CHECK(st.w > 0.0);
            CHECK(st.v > 0.0);
            // back-substitute into the steady-state relations
            double margin = lambda - eps * kA1.a * st.w;
            CHECK(st.v == doctest::Approx((1.0 + st.w) * margin / kA1.b).epsilon(1e-9));
            // lambda_of_w recovers lambda at each admissible root
            CHECK(lambda_of_w(kA1, eps, st.w) == doctest::Approx(lambda).epsilon(1e-9));
        }
    }
}

TEST_CASE("counts match a scan of the branch graph lambda(w)") {
    const double eps = 0.7;
    for (double lambda : {1.8, 1.996, 2.002, 2.01, 2.2}) {
        auto states = constant_states(kA1, eps, lambda);
        // count sign changes of lambda_of_w(w) - lambda over a fine w grid
        std::size_t crossings = 0;
        double prev = lambda_of_w(kA1, eps, 1e-9) - lambda;
        const double wmax = lambda / (eps * kA1.a); // admissibility bound
        const int N = 200000;
        for (int i = 1; i <= N; ++i) {
            double w = 1e-9 + (wmax - 2e-9) * double(i) / N;
            double cur = lambda_of_w(kA1, eps, w) - lambda;
            if ((prev < 0 && cur > 0) || (prev > 0 && cur < 0)) ++crossings;
            prev = cur;
        }
        std::size_t admissible = 0;
        for (const auto& st : states)
            if (!st.critical) ++admissible;
        CHECK(admissible == crossings);
    }
}

TEST_CASE("eps0 state closed form and domain") {
    double lam = 0.5;
    ConstState st = eps0_state(kA1, lam);
    CHECK(st.w == doctest::Approx(2.0 / lam - 1.0));
    CHECK(st.v == doctest::Approx(1.0));
    CHECK_THROWS_AS(eps0_state(kA1, -0.1), ValidationError);
    CHECK_THROWS_AS(eps0_state(kA1, 2.5), ValidationError);
}

TEST_CASE("q_roots carry the nonzero states at lambda = Phi") {
    const double eps = 0.7;
    auto q = q_roots(kA1, eps);
    REQUIRE(q.size() == 2);
    double Phi = capital_phi(kA1);
    for (double w : q)
        CHECK(lambda_of_w(kA1, eps, w) == doctest::Approx(Phi).epsilon(1e-9));
    // above eps* the quadratic becomes complex near Phi for bc > ad... at
    // large eps the pair disappears
    CHECK(q_roots(kA1, 3.0).empty());
}

TEST_CASE("regime classification across eps") {
    RegimeCertificate low = regime_classify(kA1, 0.1);
    CHECK(low.regime == Regime::single_fold);
    REQUIRE(low.fold_lambda.size() == 1);
    CHECK(low.fold_lambda[0] < capital_phi(kA1));

    RegimeCertificate mid = regime_classify(kA1, 0.7);
    CHECK(mid.regime == Regime::s_shaped);
    REQUIRE(mid.fold_lambda.size() == 2);
    CHECK(std::min(mid.fold_lambda[0], mid.fold_lambda[1]) < capital_phi(kA1));
    CHECK(std::max(mid.fold_lambda[0], mid.fold_lambda[1]) > capital_phi(kA1));
    CHECK(mid.eta > 0.0);

    RegimeCertificate high = regime_classify(kA1, 3.0);
    CHECK(high.regime == Regime::monotone);
    CHECK(high.fold_lambda.empty());

    CHECK(std::string(regime_name(Regime::monotone)) == "monotone");
    CHECK(std::string(regime_name(Regime::single_fold)) == "single_fold");
    CHECK(std::string(regime_name(Regime::s_shaped)) == "s_shaped");
}

TEST_CASE("lambda_prime closed form") {
    for (double eps : {0.0, 0.1, 0.5}) {
        double expect = eps * kA1.a - kA1.b * kA1.mu / kA1.d + kA1.b * eps * kA1.c / kA1.d;
        CHECK(lambda_prime_const(kA1, eps) == doctest::Approx(expect));
    }
}
