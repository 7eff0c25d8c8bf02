#include <doctest.h>

#include <cmath>

#include "predprey/curves.hpp"
#include "predprey/model.hpp"
#include "predprey/oracle.hpp"

using namespace predprey;

namespace {

ModelCoefficients heterogeneous_model(std::size_t n = 96) {
    Grid g = build_grid(n);
    auto A = constant_field(1.0, g);
    auto zero = constant_field(0.0, g);
    auto b = make_coefficient(CoefficientSpec::bump(0.3, 0.2, 1.0, 0.2), g);
    auto m = make_coefficient(CoefficientSpec::bump(0.7, 0.2, 1.0, 0.0), g);
    auto one = constant_field(1.0, g);
    EllipticOperator op1 = assemble_operator(A, zero, zero, BoundarySpec::neumann(), g);
    EllipticOperator op2 = assemble_operator(A, zero, zero, BoundarySpec::neumann(), g);
    return make_model(g, one, b, one, one, m, op1, op2);
}

} // namespace

TEST_CASE("constant model thresholds match the closed forms") {
    Grid g = build_grid(64);
    auto model = make_constant_model(g, 1.0, 2.0, 1.0, 1.0);
    oracle::ConstParams p{1.0, 2.0, 1.0, 1.0, 1.0};
    const double mu = 1.0;

    CHECK(capital_phi(mu, model) == doctest::Approx(oracle::capital_phi(p)).epsilon(1e-8));
    // m == 1 everywhere: phi_0 collapses to sigma_{0,1} = 0
    CHECK(std::fabs(phi_zero(mu, model)) < 1e-9);
    for (double eps : {0.1, 0.5, 1.0}) {
        CHECK(phi_eps(mu, eps, model) ==
              doctest::Approx(oracle::phi_eps_const(p, eps)).epsilon(1e-6));
        for (double lambda : {0.5, 1.0, 2.5}) {
            CHECK(psi_eps(lambda, eps, model) ==
                  doctest::Approx(oracle::psi_eps_const(p, eps, lambda)).epsilon(1e-6));
        }
    }
}

TEST_CASE("m identically zero gives phi_eps = Phi") {
    Grid g = build_grid(48);
    auto A = constant_field(1.0, g);
    auto zero = constant_field(0.0, g);
    auto one = constant_field(1.0, g);
    auto b = constant_field(2.0, g);
    EllipticOperator op1 = assemble_operator(A, zero, zero, BoundarySpec::neumann(), g);
    EllipticOperator op2 = assemble_operator(A, zero, zero, BoundarySpec::neumann(), g);
    auto model = make_model(g, one, b, one, one, zero, op1, op2);
    double Phi = capital_phi(1.0, model);
    CHECK(phi_eps(1.0, 0.5, model) == doctest::Approx(Phi).epsilon(1e-8));
}

TEST_CASE("ordering phi_0 < phi_eps < Phi for bm not identically zero") {
    auto model = heterogeneous_model();
    const double mu = 1.0;
    double Phi = capital_phi(mu, model);
    double p0 = phi_zero(mu, model);
    double pe1 = phi_eps(mu, 1e-2, model);
    double pe2 = phi_eps(mu, 1e-1, model);
    CHECK(p0 < pe1);
    CHECK(pe1 < pe2); // phi_eps increases with eps
    CHECK(pe2 < Phi);
}

TEST_CASE("phi_eps tends to phi_0 as eps -> 0") {
    auto model = heterogeneous_model();
    const double mu = 1.0;
    double p0 = phi_zero(mu, model);
    double pe = phi_eps(mu, 1e-6, model);
    CHECK(pe - p0 >= -1e-9);
    CHECK(pe - p0 <= 1e-2);
}

TEST_CASE("psi_zero never exceeds sigma02") {
    auto model = heterogeneous_model();
    for (double lambda : {0.5, 1.0, 2.0})
        CHECK(psi_zero(lambda, model) <= model.sigma02 + 1e-10);
}

TEST_CASE("psi_eps decreasing and unbounded below when m vanishes somewhere") {
    auto model = heterogeneous_model();
    double p1 = psi_eps(1.0, 0.5, model);
    double p2 = psi_eps(20.0, 0.5, model);
    CHECK(p2 < p1);
    CHECK(p2 < -1.0);
}

TEST_CASE("support indicator marks supp m") {
    Grid g = build_grid(9);
    auto m = make_coefficient(CoefficientSpec::bump(0.7, 0.2, 1.0, 0.0), g);
    auto chi = support_indicator(m);
    CHECK(chi[7] == 1.0); // x = 0.7 inside
    CHECK(chi[2] == 0.0); // x = 0.2 outside
}

TEST_CASE("wedge classification is consistent with the threshold curves") {
    Grid g = build_grid(48);
    auto model = make_constant_model(g, 1.0, 2.0, 1.0, 1.0);
    const double eps = 0.5;
    auto pts = wedge_scan(0.2, 3.0, 0.5, 1.5, eps, model, 5, 2);
    REQUIRE(pts.size() == 25);
    for (const auto& pt : pts) {
        double Phi = capital_phi(pt.mu, model);
        double pe = phi_eps(pt.mu, eps, model);
        double psi = psi_eps(pt.lambda, eps, model);
        if (pt.region == WedgeRegion::guaranteed) {
            CHECK(pt.lambda > Phi);
            CHECK(pt.mu > psi);
        } else if (pt.region == WedgeRegion::no_coexistence) {
            CHECK((pt.lambda <= pe || pt.mu <= psi));
        }
    }
}
