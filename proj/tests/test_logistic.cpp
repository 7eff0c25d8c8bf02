#include <doctest.h>

#include <cmath>
#include <vector>

#include "predprey/logistic.hpp"
#include "predprey/model.hpp"

using namespace predprey;

namespace {

EllipticOperator neumann_laplacian(const Grid& g) {
    return assemble_operator(constant_field(1.0, g), constant_field(0.0, g),
                             constant_field(0.0, g), BoundarySpec::neumann(), g);
}

} // namespace

TEST_CASE("constant Neumann logistic state is rho/xi") {
    Grid g = build_grid(64);
    EllipticOperator op = neumann_laplacian(g);
    ThetaSolution th = theta(op, constant_field(0.0, g), 1.7, constant_field(0.5, g));
    REQUIRE(!th.is_zero);
    for (double z : th.z) CHECK(std::fabs(z - 3.4) < 1e-8);
}

TEST_CASE("zero below the bifurcation threshold") {
    Grid g = build_grid(64);
    EllipticOperator op = assemble_operator(constant_field(1.0, g), constant_field(0.0, g),
                                            constant_field(0.0, g), BoundarySpec::dirichlet(), g);
    // sigma0 ~ pi^2; rho below it gives the zero state
    ThetaSolution th = theta(op, constant_field(0.0, g), 5.0, constant_field(1.0, g));
    CHECK(th.is_zero);
    for (double z : th.z) CHECK(z == 0.0);
}

TEST_CASE("scaling identity theta_{eps a} = theta_a / eps") {
    Grid g = build_grid(96);
    EllipticOperator op = neumann_laplacian(g);
    std::vector<double> a(g.num_nodes());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = 1.0 + 0.5 * std::sin(3.0 * g.node(i));
    CoefficientField af{a};
    const double lambda = 2.0;
    ThetaSolution ref = theta(op, constant_field(0.0, g), lambda, af);
    REQUIRE(!ref.is_zero);
    for (double eps : {0.1, 0.5, 2.0}) {
        std::vector<double> ea(a);
        for (double& v : ea) v *= eps;
        ThetaSolution sc = theta(op, constant_field(0.0, g), lambda, CoefficientField{ea});
        REQUIRE(!sc.is_zero);
        for (std::size_t i = 0; i < sc.z.size(); ++i)
            CHECK(std::fabs(sc.z[i] - ref.z[i] / eps) < 1e-8 * std::max(1.0, ref.z[i] / eps));
    }
}

TEST_CASE("monotone in rho at every node") {
    Grid g = build_grid(48);
    EllipticOperator op = assemble_operator(constant_field(1.0, g), constant_field(0.0, g),
                                            constant_field(0.0, g), BoundarySpec::dirichlet(), g);
    CoefficientField xi = constant_field(1.0, g);
    ThetaSolution lo = theta(op, constant_field(0.0, g), 11.0, xi);
    ThetaSolution hi = theta(op, constant_field(0.0, g), 14.0, xi);
    REQUIRE(!lo.is_zero);
    REQUIRE(!hi.is_zero);
    for (std::size_t i = 0; i < lo.z.size(); ++i) CHECK(hi.z[i] > lo.z[i]);
}

TEST_CASE("supersolution bound rho_max / xi_min under Neumann") {
    Grid g = build_grid(48);
    EllipticOperator op = neumann_laplacian(g);
    std::vector<double> xi(g.num_nodes());
    for (std::size_t i = 0; i < xi.size(); ++i) xi[i] = 1.0 + g.node(i); // xi_min = 1
    ThetaSolution th = theta(op, constant_field(0.0, g), 3.0, CoefficientField{xi});
    REQUIRE(!th.is_zero);
    for (double z : th.z) CHECK(z <= 3.0 / 1.0 + 1e-8);
}

TEST_CASE("continuity at the bifurcation point") {
    Grid g = build_grid(64);
    EllipticOperator op = neumann_laplacian(g);
    // sigma0 = 0 for the Neumann Laplacian; linear amplitude law near onset
    ThetaSolution th = theta(op, constant_field(0.0, g), 1e-3, constant_field(1.0, g));
    REQUIRE(!th.is_zero);
    CHECK(max_abs(th.z) <= 1e-2);
}

TEST_CASE("degenerate weight is rejected") {
    Grid g = build_grid(32);
    EllipticOperator op = neumann_laplacian(g);
    std::vector<double> xi(g.num_nodes(), 1.0);
    xi[5] = 0.0;
    CHECK_THROWS_AS(theta(op, constant_field(0.0, g), 1.0, CoefficientField{xi}),
                    ValidationError);
}

TEST_CASE("heterogeneous predator state matches a parabolic time-marching oracle") {
    Grid g = build_grid(64);
    auto A = constant_field(1.0, g);
    auto zero = constant_field(0.0, g);
    EllipticOperator op1 = assemble_operator(A, zero, zero, BoundarySpec::neumann(), g);
    EllipticOperator op2 = assemble_operator(A, zero, zero, BoundarySpec::neumann(), g);
    std::vector<double> d(g.num_nodes());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = 1.0 + g.node(i);
    auto one = constant_field(1.0, g);
    auto model = make_model(g, one, one, one, one, one, op1, op2);
    (void)model;
    const double mu = 1.0;
    ThetaSolution th = theta(op2, zero, mu, CoefficientField{d});
    REQUIRE(!th.is_zero);

    // explicit Euler on z_t = -(L z) + mu z - d z^2 from a positive start
    const Tridiag& L = op2.matrix();
    auto dres = op2.restrict(CoefficientField{d}.values);
    std::vector<double> z(op2.size(), 0.5), Lz(op2.size());
    const double dt = 0.2 * g.h * g.h;
    const std::size_t steps = static_cast<std::size_t>(40.0 / dt);
    for (std::size_t s = 0; s < steps; ++s) {
        L.apply(z, Lz);
        for (std::size_t i = 0; i < z.size(); ++i)
            z[i] += dt * (-Lz[i] + mu * z[i] - dres[i] * z[i] * z[i]);
    }
    for (std::size_t i = 0; i < z.size(); ++i) CHECK(std::fabs(z[i] - th.z[i]) < 1e-5);
}
