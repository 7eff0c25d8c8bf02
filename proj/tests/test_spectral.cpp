#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "predprey/grid.hpp"
#include "predprey/spectral.hpp"

using namespace predprey;

namespace {

EllipticOperator make_op(const Grid& g, const BoundarySpec& bc) {
    return assemble_operator(constant_field(1.0, g), constant_field(0.0, g),
                             constant_field(0.0, g), bc, g);
}

} // namespace

TEST_CASE("sigma0 monotone in the potential on random pairs") {
    Grid g = build_grid(32);
    EllipticOperator opN = make_op(g, BoundarySpec::neumann());
    EllipticOperator opD = make_op(g, BoundarySpec::dirichlet());
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    std::uniform_real_distribution<double> G(0.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> V1(g.num_nodes()), V2(g.num_nodes());
        bool strict = false;
        for (std::size_t i = 0; i < V1.size(); ++i) {
            V1[i] = U(rng);
            double gap = G(rng);
            V2[i] = V1[i] + gap;
            if (gap > 1e-2) strict = true;
        }
        const EllipticOperator& op = (trial % 2 == 0) ? opN : opD;
        double s1 = principal_eigen(op, CoefficientField{V1}).sigma0;
        double s2 = principal_eigen(op, CoefficientField{V2}).sigma0;
        CHECK(s2 >= s1);
        if (strict) CHECK(s2 > s1);
    }
}

TEST_CASE("eigenpair satisfies its defining residual") {
    Grid g = build_grid(64);
    EllipticOperator op = make_op(g, BoundarySpec::neumann());
    std::vector<double> V(g.num_nodes());
    for (std::size_t i = 0; i < V.size(); ++i) V[i] = std::sin(5.0 * g.node(i));
    EigenPair p = principal_eigen(op, CoefficientField{V});
    CHECK(p.residual <= 1e-9);
    for (double v : p.phi) CHECK(v > 0.0);
    CHECK(max_abs(p.phi) == doctest::Approx(1.0));
}

TEST_CASE("adjoint eigenpair shares the eigenvalue and solves the transpose") {
    Grid g = build_grid(48);
    // non-symmetric via drift
    EllipticOperator op = assemble_operator(constant_field(1.0, g), constant_field(2.0, g),
                                            constant_field(0.0, g), BoundarySpec::neumann(), g);
    std::vector<double> V(g.num_nodes());
    for (std::size_t i = 0; i < V.size(); ++i) V[i] = g.node(i);
    EigenPair primal = principal_eigen(op, CoefficientField{V});
    EigenPair adj = adjoint_principal_eigen(op, CoefficientField{V});
    CHECK(adj.sigma0 == doctest::Approx(primal.sigma0).epsilon(1e-8));
    // residual of the transposed matrix at the adjoint vector
    Tridiag m = op.matrix();
    auto vres = op.restrict(CoefficientField{V}.values);
    for (std::size_t i = 0; i < m.size(); ++i) m.diag[i] += vres[i];
    std::vector<double> y(m.size());
    m.apply_transpose(adj.phi, y);
    double resid = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        resid = std::max(resid, std::fabs(y[i] - adj.sigma0 * adj.phi[i]));
    CHECK(resid <= 1e-8);
    for (double v : adj.phi) CHECK(v > 0.0);
}

TEST_CASE("adjoint equals primal for the symmetric Neumann Laplacian up to weights") {
    Grid g = build_grid(96);
    EllipticOperator op = make_op(g, BoundarySpec::neumann());
    std::vector<double> V(g.num_nodes());
    for (std::size_t i = 0; i < V.size(); ++i) V[i] = std::cos(3.0 * g.node(i));
    EigenPair primal = principal_eigen(op, CoefficientField{V});
    EigenPair adj = adjoint_principal_eigen(op, CoefficientField{V});
    // interior entries agree; boundary entries of the adjoint carry the
    // half-weight of the trapezoid rule relative to the primal
    double scale = adj.phi[10] / primal.phi[10];
    for (std::size_t i = 1; i + 1 < primal.phi.size(); ++i)
        CHECK(adj.phi[i] == doctest::Approx(scale * primal.phi[i]).epsilon(1e-6));
}

TEST_CASE("morse_index counts negative real parts") {
    DenseMatrix m;
    m.n = 3;
    // block diagonal: eigenvalues -1, 3, and 0.5
    m.data = {-1.0, 0.0, 0.0,
               0.0, 3.0, 0.0,
               0.0, 0.0, 0.5};
    MorseData md = morse_index(m);
    CHECK(md.index == 1);
    CHECK(!md.critical);
    CHECK(md.tau0 == doctest::Approx(-1.0));

    DenseMatrix rot;
    rot.n = 2;
    rot.data = {0.5, -2.0,
                2.0, 0.5}; // complex pair 0.5 +- 2i
    MorseData mr = morse_index(rot);
    CHECK(mr.index == 0);
    CHECK(mr.tau0 == doctest::Approx(0.5));
}
