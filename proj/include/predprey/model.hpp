#pragma once

#include "predprey/grid.hpp"
#include "predprey/logistic.hpp"

namespace predprey {

/// The full model data: coefficients a,b,c,d,m and the two elliptic terns.
/// m is normalized so ||m||_inf = 1 unless it vanishes identically.
struct ModelCoefficients {
    Grid grid;
    CoefficientField a, b, c, d, m;
    EllipticOperator op1, op2;

    double sigma01 = 0.0; // sigma0[L1, B1]
    double sigma02 = 0.0; // sigma0[L2, B2]

    ModelCoefficients(Grid g, CoefficientField a_, CoefficientField b_, CoefficientField c_,
                      CoefficientField d_, CoefficientField m_, EllipticOperator o1,
                      EllipticOperator o2);

    /// theta_{[L1, lambda, eps*a]}, the prey-only state at saturation eps.
    ThetaSolution semitrivial_prey(double lambda, double eps) const;
    /// theta_{[L2, mu, d]}, the predator-only state.
    ThetaSolution semitrivial_predator(double mu) const;
};

/// Validates the coefficient hypotheses (a,d > 0; b,c >= 0 not identically 0;
/// m >= 0) and renormalizes m to ||m||_inf = 1, warning if it rescales.
ModelCoefficients make_model(const Grid& grid, CoefficientField a, CoefficientField b,
                             CoefficientField c, CoefficientField d, CoefficientField m,
                             EllipticOperator op1, EllipticOperator op2);

/// The constant-coefficient Neumann prototype: c1 = c2 = 0, A = 1, m = 1.
ModelCoefficients make_constant_model(const Grid& grid, double a, double b, double c, double d);

} // namespace predprey
