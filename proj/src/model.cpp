#include "predprey/model.hpp"

#include <cmath>
#include <iostream>

namespace predprey {

ModelCoefficients::ModelCoefficients(Grid g, CoefficientField a_, CoefficientField b_,
                                     CoefficientField c_, CoefficientField d_,
                                     CoefficientField m_, EllipticOperator o1,
                                     EllipticOperator o2)
    : grid(g), a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)),
      m(std::move(m_)), op1(std::move(o1)), op2(std::move(o2)) {
    std::vector<double> zero1(op1.size(), 0.0), zero2(op2.size(), 0.0);
    sigma01 = principal_eigen(op1, std::span<const double>(zero1)).sigma0;
    sigma02 = principal_eigen(op2, std::span<const double>(zero2)).sigma0;
}

ThetaSolution ModelCoefficients::semitrivial_prey(double lambda, double eps) const {
    if (!(eps > 0)) throw ValidationError("semitrivial prey state requires eps > 0");
    CoefficientField xi;
    xi.values.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) xi.values[i] = eps * a[i];
    return theta(op1, constant_field(0.0, grid), lambda, xi);
}

ThetaSolution ModelCoefficients::semitrivial_predator(double mu) const {
    return theta(op2, constant_field(0.0, grid), mu, d);
}

ModelCoefficients make_model(const Grid& grid, CoefficientField a, CoefficientField b,
                             CoefficientField c, CoefficientField d, CoefficientField m,
                             EllipticOperator op1, EllipticOperator op2) {
    auto check_len = [&](const CoefficientField& f, const char* name) {
        if (f.size() != grid.num_nodes())
            throw ValidationError(std::string("coefficient ") + name + " has wrong length");
    };
    check_len(a, "a");
    check_len(b, "b");
    check_len(c, "c");
    check_len(d, "d");
    check_len(m, "m");
    if (!(a.min() > 0)) throw ValidationError("coefficient a must satisfy a(x) > 0 everywhere");
    if (!(d.min() > 0)) throw ValidationError("coefficient d must satisfy d(x) > 0 everywhere");
    auto check_nonneg = [](const CoefficientField& f, const char* name) {
        if (f.min() < 0)
            throw ValidationError(std::string("coefficient ") + name + " must be nonnegative");
    };
    check_nonneg(b, "b");
    check_nonneg(c, "c");
    check_nonneg(m, "m");
    if (b.max() == 0) throw ValidationError("coefficient b must not vanish identically");
    if (c.max() == 0) throw ValidationError("coefficient c must not vanish identically");

    double mmax = m.max();
    if (mmax > 0 && std::fabs(mmax - 1.0) > 1e-14) {
        std::cerr << "warning: renormalizing m so that ||m||_inf = 1 (was " << mmax << ")\n";
        for (double& v : m.values) v /= mmax;
    }
    return ModelCoefficients(grid, std::move(a), std::move(b), std::move(c), std::move(d),
                             std::move(m), std::move(op1), std::move(op2));
}

ModelCoefficients make_constant_model(const Grid& grid, double a, double b, double c, double d) {
    auto one = constant_field(1.0, grid);
    auto zero = constant_field(0.0, grid);
    BoundarySpec neumann = BoundarySpec::neumann();
    EllipticOperator op1 = assemble_operator(one, zero, zero, neumann, grid);
    EllipticOperator op2 = assemble_operator(one, zero, zero, neumann, grid);
    return make_model(grid, constant_field(a, grid), constant_field(b, grid),
                      constant_field(c, grid), constant_field(d, grid), one, std::move(op1),
                      std::move(op2));
}

} // namespace predprey
