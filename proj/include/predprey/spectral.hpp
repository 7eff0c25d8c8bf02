#pragma once

#include <complex>
#include <span>
#include <vector>

#include "predprey/grid.hpp"

namespace predprey {

/// Principal eigenpair of (L+V, B, Omega): smallest eigenvalue with positive
/// eigenfunction, normalized ||phi||_inf = 1.
struct EigenPair {
    double sigma0 = 0.0;
    std::vector<double> phi;
    double residual = 0.0;
};

struct SpectralOptions {
    double power_tol = 1e-12;
    double eigen_tol = 1e-9;
    std::size_t max_iter = 10000;
};

/// Principal eigenvalue of L+V by shifted inverse power iteration. V is a full
/// node field (restricted to the operator's unknowns internally).
EigenPair principal_eigen(const EllipticOperator& op, const CoefficientField& V,
                          const SpectralOptions& opts = {});
EigenPair principal_eigen(const EllipticOperator& op, std::span<const double> V_unknowns,
                          const SpectralOptions& opts = {});

/// Same iteration on the transposed matrix; throws if the primal and adjoint
/// eigenvalues disagree beyond 1e-8 relative.
EigenPair adjoint_principal_eigen(const EllipticOperator& op, const CoefficientField& V,
                                  const SpectralOptions& opts = {});
EigenPair adjoint_principal_eigen(const EllipticOperator& op, std::span<const double> V_unknowns,
                                  const SpectralOptions& opts = {});

/// Dense square matrix in row-major order, for linearizations.
struct DenseMatrix {
    std::size_t n = 0;
    std::vector<double> data; // n*n, row-major

    double& at(std::size_t i, std::size_t j) { return data[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * n + j]; }
    static DenseMatrix zeros(std::size_t n) { return {n, std::vector<double>(n * n, 0.0)}; }
};

/// All eigenvalues of a dense real matrix (LAPACK dgeev).
std::vector<std::complex<double>> dense_eigenvalues(const DenseMatrix& m);

/// Morse data of a linearization in the convention that the state is stable
/// iff every eigenvalue has positive real part.
struct MorseData {
    int index = 0;     // count of eigenvalues with Re < -index_tol
    double tau0 = 0.0; // smallest real part
    bool critical = false; // some eigenvalue within (-index_tol, index_tol)
};

inline constexpr double kIndexTol = 1e-8;

MorseData morse_index(const DenseMatrix& m, double index_tol = kIndexTol);

} // namespace predprey
