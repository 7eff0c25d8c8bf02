#include "predprey/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <lapacke.h>

namespace predprey {

namespace {

// Shift making L+V+s strictly diagonally dominant with positive diagonal.
// With the M-matrix sign pattern the Collatz bound gives sigma0 >= min row sum,
// so s = 1 - min(0, min row sum) guarantees sigma0 + s >= 1 > 0.
double positivity_shift(const Tridiag& m) {
    double min_rowsum = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        double rs = m.diag[i];
        if (i > 0) rs += m.sub[i];
        if (i + 1 < m.size()) rs += m.sup[i];
        min_rowsum = std::min(min_rowsum, rs);
    }
    return 1.0 - min_rowsum;
}

EigenPair power_iterate(const Tridiag& mat, const EllipticOperator& op,
                        const SpectralOptions& opts, bool transposed) {
    const std::size_t n = mat.size();
    const Tridiag work = transposed ? mat.transposed() : mat;
    // Collatz bound on the untransposed matrix; the spectrum is shared with
    // the transpose, so the same shift keeps sigma0 + s >= 1 there too.
    const double s = positivity_shift(mat);
    const Tridiag shifted = work.shifted(s);

    std::vector<double> z(n, 1.0);
    double diff = 0.0;
    // iterate until the update meets power_tol or stagnates at its floating
    // point floor; the a posteriori residual check below is the certificate
    double best_diff = std::numeric_limits<double>::infinity();
    int stalled = 0;
    for (std::size_t it = 0; it < opts.max_iter; ++it) {
        std::vector<double> y =
            tridiag_solve_mmatrix(shifted, z, "inverse iteration lost positivity");
        double scale = max_abs(y);
        if (!(scale > 0)) throw SolverError("inverse power iteration collapsed to zero");
        for (double& v : y) v /= scale;
        diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::fabs(y[i] - z[i]));
        z = std::move(y);
        if (diff == 0.0) break;
        if (diff < best_diff) {
            best_diff = diff;
            stalled = 0;
        } else if (++stalled >= 3 && it >= 50) {
            break;
        }
    }
    if (std::min(diff, best_diff) > 1e-6)
        throw SolverError("principal eigenvalue iteration did not converge, last update " +
                          std::to_string(diff));

    // one more inverse iteration, then a quadrature-weighted quotient
    std::vector<double> y = tridiag_solve_mmatrix(shifted, z, "inverse iteration lost positivity");
    double scale = max_abs(y);
    for (double& v : y) v /= scale;
    z = std::move(y);

    std::vector<double> mz(n);
    work.apply(z, mz);
    double sigma = op.inner(mz, z) / op.inner(z, z);

    EigenPair pair;
    pair.sigma0 = sigma;
    double resid = 0.0;
    for (std::size_t i = 0; i < n; ++i) resid = std::max(resid, std::fabs(mz[i] - sigma * z[i]));
    pair.residual = resid;
    // fix the sign so the eigenfunction is positive
    double mx = 0.0;
    for (double v : z) mx = std::max(mx, v);
    if (mx <= 0)
        for (double& v : z) v = -v;
    pair.phi = std::move(z);
    if (pair.residual > opts.eigen_tol)
        throw SolverError("principal eigenpair residual " + std::to_string(pair.residual) +
                          " exceeds tolerance");
    for (double v : pair.phi)
        if (!(v > 0)) throw SolverError("principal eigenfunction lost positivity");
    return pair;
}

Tridiag with_potential(const EllipticOperator& op, std::span<const double> V_unknowns) {
    Tridiag m = op.matrix();
    if (V_unknowns.size() != m.size())
        throw ValidationError("potential length does not match operator unknowns");
    for (std::size_t i = 0; i < m.size(); ++i) m.diag[i] += V_unknowns[i];
    return m;
}

} // namespace

EigenPair principal_eigen(const EllipticOperator& op, std::span<const double> V_unknowns,
                          const SpectralOptions& opts) {
    return power_iterate(with_potential(op, V_unknowns), op, opts, false);
}

EigenPair principal_eigen(const EllipticOperator& op, const CoefficientField& V,
                          const SpectralOptions& opts) {
    auto v = op.restrict(V);
    return principal_eigen(op, v, opts);
}

EigenPair adjoint_principal_eigen(const EllipticOperator& op, std::span<const double> V_unknowns,
                                  const SpectralOptions& opts) {
    Tridiag m = with_potential(op, V_unknowns);
    EigenPair primal = power_iterate(m, op, opts, false);
    EigenPair adj = power_iterate(m, op, opts, true);
    double denom = std::max(1.0, std::fabs(primal.sigma0));
    if (std::fabs(adj.sigma0 - primal.sigma0) > 1e-8 * denom)
        throw SolverError("adjoint eigenvalue mismatch: " + std::to_string(primal.sigma0) +
                          " vs " + std::to_string(adj.sigma0));
    adj.sigma0 = primal.sigma0;
    return adj;
}

EigenPair adjoint_principal_eigen(const EllipticOperator& op, const CoefficientField& V,
                                  const SpectralOptions& opts) {
    auto v = op.restrict(V);
    return adjoint_principal_eigen(op, v, opts);
}

std::vector<std::complex<double>> dense_eigenvalues(const DenseMatrix& m) {
    const lapack_int n = static_cast<lapack_int>(m.n);
    std::vector<double> a = m.data;
    std::vector<double> wr(m.n), wi(m.n);
    lapack_int info = LAPACKE_dgeev(LAPACK_ROW_MAJOR, 'N', 'N', n, a.data(), n, wr.data(),
                                    wi.data(), nullptr, n, nullptr, n);
    if (info != 0) throw SolverError("dense eigensolve failed, info = " + std::to_string(info));
    std::vector<std::complex<double>> ev(m.n);
    for (std::size_t i = 0; i < m.n; ++i) ev[i] = {wr[i], wi[i]};
    return ev;
}

MorseData morse_index(const DenseMatrix& m, double index_tol) {
    auto ev = dense_eigenvalues(m);
    MorseData md;
    md.tau0 = std::numeric_limits<double>::infinity();
    for (const auto& e : ev) {
        double re = e.real();
        if (re < -index_tol) ++md.index;
        if (std::fabs(re) < index_tol) md.critical = true;
        md.tau0 = std::min(md.tau0, re);
    }
    return md;
}

} // namespace predprey
