#include "predprey/banded.hpp"

#include <algorithm>
#include <cmath>
#include <lapacke.h>

namespace predprey {

BandedMatrix::BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1), ab_(ldab_ * n, 0.0) {}

void BandedMatrix::clear() {
    std::fill(ab_.begin(), ab_.end(), 0.0);
    factored_ = false;
}

double* BandedMatrix::entry(std::size_t i, std::size_t j) {
    // LAPACK band storage: AB(kl+ku+i-j, j) in 0-based indexing
    if (i >= n_ || j >= n_) return nullptr;
    std::ptrdiff_t off = static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(j);
    if (off > static_cast<std::ptrdiff_t>(kl_) || -off > static_cast<std::ptrdiff_t>(ku_))
        return nullptr;
    std::size_t row = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(kl_ + ku_) + off);
    return &ab_[j * ldab_ + row];
}

const double* BandedMatrix::entry(std::size_t i, std::size_t j) const {
    return const_cast<BandedMatrix*>(this)->entry(i, j);
}

void BandedMatrix::add(std::size_t i, std::size_t j, double v) {
    double* p = entry(i, j);
    if (!p) throw SolverError("banded matrix entry outside band");
    *p += v;
}

double BandedMatrix::get(std::size_t i, std::size_t j) const {
    const double* p = entry(i, j);
    return p ? *p : 0.0;
}

void BandedMatrix::apply(std::span<const double> x, std::span<double> y) const {
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        std::size_t j0 = i > kl_ ? i - kl_ : 0;
        std::size_t j1 = std::min(n_ - 1, i + ku_);
        for (std::size_t j = j0; j <= j1; ++j) s += get(i, j) * x[j];
        y[i] = s;
    }
}

void BandedMatrix::factor() {
    ab_lu_ = ab_;
    ipiv_.assign(n_, 0);
    lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, static_cast<lapack_int>(n_),
                                     static_cast<lapack_int>(n_), static_cast<lapack_int>(kl_),
                                     static_cast<lapack_int>(ku_), ab_lu_.data(),
                                     static_cast<lapack_int>(ldab_), ipiv_.data());
    if (info != 0) throw SolverError("banded LU failed: singular Jacobian (info = " +
                                     std::to_string(info) + ")");
    factored_ = true;
}

std::vector<double> BandedMatrix::solve(std::span<const double> rhs, bool transpose) const {
    if (!factored_) throw SolverError("banded solve before factorization");
    std::vector<double> x(rhs.begin(), rhs.end());
    lapack_int info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, transpose ? 'T' : 'N',
                                     static_cast<lapack_int>(n_), static_cast<lapack_int>(kl_),
                                     static_cast<lapack_int>(ku_), 1,
                                     const_cast<double*>(ab_lu_.data()),
                                     static_cast<lapack_int>(ldab_),
                                     const_cast<int*>(ipiv_.data()), x.data(),
                                     static_cast<lapack_int>(n_));
    if (info != 0) throw SolverError("banded back-substitution failed");
    return x;
}

double BandedMatrix::min_pivot_magnitude() const {
    if (!factored_) return 0.0;
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n_; ++j) m = std::min(m, std::fabs(ab_lu_[j * ldab_ + kl_ + ku_]));
    return m;
}

} // namespace predprey
