#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "predprey/errors.hpp"

namespace predprey {

/// General banded matrix in LAPACK band storage with room for the LU fill-in
/// of dgbtrf (partial pivoting).
class BandedMatrix {
public:
    BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku);

    std::size_t size() const { return n_; }
    void clear();

    /// Accumulate into entry (i, j); |i - j| must be within the band.
    void add(std::size_t i, std::size_t j, double v);
    double get(std::size_t i, std::size_t j) const;

    void apply(std::span<const double> x, std::span<double> y) const;

    /// Factor in place (dgbtrf). Throws SolverError on singularity.
    void factor();
    /// Solve with the stored factorization; `transpose` solves A^T x = b.
    std::vector<double> solve(std::span<const double> rhs, bool transpose = false) const;
    bool factored() const { return factored_; }

    /// Reciprocal condition estimate heuristic: smallest |U_ii| over the factor.
    double min_pivot_magnitude() const;

private:
    std::size_t n_, kl_, ku_;
    std::size_t ldab_;
    std::vector<double> ab_;      // column-major, ldab x n
    std::vector<double> ab_lu_;   // factorization copy
    std::vector<int> ipiv_;
    bool factored_ = false;

    double* entry(std::size_t i, std::size_t j);
    const double* entry(std::size_t i, std::size_t j) const;
};

} // namespace predprey
