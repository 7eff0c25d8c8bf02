#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "predprey/errors.hpp"

namespace predprey {

/// Uniform grid on [x_lo, x_hi] with n interior nodes.
/// Nodes are x_i = x_lo + i*h for i = 0..n+1; x_0 and x_{n+1} are the endpoints.
struct Grid {
    std::size_t n = 0;
    double x_lo = 0.0;
    double x_hi = 1.0;
    double h = 0.0;

    std::size_t num_nodes() const { return n + 2; }
    double node(std::size_t i) const { return x_lo + static_cast<double>(i) * h; }
};

Grid build_grid(std::size_t n, double x_lo = 0.0, double x_hi = 1.0);

enum class BoundaryKind { Dirichlet, Robin };

/// Boundary operator per endpoint. Robin means d_nu w + beta*w = 0 with the
/// co-normal derivative d_nu = -A w' at x_lo and +A w' at x_hi; beta = 0 is
/// the Neumann (no-flux) case. beta may take any sign.
struct BoundarySpec {
    BoundaryKind kind_lo = BoundaryKind::Robin;
    BoundaryKind kind_hi = BoundaryKind::Robin;
    double beta_lo = 0.0;
    double beta_hi = 0.0;

    static BoundarySpec neumann() { return {}; }
    static BoundarySpec dirichlet() {
        return {BoundaryKind::Dirichlet, BoundaryKind::Dirichlet, 0.0, 0.0};
    }
};

/// Descriptor for a spatial coefficient. Step and bump supports are aligned to
/// nodes by construction so that indicator sets are exactly resolvable.
struct CoefficientSpec {
    struct Constant { double value; };
    struct Step { double v_left, v_right, x_jump; };
    /// floor + height * (1+cos(pi*(x-center)/width))/2 on [center-width, center+width],
    /// floor elsewhere.
    struct Bump { double center, width, height, floor; };
    struct Table { std::vector<double> values; };

    std::variant<Constant, Step, Bump, Table> spec;

    static CoefficientSpec constant(double v) { return {Constant{v}}; }
    static CoefficientSpec step(double vl, double vr, double xj) { return {Step{vl, vr, xj}}; }
    static CoefficientSpec bump(double c, double w, double h, double f) { return {Bump{c, w, h, f}}; }
    static CoefficientSpec table(std::vector<double> v) { return {Table{std::move(v)}}; }
};

/// Samples of a spatial coefficient at all n+2 nodes.
struct CoefficientField {
    std::vector<double> values; // length n+2

    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }
    double min() const;
    double max() const;
    double max_abs() const;
};

CoefficientField make_coefficient(const CoefficientSpec& spec, const Grid& grid,
                                  bool require_nonnegative = false);
CoefficientField constant_field(double v, const Grid& grid);

/// Tridiagonal matrix over the operator's unknowns.
/// sub[0] and sup[size-1] are unused.
struct Tridiag {
    std::vector<double> sub, diag, sup;

    std::size_t size() const { return diag.size(); }
    void apply(std::span<const double> x, std::span<double> y) const;
    void apply_transpose(std::span<const double> x, std::span<double> y) const;
    Tridiag shifted(double e) const;
    Tridiag transposed() const;
};

/// Stable tridiagonal solve (LAPACK dgtsv, partial pivoting). Throws SolverError
/// on a singular matrix.
std::vector<double> tridiag_solve(const Tridiag& m, std::span<const double> rhs);

/// LU solve without pivoting, requiring all pivots > 0. For a matrix with
/// non-positive off-diagonals positive pivots certify the M-matrix property,
/// hence inverse positivity. Throws SolverError naming `context` otherwise.
std::vector<double> tridiag_solve_mmatrix(const Tridiag& m, std::span<const double> rhs,
                                          const std::string& context);

/// Discretization of the tern (L, B, Omega) with
/// L w = -(A w')' + drift*w' + c0*w on the interval grid. Unknowns are the
/// nodes not eliminated by a Dirichlet condition; Robin endpoints keep their
/// boundary node as an unknown, with the ghost value eliminated through the
/// boundary condition (second order).
class EllipticOperator {
public:
    EllipticOperator(CoefficientField diffusion, CoefficientField drift, CoefficientField c0,
                     BoundarySpec boundary, Grid grid);

    const Grid& grid() const { return grid_; }
    const BoundarySpec& boundary() const { return bc_; }
    const Tridiag& matrix() const { return matrix_; }
    bool used_upwind() const { return upwind_; }

    /// Node index of the first/last unknown (0 or 1, n or n+1).
    std::size_t node_lo() const { return node_lo_; }
    std::size_t node_hi() const { return node_hi_; }
    std::size_t size() const { return node_hi_ - node_lo_ + 1; }

    /// Trapezoid quadrature weights over the unknown nodes.
    const std::vector<double>& quad_weights() const { return quad_; }
    double inner(std::span<const double> u, std::span<const double> v) const;

    /// Embed an unknown vector into a full node vector (Dirichlet nodes get 0).
    std::vector<double> to_full(std::span<const double> u) const;
    /// Restrict a full node vector (or coefficient field) to the unknown range.
    std::vector<double> restrict(std::span<const double> full) const;
    std::vector<double> restrict(const CoefficientField& f) const { return restrict(f.values); }

private:
    Grid grid_;
    BoundarySpec bc_;
    CoefficientField diffusion_, drift_, c0_;
    Tridiag matrix_;
    std::vector<double> quad_;
    std::size_t node_lo_ = 0, node_hi_ = 0;
    bool upwind_ = false;
};

EllipticOperator assemble_operator(const CoefficientField& diffusion,
                                   const CoefficientField& drift,
                                   const CoefficientField& c0,
                                   const BoundarySpec& boundary, const Grid& grid);

/// Solves (L + e) z = rhs. Requires e > -sigma0[L]; certified a posteriori by
/// positive LU pivots of the M-matrix-patterned shifted matrix.
std::vector<double> solve_shifted(const EllipticOperator& op, double e,
                                  std::span<const double> rhs);

// small vector helpers shared across modules
double max_abs(std::span<const double> v);
double min_value(std::span<const double> v);

/// Max row sum of absolute values.
double tridiag_inf_norm(const Tridiag& m);

/// Attainable floating-point floor of a residual assembled from a matrix of
/// the given norm acting on a vector of the given amplitude. Convergence
/// tests use tol + residual_floor(...) so large-amplitude states on fine
/// grids remain solvable.
inline double residual_floor(double matrix_norm, double amplitude) {
    constexpr double kFloorFactor = 16.0 * 2.220446049250313e-16;
    return kFloorFactor * matrix_norm * std::max(1.0, amplitude);
}

} // namespace predprey
