#include "predprey/grid.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <lapacke.h>
#include <numbers>

namespace predprey {

Grid build_grid(std::size_t n, double x_lo, double x_hi) {
    if (n < 8) throw ValidationError("grid too coarse: need n >= 8, got n = " + std::to_string(n));
    if (!(x_lo < x_hi)) throw ValidationError("degenerate interval: require x_lo < x_hi");
    Grid g;
    g.n = n;
    g.x_lo = x_lo;
    g.x_hi = x_hi;
    g.h = (x_hi - x_lo) / static_cast<double>(n + 1);
    return g;
}

double CoefficientField::min() const { return *std::min_element(values.begin(), values.end()); }
double CoefficientField::max() const { return *std::max_element(values.begin(), values.end()); }
double CoefficientField::max_abs() const {
    double m = 0;
    for (double v : values) m = std::max(m, std::fabs(v));
    return m;
}

CoefficientField make_coefficient(const CoefficientSpec& spec, const Grid& grid,
                                  bool require_nonnegative) {
    CoefficientField f;
    f.values.resize(grid.num_nodes());
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CoefficientSpec::Constant>) {
                std::fill(f.values.begin(), f.values.end(), s.value);
            } else if constexpr (std::is_same_v<T, CoefficientSpec::Step>) {
                for (std::size_t i = 0; i < f.values.size(); ++i)
                    f.values[i] = grid.node(i) < s.x_jump ? s.v_left : s.v_right;
            } else if constexpr (std::is_same_v<T, CoefficientSpec::Bump>) {
                if (s.width <= 0) throw ValidationError("bump width must be positive");
                for (std::size_t i = 0; i < f.values.size(); ++i) {
                    double xi = (grid.node(i) - s.center) / s.width;
                    double val = s.floor;
                    if (std::fabs(xi) < 1.0)
                        val += s.height * 0.5 * (1.0 + std::cos(std::numbers::pi * xi));
                    f.values[i] = val;
                }
            } else if constexpr (std::is_same_v<T, CoefficientSpec::Table>) {
                if (s.values.size() != grid.num_nodes())
                    throw ValidationError("table coefficient length " +
                                          std::to_string(s.values.size()) + " != n+2 = " +
                                          std::to_string(grid.num_nodes()));
                f.values = s.values;
            }
        },
        spec.spec);
    for (double v : f.values)
        if (!std::isfinite(v)) throw ValidationError("coefficient contains non-finite sample");
    if (require_nonnegative)
        for (double v : f.values)
            if (v < 0.0)
                throw ValidationError("coefficient must be nonnegative, found " + std::to_string(v));
    return f;
}

CoefficientField constant_field(double v, const Grid& grid) {
    return make_coefficient(CoefficientSpec::constant(v), grid);
}

void Tridiag::apply(std::span<const double> x, std::span<double> y) const {
    const std::size_t m = size();
    for (std::size_t i = 0; i < m; ++i) {
        double s = diag[i] * x[i];
        if (i > 0) s += sub[i] * x[i - 1];
        if (i + 1 < m) s += sup[i] * x[i + 1];
        y[i] = s;
    }
}

void Tridiag::apply_transpose(std::span<const double> x, std::span<double> y) const {
    const std::size_t m = size();
    for (std::size_t i = 0; i < m; ++i) {
        double s = diag[i] * x[i];
        if (i > 0) s += sup[i - 1] * x[i - 1];
        if (i + 1 < m) s += sub[i + 1] * x[i + 1];
        y[i] = s;
    }
}

Tridiag Tridiag::shifted(double e) const {
    Tridiag t = *this;
    for (double& d : t.diag) d += e;
    return t;
}

Tridiag Tridiag::transposed() const {
    Tridiag t;
    const std::size_t m = size();
    t.sub.resize(m);
    t.diag = diag;
    t.sup.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        t.sub[i] = i > 0 ? sup[i - 1] : 0.0;
        t.sup[i] = i + 1 < m ? sub[i + 1] : 0.0;
    }
    return t;
}

std::vector<double> tridiag_solve(const Tridiag& m, std::span<const double> rhs) {
    const lapack_int n = static_cast<lapack_int>(m.size());
    std::vector<double> dl(m.sub.begin() + 1, m.sub.end());
    std::vector<double> d = m.diag;
    std::vector<double> du(m.sup.begin(), m.sup.end() - 1);
    std::vector<double> x(rhs.begin(), rhs.end());
    lapack_int info = LAPACKE_dgtsv(LAPACK_COL_MAJOR, n, 1, dl.data(), d.data(), du.data(),
                                    x.data(), n);
    if (info != 0) throw SolverError("tridiagonal solve failed: singular matrix");
    return x;
}

std::vector<double> tridiag_solve_mmatrix(const Tridiag& m, std::span<const double> rhs,
                                          const std::string& context) {
    const std::size_t n = m.size();
    std::vector<double> c(n), d(n), x(n);
    double piv = m.diag[0];
    if (!(piv > 0)) throw SolverError(context);
    c[0] = m.sup[0] / piv;
    d[0] = rhs[0] / piv;
    for (std::size_t i = 1; i < n; ++i) {
        piv = m.diag[i] - m.sub[i] * c[i - 1];
        if (!(piv > 0)) throw SolverError(context);
        c[i] = (i + 1 < n ? m.sup[i] : 0.0) / piv;
        d[i] = (rhs[i] - m.sub[i] * d[i - 1]) / piv;
    }
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

EllipticOperator::EllipticOperator(CoefficientField diffusion, CoefficientField drift,
                                   CoefficientField c0, BoundarySpec boundary, Grid grid)
    : grid_(grid), bc_(boundary), diffusion_(std::move(diffusion)), drift_(std::move(drift)),
      c0_(std::move(c0)) {
    const std::size_t nn = grid_.num_nodes();
    if (diffusion_.size() != nn || drift_.size() != nn || c0_.size() != nn)
        throw ValidationError("coefficient field length does not match grid");
    if (!(diffusion_.min() > 0.0))
        throw ValidationError("diffusion coefficient must be strictly positive");

    node_lo_ = bc_.kind_lo == BoundaryKind::Dirichlet ? 1 : 0;
    node_hi_ = grid_.n + (bc_.kind_hi == BoundaryKind::Dirichlet ? 0 : 1);

    const double h = grid_.h;
    const double h2 = h * h;
    const std::size_t m = size();
    matrix_.sub.assign(m, 0.0);
    matrix_.diag.assign(m, 0.0);
    matrix_.sup.assign(m, 0.0);

    // Cell Peclet check: central drift differencing keeps the M-matrix sign
    // pattern only while |drift| h / (2 A) < 1 at the face.
    double a_min = diffusion_.min();
    double peclet = drift_.max_abs() * h / (2.0 * a_min);
    if (peclet >= 1.0) {
        upwind_ = true;
        std::cerr << "warning: cell Peclet number " << peclet
                  << " >= 1, switching drift to first-order upwind\n";
    }

    auto a_mid = [&](double s_left, double s_right) { return 0.5 * (s_left + s_right); };

    for (std::size_t j = node_lo_; j <= node_hi_; ++j) {
        const std::size_t r = j - node_lo_;
        double a_w, a_e; // face diffusion at j-1/2 and j+1/2
        if (j == 0)
            a_w = 1.5 * diffusion_[0] - 0.5 * diffusion_[1]; // ghost face, linear extrapolation
        else
            a_w = a_mid(diffusion_[j - 1], diffusion_[j]);
        if (j == grid_.n + 1)
            a_e = 1.5 * diffusion_[j] - 0.5 * diffusion_[j - 1];
        else
            a_e = a_mid(diffusion_[j], diffusion_[j + 1]);

        double sub = -a_w / h2;
        double sup = -a_e / h2;
        double diag = (a_w + a_e) / h2 + c0_[j];

        const double dr = drift_[j];
        if (!upwind_) {
            sub += -dr / (2.0 * h);
            sup += dr / (2.0 * h);
        } else if (dr > 0) {
            sub += -dr / h;
            diag += dr / h;
        } else {
            sup += dr / h;
            diag += -dr / h;
        }

        if (j == 0) {
            // Robin at x_lo: -A_0 w'(x_0) + beta w_0 = 0, ghost w_{-1} = w_1 - 2h beta w_0 / A_0.
            const double slope = bc_.beta_lo / diffusion_[0];
            diag += sub * (-2.0 * h * slope);
            sup += sub;
            sub = 0.0;
        }
        if (j == grid_.n + 1) {
            // Robin at x_hi: A w'(x_hi) + beta w = 0, ghost w_{n+2} = w_n - 2h beta w_{n+1} / A.
            const double slope = bc_.beta_hi / diffusion_[j];
            diag += sup * (-2.0 * h * slope);
            sub += sup;
            sup = 0.0;
        }

        matrix_.sub[r] = r > 0 ? sub : 0.0;
        matrix_.diag[r] = diag;
        matrix_.sup[r] = r + 1 < m ? sup : 0.0;
    }

    quad_.assign(m, h);
    if (node_lo_ == 0) quad_.front() = h / 2.0;
    if (node_hi_ == grid_.n + 1) quad_.back() = h / 2.0;
}

EllipticOperator assemble_operator(const CoefficientField& diffusion, const CoefficientField& drift,
                                   const CoefficientField& c0, const BoundarySpec& boundary,
                                   const Grid& grid) {
    return EllipticOperator(diffusion, drift, c0, boundary, grid);
}

double EllipticOperator::inner(std::span<const double> u, std::span<const double> v) const {
    double s = 0;
    for (std::size_t i = 0; i < quad_.size(); ++i) s += quad_[i] * u[i] * v[i];
    return s;
}

std::vector<double> EllipticOperator::to_full(std::span<const double> u) const {
    std::vector<double> full(grid_.num_nodes(), 0.0);
    for (std::size_t i = 0; i < size(); ++i) full[node_lo_ + i] = u[i];
    return full;
}

std::vector<double> EllipticOperator::restrict(std::span<const double> full) const {
    return std::vector<double>(full.begin() + static_cast<std::ptrdiff_t>(node_lo_),
                               full.begin() + static_cast<std::ptrdiff_t>(node_hi_ + 1));
}

std::vector<double> solve_shifted(const EllipticOperator& op, double e,
                                  std::span<const double> rhs) {
    return tridiag_solve_mmatrix(op.matrix().shifted(e), rhs,
                                 "shift below principal eigenvalue");
}

double max_abs(std::span<const double> v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

double min_value(std::span<const double> v) {
    double m = v.empty() ? 0.0 : v[0];
    for (double x : v) m = std::min(m, x);
    return m;
}

double tridiag_inf_norm(const Tridiag& m) {
    double nrm = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        double rs = std::fabs(m.diag[i]);
        if (i > 0) rs += std::fabs(m.sub[i]);
        if (i + 1 < m.size()) rs += std::fabs(m.sup[i]);
        nrm = std::max(nrm, rs);
    }
    return nrm;
}

} // namespace predprey
