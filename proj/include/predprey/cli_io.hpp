#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "predprey/continuation.hpp"
#include "predprey/model.hpp"

namespace predprey {

struct RangeSpec {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t count = 2;

    std::vector<double> values() const;
};

/// Everything a command run needs, parsed and validated from a JSON config.
/// Schema (all keys optional unless a command requires them; unknown keys
/// are errors):
///   grid: {n, x_lo, x_hi}
///   operator1 / operator2: {A, drift, potential, boundary: {lo, hi}}
///   coefficients: {a, b, c, d, m}
///   parameters: {lambda, mu, eps, eps_list, lambda_range, mu_range}
///   continuation: {ds0, ds_min, ds_max, max_steps, corrector_max_iter,
///                  corrector_tol, norm_cap_factor, lambda_max,
///                  seed_amplitude, stability}
///   example_section6: {a, b, c, d, mu}  (constant Neumann preset, m = 1)
///   output: string (default output directory, overridden by --out)
/// A coefficient is a number, or one of {constant}, {step: {left, right,
/// x_jump}}, {bump: {center, width, height, floor}}, {table: [...]}.
/// A boundary end is "neumann", "dirichlet", or {robin: beta}.
struct RunConfig {
    Grid grid{};
    BoundarySpec bc1, bc2;
    CoefficientSpec A1 = CoefficientSpec::constant(1.0);
    CoefficientSpec drift1 = CoefficientSpec::constant(0.0);
    CoefficientSpec pot1 = CoefficientSpec::constant(0.0);
    CoefficientSpec A2 = CoefficientSpec::constant(1.0);
    CoefficientSpec drift2 = CoefficientSpec::constant(0.0);
    CoefficientSpec pot2 = CoefficientSpec::constant(0.0);
    CoefficientSpec coef_a = CoefficientSpec::constant(1.0);
    CoefficientSpec coef_b = CoefficientSpec::constant(1.0);
    CoefficientSpec coef_c = CoefficientSpec::constant(1.0);
    CoefficientSpec coef_d = CoefficientSpec::constant(1.0);
    CoefficientSpec coef_m = CoefficientSpec::constant(1.0);

    std::optional<double> lambda, mu, eps;
    std::vector<double> eps_list;
    std::optional<RangeSpec> lambda_range, mu_range;

    ContinuationOptions continuation;
    bool branch_stability = true;
    std::string output;

    ModelCoefficients build_model() const;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

/// Serialize a double with 17 significant digits ('.' separator, no locale).
std::string format17(double v);

/// Branch CSV with the fixed header
/// s,lambda,norm_w_inf,norm_v_inf,morse_index,is_coexistence,is_fold
void write_branch_csv(const Branch& branch, std::ostream& os);

/// Parsed-back rows of a branch CSV, for round-trip checks.
struct BranchCsvRow {
    double s = 0.0, lambda = 0.0, norm_w_inf = 0.0, norm_v_inf = 0.0;
    int morse_index = -1;
    bool is_coexistence = false, is_fold = false;
};
std::vector<BranchCsvRow> read_branch_csv(std::istream& is);

/// Dispatch one of eigen|theta|curves|wedge|tangent|branch|scalar-branch|
/// oracle|compare, writing output files under out_dir. Throws
/// ValidationError (config problems) or SolverError.
void run_command(const std::string& cmd, const RunConfig& cfg, const std::string& out_dir,
                 unsigned jobs);

} // namespace predprey
