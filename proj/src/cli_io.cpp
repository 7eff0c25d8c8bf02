#include "predprey/cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "predprey/curves.hpp"
#include "predprey/oracle.hpp"

namespace predprey {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ValidationError("config: " + where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ValidationError("config: unknown key '" + it.key() + "' in " + where);
}

double need_number(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key))
        throw ValidationError("config: missing key '" + key + "' in " + where);
    if (!j[key].is_number())
        throw ValidationError("config: '" + key + "' in " + where + " must be a number");
    return j[key].get<double>();
}

CoefficientSpec parse_coefficient(const json& j, const std::string& where) {
    if (j.is_number()) return CoefficientSpec::constant(j.get<double>());
    check_keys(j, {"constant", "step", "bump", "table"}, where);
    if (j.size() != 1)
        throw ValidationError("config: " + where + " must have exactly one coefficient form");
    if (j.contains("constant")) return CoefficientSpec::constant(j["constant"].get<double>());
    if (j.contains("step")) {
        const json& s = j["step"];
        check_keys(s, {"left", "right", "x_jump"}, where + ".step");
        return CoefficientSpec::step(need_number(s, "left", where), need_number(s, "right", where),
                                     need_number(s, "x_jump", where));
    }
    if (j.contains("bump")) {
        const json& b = j["bump"];
        check_keys(b, {"center", "width", "height", "floor"}, where + ".bump");
        double floor = b.contains("floor") ? b["floor"].get<double>() : 0.0;
        return CoefficientSpec::bump(need_number(b, "center", where),
                                     need_number(b, "width", where),
                                     need_number(b, "height", where), floor);
    }
    const json& t = j["table"];
    if (!t.is_array()) throw ValidationError("config: " + where + ".table must be an array");
    return CoefficientSpec::table(t.get<std::vector<double>>());
}

void parse_boundary_end(const json& j, BoundaryKind& kind, double& beta, const std::string& where) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "neumann") {
            kind = BoundaryKind::Robin;
            beta = 0.0;
        } else if (s == "dirichlet") {
            kind = BoundaryKind::Dirichlet;
            beta = 0.0;
        } else {
            throw ValidationError("config: " + where + " must be neumann, dirichlet, or {robin}");
        }
        return;
    }
    check_keys(j, {"robin"}, where);
    if (!j.contains("robin"))
        throw ValidationError("config: " + where + " must be neumann, dirichlet, or {robin}");
    kind = BoundaryKind::Robin;
    beta = j["robin"].get<double>();
}

BoundarySpec parse_boundary(const json& j, const std::string& where) {
    check_keys(j, {"lo", "hi"}, where);
    BoundarySpec bc;
    if (j.contains("lo")) parse_boundary_end(j["lo"], bc.kind_lo, bc.beta_lo, where + ".lo");
    if (j.contains("hi")) parse_boundary_end(j["hi"], bc.kind_hi, bc.beta_hi, where + ".hi");
    return bc;
}

void parse_operator(const json& j, const std::string& where, CoefficientSpec& A,
                    CoefficientSpec& drift, CoefficientSpec& pot, BoundarySpec& bc) {
    check_keys(j, {"A", "drift", "potential", "boundary"}, where);
    if (j.contains("A")) A = parse_coefficient(j["A"], where + ".A");
    if (j.contains("drift")) drift = parse_coefficient(j["drift"], where + ".drift");
    if (j.contains("potential")) pot = parse_coefficient(j["potential"], where + ".potential");
    if (j.contains("boundary")) bc = parse_boundary(j["boundary"], where + ".boundary");
}

RangeSpec parse_range(const json& j, const std::string& where) {
    check_keys(j, {"lo", "hi", "count"}, where);
    RangeSpec r;
    r.lo = need_number(j, "lo", where);
    r.hi = need_number(j, "hi", where);
    r.count = static_cast<std::size_t>(need_number(j, "count", where));
    if (r.count < 2) throw ValidationError("config: " + where + ".count must be >= 2");
    return r;
}

} // namespace

std::vector<double> RangeSpec::values() const {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return v;
}

RunConfig parse_config(const json& doc) {
    check_keys(doc,
               {"grid", "operator1", "operator2", "coefficients", "parameters", "continuation",
                "example_section6", "output"},
               "top level");
    RunConfig cfg;

    std::size_t n = 128;
    double x_lo = 0.0, x_hi = 1.0;
    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        check_keys(g, {"n", "x_lo", "x_hi"}, "grid");
        if (g.contains("n")) n = g["n"].get<std::size_t>();
        if (g.contains("x_lo")) x_lo = g["x_lo"].get<double>();
        if (g.contains("x_hi")) x_hi = g["x_hi"].get<double>();
    }
    cfg.grid = build_grid(n, x_lo, x_hi);

    if (doc.contains("example_section6")) {
        const json& p = doc["example_section6"];
        check_keys(p, {"a", "b", "c", "d", "mu"}, "example_section6");
        cfg.coef_a = CoefficientSpec::constant(need_number(p, "a", "example_section6"));
        cfg.coef_b = CoefficientSpec::constant(need_number(p, "b", "example_section6"));
        cfg.coef_c = CoefficientSpec::constant(need_number(p, "c", "example_section6"));
        cfg.coef_d = CoefficientSpec::constant(need_number(p, "d", "example_section6"));
        cfg.coef_m = CoefficientSpec::constant(1.0);
        cfg.mu = need_number(p, "mu", "example_section6");
        cfg.bc1 = BoundarySpec::neumann();
        cfg.bc2 = BoundarySpec::neumann();
    }

    if (doc.contains("operator1"))
        parse_operator(doc["operator1"], "operator1", cfg.A1, cfg.drift1, cfg.pot1, cfg.bc1);
    if (doc.contains("operator2"))
        parse_operator(doc["operator2"], "operator2", cfg.A2, cfg.drift2, cfg.pot2, cfg.bc2);

    if (doc.contains("coefficients")) {
        const json& c = doc["coefficients"];
        check_keys(c, {"a", "b", "c", "d", "m"}, "coefficients");
        if (c.contains("a")) cfg.coef_a = parse_coefficient(c["a"], "coefficients.a");
        if (c.contains("b")) cfg.coef_b = parse_coefficient(c["b"], "coefficients.b");
        if (c.contains("c")) cfg.coef_c = parse_coefficient(c["c"], "coefficients.c");
        if (c.contains("d")) cfg.coef_d = parse_coefficient(c["d"], "coefficients.d");
        if (c.contains("m")) cfg.coef_m = parse_coefficient(c["m"], "coefficients.m");
    }

    if (doc.contains("parameters")) {
        const json& p = doc["parameters"];
        check_keys(p, {"lambda", "mu", "eps", "eps_list", "lambda_range", "mu_range"},
                   "parameters");
        if (p.contains("lambda")) cfg.lambda = p["lambda"].get<double>();
        if (p.contains("mu")) cfg.mu = p["mu"].get<double>();
        if (p.contains("eps")) cfg.eps = p["eps"].get<double>();
        if (p.contains("eps_list")) cfg.eps_list = p["eps_list"].get<std::vector<double>>();
        if (p.contains("lambda_range"))
            cfg.lambda_range = parse_range(p["lambda_range"], "parameters.lambda_range");
        if (p.contains("mu_range"))
            cfg.mu_range = parse_range(p["mu_range"], "parameters.mu_range");
    }

    if (doc.contains("continuation")) {
        const json& c = doc["continuation"];
        check_keys(c,
                   {"ds0", "ds_min", "ds_max", "max_steps", "corrector_max_iter",
                    "corrector_tol", "norm_cap_factor", "lambda_max", "seed_amplitude",
                    "stability"},
                   "continuation");
        auto& o = cfg.continuation;
        if (c.contains("ds0")) o.ds0 = c["ds0"].get<double>();
        if (c.contains("ds_min")) o.ds_min = c["ds_min"].get<double>();
        if (c.contains("ds_max")) o.ds_max = c["ds_max"].get<double>();
        if (c.contains("max_steps")) o.max_steps = c["max_steps"].get<std::size_t>();
        if (c.contains("corrector_max_iter"))
            o.corrector_max_iter = c["corrector_max_iter"].get<std::size_t>();
        if (c.contains("corrector_tol")) o.corrector_tol = c["corrector_tol"].get<double>();
        if (c.contains("norm_cap_factor"))
            o.norm_cap_factor = c["norm_cap_factor"].get<double>();
        if (c.contains("lambda_max")) o.lambda_max = c["lambda_max"].get<double>();
        if (c.contains("seed_amplitude")) o.seed_amplitude = c["seed_amplitude"].get<double>();
        if (c.contains("stability")) cfg.branch_stability = c["stability"].get<bool>();
    }

    if (doc.contains("output")) cfg.output = doc["output"].get<std::string>();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config: cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: JSON parse error: ") + e.what());
    }
    return parse_config(doc);
}

ModelCoefficients RunConfig::build_model() const {
    auto A1f = make_coefficient(A1, grid);
    auto d1f = make_coefficient(drift1, grid);
    auto p1f = make_coefficient(pot1, grid);
    auto A2f = make_coefficient(A2, grid);
    auto d2f = make_coefficient(drift2, grid);
    auto p2f = make_coefficient(pot2, grid);
    EllipticOperator op1 = assemble_operator(A1f, d1f, p1f, bc1, grid);
    EllipticOperator op2 = assemble_operator(A2f, d2f, p2f, bc2, grid);
    return make_model(grid, make_coefficient(coef_a, grid), make_coefficient(coef_b, grid),
                      make_coefficient(coef_c, grid), make_coefficient(coef_d, grid),
                      make_coefficient(coef_m, grid), op1, op2);
}

std::string format17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_branch_csv(const Branch& branch, std::ostream& os) {
    // nearest point to each fold arclength gets the is_fold flag
    std::vector<bool> is_fold(branch.points.size(), false);
    for (const auto& fold : branch.folds) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < branch.points.size(); ++i) {
            double d = std::fabs(branch.points[i].s - fold.s);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        is_fold[best] = true;
    }
    os << "s,lambda,norm_w_inf,norm_v_inf,morse_index,is_coexistence,is_fold\n";
    for (std::size_t i = 0; i < branch.points.size(); ++i) {
        const auto& p = branch.points[i];
        os << format17(p.s) << ',' << format17(p.state.lambda) << ','
           << format17(p.state.norm_w_inf()) << ',' << format17(p.state.norm_v_inf()) << ','
           << p.state.morse_index << ',' << (p.state.is_coexistence ? 1 : 0) << ','
           << (is_fold[i] ? 1 : 0) << '\n';
    }
}

std::vector<BranchCsvRow> read_branch_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw ValidationError("branch csv: empty file");
    if (line != "s,lambda,norm_w_inf,norm_v_inf,morse_index,is_coexistence,is_fold")
        throw ValidationError("branch csv: unexpected header");
    std::vector<BranchCsvRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        BranchCsvRow r;
        char comma;
        int coex = 0, fold = 0;
        if (!(ss >> r.s >> comma >> r.lambda >> comma >> r.norm_w_inf >> comma >>
              r.norm_v_inf >> comma >> r.morse_index >> comma >> coex >> comma >> fold))
            throw ValidationError("branch csv: malformed row '" + line + "'");
        r.is_coexistence = coex != 0;
        r.is_fold = fold != 0;
        rows.push_back(r);
    }
    return rows;
}

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    fs::path p = fs::path(dir) / name;
    std::ofstream os(p, std::ios::binary);
    if (!os) throw SolverError("cannot open output file " + p.string());
    return os;
}

double require(const std::optional<double>& v, const char* what) {
    if (!v) throw ValidationError(std::string("config: command needs parameters.") + what);
    return *v;
}

double require_positive_eps(const RunConfig& cfg) {
    double e = require(cfg.eps, "eps");
    if (!(e > 0)) throw ValidationError("config: eps must be > 0 for this command");
    return e;
}

const RangeSpec& require_range(const std::optional<RangeSpec>& r, const char* what) {
    if (!r) throw ValidationError(std::string("config: command needs parameters.") + what);
    return *r;
}

std::vector<double> eps_values(const RunConfig& cfg) {
    if (!cfg.eps_list.empty()) return cfg.eps_list;
    return {require(cfg.eps, "eps (or eps_list)")};
}

double constant_value(const CoefficientField& f, const char* name) {
    for (double v : f.values)
        if (std::fabs(v - f.values.front()) > 1e-12)
            throw ValidationError(std::string("oracle commands need a constant coefficient ") +
                                  name);
    return f.values.front();
}

oracle::ConstParams const_params(const ModelCoefficients& model, double mu) {
    oracle::ConstParams p;
    p.a = constant_value(model.a, "a");
    p.b = constant_value(model.b, "b");
    p.c = constant_value(model.c, "c");
    p.d = constant_value(model.d, "d");
    p.mu = mu;
    constant_value(model.m, "m");
    return p;
}

const char* region_name(WedgeRegion r) {
    switch (r) {
    case WedgeRegion::no_coexistence: return "no_coexistence";
    case WedgeRegion::guaranteed: return "guaranteed";
    case WedgeRegion::indeterminate: return "indeterminate";
    }
    return "unknown";
}

void compute_branch_stability(Branch& branch, const ModelCoefficients& model) {
    for (auto& p : branch.points) stability(p.state, model);
}

void write_folds_csv(const Branch& branch, std::ostream& os) {
    os << "s,lambda\n";
    for (const auto& f : branch.folds)
        os << format17(f.s) << ',' << format17(f.lambda) << '\n';
}

void write_branch_summary(const Branch& branch, std::ostream& os) {
    os << "termination,num_points,num_folds,lambda_max,norm_cap\n";
    os << termination_name(branch.termination) << ',' << branch.points.size() << ','
       << branch.folds.size() << ',' << format17(branch.lambda_max) << ','
       << format17(branch.norm_cap) << '\n';
}

void cmd_eigen(const RunConfig& cfg, const std::string& out) {
    ModelCoefficients model = cfg.build_model();
    std::vector<double> zero(model.op1.size(), 0.0);
    EigenPair e = principal_eigen(model.op1, std::span<const double>(zero));
    auto full = model.op1.to_full(e.phi);
    auto os = open_out(out, "eigen.csv");
    os << "x,phi\n";
    for (std::size_t j = 0; j < full.size(); ++j)
        os << format17(cfg.grid.node(j)) << ',' << format17(full[j]) << '\n';
    auto sum = open_out(out, "eigen_summary.csv");
    sum << "sigma0,residual\n" << format17(e.sigma0) << ',' << format17(e.residual) << '\n';
}

void cmd_theta(const RunConfig& cfg, const std::string& out) {
    ModelCoefficients model = cfg.build_model();
    double mu = require(cfg.mu, "mu");
    ThetaSolution th2 = model.semitrivial_predator(mu);
    std::vector<double> th1_full(cfg.grid.num_nodes(), 0.0);
    if (cfg.lambda && cfg.eps && *cfg.eps > 0)
        th1_full = model.op1.to_full(model.semitrivial_prey(*cfg.lambda, *cfg.eps).z);
    auto th2_full = model.op2.to_full(th2.z);
    auto os = open_out(out, "theta.csv");
    os << "x,theta1,theta2\n";
    for (std::size_t j = 0; j < th2_full.size(); ++j)
        os << format17(cfg.grid.node(j)) << ',' << format17(th1_full[j]) << ','
           << format17(th2_full[j]) << '\n';
}

void cmd_curves(const RunConfig& cfg, const std::string& out) {
    ModelCoefficients model = cfg.build_model();
    double eps = require_positive_eps(cfg);
    const RangeSpec& mur = require_range(cfg.mu_range, "mu_range");
    const RangeSpec& lar = require_range(cfg.lambda_range, "lambda_range");

    auto os_mu = open_out(out, "curves_mu.csv");
    os_mu << "mu,phi,phi0,phi_eps\n";
    for (double mu : mur.values()) {
        double phi = capital_phi(mu, model);
        double p0 = phi_zero(mu, model);
        double pe = phi_eps(mu, eps, model);
        os_mu << format17(mu) << ',' << format17(phi) << ',' << format17(p0) << ','
              << format17(pe) << '\n';
    }
    auto os_la = open_out(out, "curves_lambda.csv");
    os_la << "lambda,psi_eps,psi0\n";
    for (double la : lar.values())
        os_la << format17(la) << ',' << format17(psi_eps(la, eps, model)) << ','
              << format17(psi_zero(la, model)) << '\n';
}

void cmd_wedge(const RunConfig& cfg, const std::string& out, unsigned jobs) {
    ModelCoefficients model = cfg.build_model();
    double eps = require_positive_eps(cfg);
    const RangeSpec& lar = require_range(cfg.lambda_range, "lambda_range");
    const RangeSpec& mur = require_range(cfg.mu_range, "mu_range");
    auto pts = wedge_scan(lar.lo, lar.hi, mur.lo, mur.hi, eps, model, lar.count, jobs);
    auto os = open_out(out, "wedge.csv");
    os << "lambda,mu,region\n";
    for (const auto& p : pts)
        os << format17(p.lambda) << ',' << format17(p.mu) << ',' << region_name(p.region)
           << '\n';
}

void cmd_tangent(const RunConfig& cfg, const std::string& out) {
    ModelCoefficients model = cfg.build_model();
    double mu = require(cfg.mu, "mu");
    auto os = open_out(out, "tangent.csv");
    os << "eps,phi,lambda_prime\n";
    for (double eps : eps_values(cfg)) {
        TangentData t = crandall_rabinowitz_tangent(mu, eps, model);
        os << format17(eps) << ',' << format17(t.phi) << ',' << format17(t.lambda_prime)
           << '\n';
    }
}

void cmd_branch(const RunConfig& cfg, const std::string& out) {
    ModelCoefficients model = cfg.build_model();
    double mu = require(cfg.mu, "mu");
    double eps = require_positive_eps(cfg);
    Branch branch = continue_branch(mu, eps, model, cfg.continuation);
    if (cfg.branch_stability) compute_branch_stability(branch, model);
    auto os = open_out(out, "branch.csv");
    write_branch_csv(branch, os);
    auto fos = open_out(out, "branch_folds.csv");
    write_folds_csv(branch, fos);
    auto sos = open_out(out, "branch_summary.csv");
    write_branch_summary(branch, sos);
}

void cmd_scalar_branch(const RunConfig& cfg, const std::string& out) {
    ModelCoefficients model = cfg.build_model();
    double mu = require(cfg.mu, "mu");
    Branch branch = scalar_branch_eps0(mu, model, cfg.continuation);
    if (cfg.branch_stability) scalar_branch_stability(branch, model);
    auto os = open_out(out, "scalar_branch.csv");
    write_branch_csv(branch, os);
    auto fos = open_out(out, "scalar_branch_folds.csv");
    write_folds_csv(branch, fos);
    auto sos = open_out(out, "scalar_branch_summary.csv");
    write_branch_summary(branch, sos);
}

void cmd_oracle(const RunConfig& cfg, const std::string& out) {
    ModelCoefficients model = cfg.build_model();
    double mu = require(cfg.mu, "mu");
    oracle::ConstParams p = const_params(model, mu);
    const RangeSpec& lar = require_range(cfg.lambda_range, "lambda_range");

    auto os = open_out(out, "oracle.csv");
    os << "lambda,eps,count,phi,eps_star\n";
    auto states_os = open_out(out, "oracle_states.csv");
    states_os << "lambda,eps,w,v,critical\n";
    for (double eps : eps_values(cfg)) {
        for (double la : lar.values()) {
            auto states = oracle::constant_states(p, eps, la);
            std::size_t count = 0;
            for (const auto& st : states) {
                if (!st.critical) ++count;
                states_os << format17(la) << ',' << format17(eps) << ',' << format17(st.w)
                          << ',' << format17(st.v) << ',' << (st.critical ? 1 : 0) << '\n';
            }
            os << format17(la) << ',' << format17(eps) << ',' << count << ','
               << format17(oracle::capital_phi(p)) << ',' << format17(oracle::eps_star(p))
               << '\n';
        }
    }
    auto ros = open_out(out, "oracle_regime.csv");
    ros << "eps,regime,eps_star,num_folds,fold_lambda_min,fold_lambda_max,eta\n";
    for (double eps : eps_values(cfg)) {
        auto cert = oracle::regime_classify(p, eps);
        double flo = cert.fold_lambda.empty()
                         ? std::numeric_limits<double>::quiet_NaN()
                         : *std::min_element(cert.fold_lambda.begin(), cert.fold_lambda.end());
        double fhi = cert.fold_lambda.empty()
                         ? std::numeric_limits<double>::quiet_NaN()
                         : *std::max_element(cert.fold_lambda.begin(), cert.fold_lambda.end());
        ros << format17(eps) << ',' << oracle::regime_name(cert.regime) << ','
            << format17(cert.eps_star) << ',' << cert.fold_w.size() << ',' << format17(flo)
            << ',' << format17(fhi) << ',' << format17(cert.eta) << '\n';
    }
}

void cmd_compare(const RunConfig& cfg, const std::string& out) {
    ModelCoefficients model = cfg.build_model();
    double mu = require(cfg.mu, "mu");
    double eps = require_positive_eps(cfg);
    oracle::ConstParams p = const_params(model, mu);

    std::vector<double> lambdas;
    if (cfg.lambda_range)
        lambdas = cfg.lambda_range->values();
    else
        lambdas = {require(cfg.lambda, "lambda (or lambda_range)")};

    auto os = open_out(out, "compare.csv");
    os << "lambda,eps,oracle_w,oracle_v,dev_w,dev_v,count_oracle,count_pde\n";
    for (double la : lambdas) {
        auto states = oracle::constant_states(p, eps, la);
        std::size_t count_pde = 0;
        std::vector<std::string> rows;
        for (const auto& st : states) {
            std::vector<double> w0(model.op1.size(), st.w), v0(model.op2.size(), st.v);
            SteadyState pde = newton_solve(w0, v0, la, mu, eps, model);
            if (pde.is_coexistence) ++count_pde;
            double dev_w = 0.0, dev_v = 0.0;
            for (double w : pde.w) dev_w = std::max(dev_w, std::fabs(w - st.w));
            for (double v : pde.v) dev_v = std::max(dev_v, std::fabs(v - st.v));
            rows.push_back(format17(la) + "," + format17(eps) + "," + format17(st.w) + "," +
                           format17(st.v) + "," + format17(dev_w) + "," + format17(dev_v) +
                           "," + std::to_string(states.size()) + "," +
                           std::to_string(count_pde));
        }
        // count_pde is only final after all states were solved
        for (auto& r : rows) {
            auto pos = r.rfind(',');
            r = r.substr(0, pos + 1) + std::to_string(count_pde);
            os << r << '\n';
        }
    }
}

} // namespace

void run_command(const std::string& cmd, const RunConfig& cfg, const std::string& out_dir,
                 unsigned jobs) {
    std::string out = out_dir.empty() ? (cfg.output.empty() ? "." : cfg.output) : out_dir;
    if (cmd == "eigen")
        cmd_eigen(cfg, out);
    else if (cmd == "theta")
        cmd_theta(cfg, out);
    else if (cmd == "curves")
        cmd_curves(cfg, out);
    else if (cmd == "wedge")
        cmd_wedge(cfg, out, jobs);
    else if (cmd == "tangent")
        cmd_tangent(cfg, out);
    else if (cmd == "branch")
        cmd_branch(cfg, out);
    else if (cmd == "scalar-branch")
        cmd_scalar_branch(cfg, out);
    else if (cmd == "oracle")
        cmd_oracle(cfg, out);
    else if (cmd == "compare")
        cmd_compare(cfg, out);
    else
        throw ValidationError("unknown command '" + cmd + "'");
}

} // namespace predprey
