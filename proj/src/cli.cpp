#include "hglue/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "hglue/algebra.hpp"
#include "hglue/approximate.hpp"
#include "hglue/invariants.hpp"
#include "hglue/linearized.hpp"
#include "hglue/model.hpp"
#include "hglue/solver.hpp"

namespace hglue::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr double kDeltaPrime = 0.4;
constexpr double kDeltaDoublePrime = 0.3;

struct CommandInfo {
    Command c;
    const char* name;
};
constexpr CommandInfo kCommands[] = {
    {Command::verifyAlgebra, "verify-algebra"}, {Command::verifyModel, "verify-model"},
    {Command::kernel, "kernel"},               {Command::glue, "glue"},
    {Command::solve, "solve"},                 {Command::sweep, "sweep"},
    {Command::classify, "classify"},           {Command::census, "census"},
};

std::string now_utc()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

Verdict le(const std::string& name, double value, double tol)
{
    return {name, value <= tol ? Status::pass : Status::fail, value, tol, "<="};
}
Verdict lt(const std::string& name, double value, double tol)
{
    return {name, value < tol ? Status::pass : Status::fail, value, tol, "<"};
}
Verdict within(const std::string& name, double value, double lo, double hi)
{
    std::ostringstream rel;
    rel << "in [" << lo << ", " << hi << "]";
    return {name, value >= lo && value <= hi ? Status::pass : Status::fail, value, hi, rel.str()};
}
Verdict holds(const std::string& name, bool ok)
{
    return {name, ok ? Status::pass : Status::fail, ok ? 1.0 : 0.0, 1.0, "=="};
}

json number(double value, double tol)
{
    return json{{"value", value}, {"tolerance", tol}};
}

// --- verify-algebra ------------------------------------------------------

Mat2 random_traceless(std::mt19937_64& rng)
{
    std::normal_distribution<double> n;
    Mat2 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            m(i, j) = cplx(n(rng), n(rng));
    m(1, 1) = -m(0, 0);
    return m;
}

Mat2 random_unimodular(std::mt19937_64& rng)
{
    std::normal_distribution<double> n;
    Mat2 g;
    for (;;) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                g(i, j) = cplx(n(rng), n(rng));
        const cplx d = g.determinant();
        if (std::abs(d) > 0.1)
            return g / std::sqrt(d);
    }
}

void run_verify_algebra(const RunParams& p, ReportEnvelope& env)
{
    constexpr int samples = 100;
    std::mt19937_64 rng(p.seed);
    double brIrr = 0, brPsi = 0, rel = 0, nIrr = 0, nPsi = 0, grp = 0, grpSp = 0;
    for (int k = 0; k < samples; ++k) {
        const Mat2 a = random_traceless(rng), b = random_traceless(rng);
        const Mat2 c = random_traceless(rng), d = random_traceless(rng);
        const Mat4 A = phi_irr_star(a), B = phi_irr_star(b);
        brIrr = std::max(brIrr, (Mat4(phi_irr_star(a * b - b * a)) - comm(A, B)).norm());
        const Mat4 P = psi_star(a, c), Q = psi_star(b, d);
        brPsi = std::max(brPsi, (Mat4(psi_star(a * b - b * a, c * d - d * c)) - comm(P, Q)).norm());
        rel = std::max({rel, sp4_defect(A), sp4_defect(P)});
        nIrr = std::max(nIrr, std::abs(A.squaredNorm() - 10.0 * a.squaredNorm()) / (10.0 * a.squaredNorm()));
        const double ab = a.squaredNorm() + c.squaredNorm();
        nPsi = std::max(nPsi, std::abs(P.squaredNorm() - ab) / ab);

        const Mat2 g1 = random_unimodular(rng), g2 = random_unimodular(rng);
        grp = std::max(grp, (phi_irr_group(g1 * g2) - phi_irr_group(g1) * phi_irr_group(g2)).norm());
        grpSp = std::max(grpSp, symplectic_group_defect(phi_irr_group(g1)));
    }
    env.results["samples"] = samples;
    env.results["bracket_defect_phi_irr"] = number(brIrr, 1e-9);
    env.results["bracket_defect_psi"] = number(brPsi, 1e-9);
    env.results["sp4_relation_defect"] = number(rel, 1e-12);
    env.results["norm_defect_phi_irr"] = number(nIrr, 1e-10);
    env.results["norm_defect_psi"] = number(nPsi, 1e-10);
    env.results["group_homomorphism_defect"] = number(grp, 1e-9);
    env.results["group_symplectic_defect"] = number(grpSp, 1e-9);
    env.verdicts = {le("bracket_phi_irr", brIrr, 1e-9), le("bracket_psi", brPsi, 1e-9),
                    le("sp4_relation", rel, 1e-12),     le("norm_phi_irr", nIrr, 1e-10),
                    le("norm_psi", nPsi, 1e-10),        le("group_homomorphism", grp, 1e-9),
                    le("group_symplectic", grpSp, 1e-9)};
}

// --- verify-model ---------------------------------------------------------

void run_verify_model(const RunParams& p, ReportEnvelope& env)
{
    CsvTable t{"model_convergence", {"s", "res_h64", "res_h128", "ratio"}, {}};
    json rows = json::array();
    for (double s : {0.3, 0.5, 0.7}) {
        const ModelFamilyParam fam(s);
        const double coarse = scalar_reduction_residual(fam, y_grid(1.0 / 64));
        const double fine = scalar_reduction_residual(fam, y_grid(1.0 / 128));
        const double ratio = coarse / fine;
        t.rows.push_back({s, coarse, fine, ratio});
        rows.push_back(json{{"s", s}, {"res_h64", coarse}, {"res_h128", fine}, {"ratio", ratio}});
        std::ostringstream name;
        name << "order2_s" << s;
        env.verdicts.push_back(within(name.str(), ratio, 3.5, 4.5));
    }
    env.results["scalar_reduction"] = rows;
    const bool opp = models_opposite(sp4_model_left(p.C), sp4_model_right(p.C));
    env.results["models_opposite"] = opp;
    env.verdicts.push_back(holds("models_opposite", opp));
    env.tables.push_back(std::move(t));
}

// --- kernel ---------------------------------------------------------------

void run_kernel(const RunParams& p, ReportEnvelope& env)
{
    CsvTable t{"kernel", {"j", "kernel_dim"}, {}};
    json table = json::array();
    int wrong = 0;
    for (const auto& [j, dim] : kernel_dimensions(p.C, p.jmax)) {
        t.rows.push_back({double(j), double(dim)});
        table.push_back(json{{"j", j}, {"kernel_dim", dim}});
        if (dim != (j == 0 ? 4 : 0))
            ++wrong;
    }
    env.results["svd_threshold"] = 1e-10;
    env.results["kernel"] = table;
    env.verdicts.push_back(le("kernel_table", wrong, 0));
    env.tables.push_back(std::move(t));
}

// --- glue -----------------------------------------------------------------

CylinderGrid desk_grid(const RunParams& p, double R)
{
    return p.gridNTau > 0 ? make_grid(R, p.gridNTau, p.gridNModes)
                          : make_grid_spacing(R, mixing_width() / kSweepZoneNodes, p.gridNModes);
}

GluedApprox desk_approx(const RunParams& p)
{
    const ApproxConfig cfg = make_approx_config(p.R, kDeltaPrime, kDeltaDoublePrime, p.C);
    return p.gridNTau > 0
               ? glued_approximate(cfg, p.gridNTau, p.gridNModes, kFixtureAmplitude, p.seed)
               : glued_approximate_spacing(cfg, mixing_width() / kSweepZoneNodes, p.gridNModes,
                                           kFixtureAmplitude, p.seed);
}

void run_glue(const RunParams& p, ReportEnvelope& env)
{
    const CylinderGrid grid = desk_grid(p, p.R);
    const PlumbingData plumb = default_plumbing(p.R);
    const HiggsPairField left = side_field_from_model(grid, sp4_model_left(p.C), Side::left);
    const HiggsPairField right = side_field_from_model(grid, sp4_model_right(p.C), Side::right);
    const HiggsPairField glued = glue_pairs(left, right, plumb);
    const double res = hitchin_residual(glued).res1Sup;
    env.results["grid"] = json{{"n_tau", grid.nTau}, {"n_modes", grid.nModes}, {"T", grid.tMax}};
    env.results["model_glue_res1_sup"] = number(res, 1e-10);

    // a second model with another C must be rejected
    double mismatch = 0.0;
    bool raised = false;
    try {
        glue_pairs(left, side_field_from_model(grid, sp4_model_right(2.0 * p.C), Side::right), plumb);
    } catch (const GluingError& e) {
        raised = true;
        mismatch = e.mismatch();
    }
    env.results["mismatched_C_raises"] = raised;
    env.results["mismatched_C_mismatch"] = mismatch;

    const GluedApprox ga = desk_approx(p);
    const HitchinResidual hr = hitchin_residual(ga.pair);
    const double outside = residual_outside_mixing(ga.pair, 2);
    const double res2Rel = hr.res2Sup / field_scale(ga.pair);
    env.results["approx_res1_sup"] = hr.res1Sup;
    env.results["approx_res1_outside_mixing"] = number(outside, 1e-10);
    env.results["approx_res2_relative"] = number(res2Rel, 1e-10);

    env.verdicts = {le("model_glue_exact", res, 1e-10), holds("mismatched_C_raises", raised),
                    le("approx_exact_off_mixing", outside, 1e-10), le("approx_res2_floor", res2Rel, 1e-10)};
}

// --- solve ----------------------------------------------------------------

json constants_json(const FittedConstants& c)
{
    return json{{"lambda_min", c.lambdaMin},   {"c_G", c.cG},
                {"c_Q", c.cQ},                 {"sigma_R", c.sigmaR},
                {"t0_norm", c.t0Norm},         {"contraction_bound", c.contractionBound}};
}

CsvTable trace_table(const IterationTrace& tr)
{
    CsvTable t{"trace", {"step", "gamma_norm", "res1_sup", "ratio"}, {}};
    for (const auto& s : tr.perStep)
        t.rows.push_back({double(s.step), s.gammaNorm, s.res1Sup, s.contractionRatio});
    return t;
}

void run_solve(const RunParams& p, ReportEnvelope& env)
{
    const GluedApprox ga = desk_approx(p);
    SolverConfig cfg;
    cfg.tol = p.tol;
    cfg.maxIter = p.maxIter;
    cfg.epsilonBall = p.epsilon;
    cfg.seed = p.seed;
    env.results["grid"] = json{{"n_tau", ga.pair.grid.nTau}, {"n_modes", ga.pair.grid.nModes}, {"T", ga.pair.grid.tMax}};
    SolveResult r;
    try {
        r = contraction_solve(ga.pair, cfg);
    } catch (const IterationLimitError& e) {
        env.tables.push_back(trace_table(e.trace()));
        throw;
    }
    const auto& c = r.constants;
    const HitchinResidual hr = hitchin_residual(r.exact);
    const double gammaNorm = l2_norm(r.exact.grid, r.gamma.gamma);
    double charPoly = 0.0;
    for (size_t m = 0; m < r.exact.phi.size(); ++m)
        charPoly = std::max(charPoly,
                            (char_poly_invariants(r.exact.phi[m]) - char_poly_invariants(ga.pair.phi[m])).norm());
    double worstRatio = 0.0;
    for (size_t k = 2; k < r.trace.perStep.size(); ++k)
        worstRatio = std::max(worstRatio, r.trace.perStep[k].contractionRatio);
    const double res2Rel = hr.res2Sup / field_scale(r.exact);

    env.results["constants"] = constants_json(c);
    env.results["iterations"] = r.iterations;
    env.results["damped"] = r.damped;
    env.results["res1_sup"] = number(hr.res1Sup, p.tol);
    env.results["res2_relative"] = number(res2Rel, 1e-10);
    env.results["gamma_norm"] = number(gammaNorm, c.sigmaR);
    env.results["char_poly_defect"] = number(charPoly, 1e-8);
    env.verdicts = {lt("converged", hr.res1Sup, p.tol),
                    le("iterations", r.iterations, p.maxIter),
                    lt("basin", c.t0Norm, c.sigmaR / 10.0),
                    le("gamma_in_ball", gammaNorm, c.sigmaR),
                    lt("contraction_bound", c.contractionBound, 1.0),
                    lt("step_ratio", worstRatio, 1.0),
                    le("char_poly_invariant", charPoly, 1e-8),
                    le("res2_floor", res2Rel, 1e-10)};
    env.tables.push_back(trace_table(r.trace));
}

// --- sweep ----------------------------------------------------------------

void run_sweep(const RunParams& p, ReportEnvelope& env)
{
    const ApproxSweep sw =
        approximate_error_sweep(p.RList, kDeltaPrime, kDeltaDoublePrime, p.C, p.gridNModes, kFixtureAmplitude, p.seed);
    CsvTable t{"residuals", {"R", "T", "res1_sup", "res1_l2", "res2_sup", "fitted_slope"}, {}};
    double res2 = 0.0;
    for (const auto& row : sw.rows) {
        t.rows.push_back({row.R, row.T, row.res1Sup, row.res1L2, row.res2Sup, sw.fittedSlope});
        res2 = std::max(res2, row.res2Sup / row.fieldScale);
    }
    env.results["delta_prime"] = kDeltaPrime;
    env.results["delta_double_prime"] = kDeltaDoublePrime;
    env.results["fitted_slope"] = number(sw.fittedSlope, 0.5 * kDeltaDoublePrime);
    env.results["res2_relative"] = number(res2, 1e-10);

    std::vector<double> Ts;
    for (double R : p.RList)
        Ts.push_back(-std::log(R));
    const int nTau = p.gridNTau > 0 ? p.gridNTau : p.eigenNTau;
    const auto eig = eigen_sweep(Ts, p.C, nTau, p.gridNModes, kFixtureAmplitude, p.seed);
    CsvTable e{"eigenvalues", {"T", "R", "lambda_min", "lambda_min_times_T2"}, {}};
    double lo = INFINITY, hi = 0.0;
    for (const auto& row : eig) {
        e.rows.push_back({row.T, row.R, row.lambdaMin, row.lambdaMinTimesT2});
        lo = std::min(lo, row.lambdaMinTimesT2);
        hi = std::max(hi, row.lambdaMinTimesT2);
    }
    env.results["lambda_T2_min"] = lo;
    env.results["lambda_T2_spread"] = number(hi / lo, 10.0);

    env.verdicts = {within("residual_slope", sw.fittedSlope, 0.5 * kDeltaDoublePrime, 1.5 * kDeltaDoublePrime),
                    le("res2_floor", res2, 1e-10), holds("lambda_positive", lo > 0.0),
                    le("lambda_T2_spread", hi / lo, 10.0)};
    env.tables.push_back(std::move(t));
    env.tables.push_back(std::move(e));
}

// --- classify / census ----------------------------------------------------

std::string rat(const Rational& q)
{
    return q.denominator() == 1 ? std::to_string(q.numerator())
                                : std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

void run_classify(const RunParams& p, ReportEnvelope& env)
{
    const ComponentClass c = classify_hybrid(p.g1, p.g2, p.s);
    const MilnorWood mw = milnor_wood_check(c.toledo, c.genusTotal, 0);
    const Rational sum = connected_sum_degree(parabolic_degree(irreducible_model_bundle(p.g1, p.s)),
                                              parabolic_degree(diagonal_model_bundle(p.g2, p.s)));
    env.results["genus_total"] = c.genusTotal;
    env.results["toledo"] = rat(c.toledo);
    env.results["degL"] = c.degL;
    env.results["exceptional"] = c.exceptional;
    env.results["w1_zero"] = c.w1Zero;
    env.results["side_degree_sum"] = rat(sum);
    env.verdicts = {holds("degL_range", c.degL >= p.s && c.degL <= 2LL * c.genusTotal - p.s - 2),
                    holds("toledo_maximal", mw.maximal), holds("toledo_sum_rule", sum == c.toledo)};
}

void run_census(const RunParams& p, ReportEnvelope& env)
{
    const int g = p.g1 + p.g2 + p.s - 1;
    const Census c = component_census(g);
    const auto rows = coverage_sweep(g);
    const CoverageRow& last = rows.back();
    json attained = json::array();
    for (long long d : last.attained) attained.push_back(d);
    env.results["genus"] = g;
    env.results["total_components"] = c.total;
    env.results["exceptional_components"] = c.exceptional;
    env.results["deg_range"] = json::array({c.degMin, c.degMax});
    env.results["attained_degL"] = attained;
    CsvTable t{"coverage", {"genus", "splittings", "attained", "exceptional"}, {}};
    bool agree = true;
    for (const auto& r : rows) {
        t.rows.push_back({double(r.genus), double(r.splittings), double(r.attained.size()), double(r.exceptional)});
        agree = agree && r.covers && static_cast<long long>(r.attained.size()) == r.exceptional;
    }
    env.verdicts = {holds("census_coverage_agree", agree)};
    env.tables.push_back(std::move(t));
}

void require(bool ok, const std::string& flag, const std::string& what)
{
    if (!ok)
        throw UsageError("--" + flag + ": " + what);
}

} // namespace

std::optional<Command> parse_command(std::string_view name)
{
    for (const auto& c : kCommands)
        if (name == c.name)
            return c.c;
    return std::nullopt;
}

const char* command_name(Command c)
{
    for (const auto& k : kCommands)
        if (k.c == c)
            return k.name;
    return "?";
}

const std::vector<Command>& all_commands()
{
    static const std::vector<Command> all = [] {
        std::vector<Command> v;
        for (const auto& c : kCommands) v.push_back(c.c);
        return v;
    }();
    return all;
}

const char* status_name(Status s)
{
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    default: return "skipped";
    }
}

void validate(const RunConfig& cfg)
{
    const RunParams& p = cfg.params;
    auto checkR = [](double R) { return R > 0.0 && R < 1.0; };
    auto checkC = [&] { require(std::isfinite(p.C) && p.C != 0.0, "C", "must be finite and nonzero"); };
    auto checkGrid = [&] {
        require(p.gridNTau == 0 || (p.gridNTau >= 16 && p.gridNTau % 2 == 0), "grid-ntau", "even and >= 16 (or 0)");
        require(p.gridNModes >= 1 && p.gridNModes <= 16, "grid-nmodes", "in [1, 16]");
    };
    switch (cfg.command) {
    case Command::verifyAlgebra: break;
    case Command::verifyModel: checkC(); break;
    case Command::kernel:
        checkC();
        require(p.jmax >= 1 && p.jmax <= 4096, "jmax", "in [1, 4096]");
        break;
    case Command::glue:
        checkC();
        checkGrid();
        require(checkR(p.R), "R", "in (0, 1)");
        break;
    case Command::solve:
        checkC();
        checkGrid();
        require(checkR(p.R), "R", "in (0, 1)");
        require(p.tol > 0.0, "tol", "must be positive");
        require(p.maxIter >= 1, "max-iter", "must be at least 1");
        require(p.epsilon > 0.0, "epsilon", "must be positive");
        break;
    case Command::sweep:
        checkC();
        checkGrid();
        require(p.RList.size() >= 2, "R-list", "needs at least two radii");
        for (double R : p.RList) require(checkR(R), "R-list", "radii in (0, 1)");
        break;
    case Command::classify:
    case Command::census:
        require(p.g1 >= 1, "g1", "must be >= 1");
        require(p.g2 >= 1, "g2", "must be >= 1");
        require(p.s >= 1, "s", "must be >= 1");
        if (cfg.command == Command::census)
            require(p.g1 + p.g2 + p.s - 1 <= 30, "g1", "connected-sum genus above 30");
        break;
    }
}

std::vector<std::string> criteria(Command c)
{
    switch (c) {
    case Command::verifyAlgebra:
        return {"bracket_phi_irr", "bracket_psi", "sp4_relation", "norm_phi_irr", "norm_psi", "group_homomorphism",
                "group_symplectic"};
    case Command::verifyModel: return {"order2_s0.3", "order2_s0.5", "order2_s0.7", "models_opposite"};
    case Command::kernel: return {"kernel_table"};
    case Command::glue:
        return {"model_glue_exact", "mismatched_C_raises", "approx_exact_off_mixing", "approx_res2_floor"};
    case Command::solve:
        return {"converged", "iterations",  "basin", "gamma_in_ball", "contraction_bound", "step_ratio",
                "char_poly_invariant", "res2_floor"};
    case Command::sweep: return {"residual_slope", "res2_floor", "lambda_positive", "lambda_T2_spread"};
    case Command::classify: return {"degL_range", "toledo_maximal", "toledo_sum_rule"};
    case Command::census: return {"census_coverage_agree"};
    }
    return {};
}

json parameter_snapshot(const RunConfig& cfg)
{
    const RunParams& p = cfg.params;
    return json{{"g1", p.g1},          {"g2", p.g2},
                {"s", p.s},            {"C", p.C},
                {"R", p.R},            {"R_list", p.RList},
                {"jmax", p.jmax},      {"grid_ntau", p.gridNTau},
                {"grid_nmodes", p.gridNModes}, {"eigen_ntau", p.eigenNTau},
                {"tol", p.tol},        {"max_iter", p.maxIter},
                {"epsilon", p.epsilon}, {"seed", p.seed},
                {"dry_run", p.dryRun}};
}

ReportEnvelope dispatch(const RunConfig& cfg)
{
    validate(cfg);
    ReportEnvelope env;
    env.command = command_name(cfg.command);
    env.timestamp = now_utc();
    env.parameters = parameter_snapshot(cfg);
    env.results = json::object();
    if (cfg.params.dryRun) {
        for (const auto& name : criteria(cfg.command))
            env.verdicts.push_back({name, Status::skipped, 0.0, 0.0, ""});
        return env;
    }
    try {
        switch (cfg.command) {
        case Command::verifyAlgebra: run_verify_algebra(cfg.params, env); break;
        case Command::verifyModel: run_verify_model(cfg.params, env); break;
        case Command::kernel: run_kernel(cfg.params, env); break;
        case Command::glue: run_glue(cfg.params, env); break;
        case Command::solve: run_solve(cfg.params, env); break;
        case Command::sweep: run_sweep(cfg.params, env); break;
        case Command::classify: run_classify(cfg.params, env); break;
        case Command::census: run_census(cfg.params, env); break;
        }
    } catch (const UsageError&) {
        throw;
    } catch (const Error& e) {
        json err{{"name", e.name()}, {"message", e.what()}};
        if (const auto* b = dynamic_cast<const BasinError*>(&e))
            err["product"] = b->product();
        if (const auto* g = dynamic_cast<const GluingError*>(&e))
            err["mismatch"] = g->mismatch();
        env.results["error"] = err;
        env.verdicts.clear();
        for (const auto& name : criteria(cfg.command))
            env.verdicts.push_back({name, Status::fail, 0.0, 0.0, "error"});
    }
    return env;
}

int exit_code(const ReportEnvelope& env)
{
    for (const auto& v : env.verdicts)
        if (v.status == Status::fail)
            return 1;
    return 0;
}

std::string render_report(const ReportEnvelope& env)
{
    json verdicts = json::array();
    for (const auto& v : env.verdicts)
        verdicts.push_back(json{{"criterion", v.criterion},
                                {"status", status_name(v.status)},
                                {"value", v.value},
                                {"tolerance", v.tolerance},
                                {"relation", v.relation}});
    json tables = json::object();
    for (const auto& t : env.tables)
        tables[t.name] = json{{"columns", t.columns}, {"rows", t.rows}};
    const json doc{{"schema", "1"},
                   {"command", env.command},
                   {"timestamp", env.timestamp},
                   {"parameters", env.parameters},
                   {"results", env.results},
                   {"tables", tables},
                   {"verdicts", verdicts}};
    return doc.dump(2) + "\n";
}

std::string render_csv(const CsvTable& t)
{
    std::ostringstream os;
    os << std::setprecision(12);
    for (size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << row[i];
        os << "\n";
    }
    return os.str();
}

void emit_report(const ReportEnvelope& env, const std::string& path)
{
    const std::string text = render_report(env);
    if (path.empty()) {
        std::cout << text;
        return;
    }
    auto write = [](const std::filesystem::path& file, const std::string& body) {
        std::ofstream f(file, std::ios::binary);
        if (!f)
            throw IoError("cannot open " + file.string() + " for writing");
        f << body;
        if (!f.flush())
            throw IoError("write failed: " + file.string());
    };
    const std::filesystem::path out(path);
    write(out, text);
    for (const auto& t : env.tables) {
        std::filesystem::path csv = out;
        csv.replace_extension();
        csv += "." + t.name + ".csv";
        write(csv, render_csv(t));
    }
}

} // namespace hglue::cli
