#include "cli.hpp"

#include "tietz/errors.hpp"
#include "tietz/model.hpp"
#include "tietz/moldb.hpp"
#include "tietz/oracle.hpp"
#include "tietz/spectra.hpp"
#include "tietz/wavefn.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <variant>

namespace tietz::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options
{
    std::string units{"natural"};
    std::optional<double> D, mu, b_h, r_e, c_h;
    double hbar2_over_2mu{1.0};
    std::string molecule;
    std::string file;
    std::optional<int> l, n_r, grid, scan_points;
    std::optional<double> tol, r_start, r_stop;
    std::string format{"csv"};
    std::string out;
    std::string centrifugal{"exact"};
    std::optional<double> C0, B0, A0;
};

/// Usage or parameter problem, reported with exit code 2.
struct UsageError : Error
{
    using Error::Error;
};

using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string format_number(double v)
{
    return fmt::format("{:.12g}", v);
}

/// Same 12 significant digits as the CSV text, so both formats agree exactly.
Json json_number(double v)
{
    if (!std::isfinite(v)) {
        return nullptr;
    }
    return std::stod(format_number(v));
}

std::string csv_cell(Cell const& cell)
{
    return std::visit(
        [](auto const& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            }
            else if constexpr (std::is_same_v<T, double>) {
                return format_number(v);
            }
            else if constexpr (std::is_same_v<T, long long>) {
                return std::to_string(v);
            }
            else if (v.find_first_of(",\"\n") == std::string::npos) {
                return v;
            }
            else {
                std::string quoted = "\"";
                for (char ch : v) {
                    quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                }
                return quoted + "\"";
            }
        },
        cell);
}

Json json_cell(Cell const& cell)
{
    return std::visit(
        [](auto const& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            }
            else if constexpr (std::is_same_v<T, double>) {
                return json_number(v);
            }
            else {
                return v;
            }
        },
        cell);
}

Json params_json(PotentialParams const& p)
{
    return Json{{"units", p.units == UnitSystem::molecular ? "molecular" : "natural"},
                {"D", json_number(p.D)},
                {"r_e", json_number(p.r_e)},
                {"b_h", json_number(p.b_h)},
                {"c_h", json_number(p.c_h)},
                {"beta", json_number(p.beta())},
                {"mu", json_number(p.mu)},
                {"hbar2_over_2mu", json_number(p.hbar2_over_2mu)}};
}

Json regime_json(Regime const& r)
{
    return Json{{"kind", std::string(to_string(r.kind))},
                {"threshold", json_number(r.threshold)},
                {"r0", r.r0 ? json_number(*r.r0) : Json(nullptr)},
                {"boundary_offset", r.boundary_offset ? json_number(*r.boundary_offset) : Json(nullptr)}};
}

struct Report
{
    std::string command;
    Json params = Json::object();
    Json regime = Json::object();
    Table table;
};

void emit(Options const& opt, Report const& report, std::ostream& out)
{
    std::ofstream file;
    std::ostream* sink = &out;
    if (!opt.out.empty()) {
        file.open(opt.out);
        if (!file) {
            throw UsageError(fmt::format("cannot write '{}'", opt.out));
        }
        sink = &file;
    }
    if (opt.format == "json") {
        Json doc{{"command", report.command}, {"params", report.params}, {"regime", report.regime}};
        Json results = Json::array();
        for (auto const& row : report.table.rows) {
            Json obj = Json::object();
            for (std::size_t i = 0; i < row.size(); ++i) {
                obj[report.table.columns[i]] = json_cell(row[i]);
            }
            results.push_back(std::move(obj));
        }
        doc["results"] = std::move(results);
        *sink << doc.dump(2) << '\n';
        return;
    }
    auto const& cols = report.table.columns;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        *sink << (i ? "," : "") << cols[i];
    }
    *sink << '\n';
    for (auto const& row : report.table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            *sink << (i ? "," : "") << csv_cell(row[i]);
        }
        *sink << '\n';
    }
}

std::vector<MoleculeRecord> molecule_records(Options const& opt)
{
    std::vector<MoleculeRecord> records;
    if (!opt.file.empty()) {
        records = load_molecules(opt.file);
    }
    auto defaults = default_molecules();
    records.insert(records.end(), defaults.begin(), defaults.end());
    return records;
}

/// Parameters from flags, optionally seeded by a molecule record. `need_depth`
/// is false for classification, which does not depend on D.
PotentialParams resolve_params(Options const& opt, bool need_depth)
{
    Options o = opt;
    if (!opt.molecule.empty()) {
        auto const rec = find_molecule(molecule_records(opt), opt.molecule);
        if (!rec) {
            throw UsageError(fmt::format("unknown molecule '{}'", opt.molecule));
        }
        o.b_h = o.b_h ? o.b_h : rec->b_h;
        o.r_e = o.r_e ? o.r_e : rec->r_e;
        o.D = o.D ? o.D : rec->D;
        o.mu = o.mu ? o.mu : rec->mu;
        o.c_h = o.c_h ? o.c_h : rec->c_h;
    }
    if (!o.b_h || !o.r_e) {
        throw UsageError("need --b-h and --r-e (or --molecule)");
    }
    if (!o.c_h) {
        throw UsageError("need --c-h");
    }
    if (!(std::abs(*o.c_h) < 1.0)) {
        throw UsageError("|c_h| must be < 1");
    }
    if (!o.D) {
        if (need_depth) {
            throw UsageError("need --D");
        }
        o.D = 1.0;
    }
    if (o.units == "molecular") {
        if (!o.mu) {
            throw UsageError("molecular units need --D (eV) and --mu (amu)");
        }
        return PotentialParams::molecular(*o.D, *o.r_e, *o.b_h, *o.c_h, *o.mu);
    }
    return PotentialParams::natural(*o.D, *o.r_e, *o.b_h, *o.c_h, o.hbar2_over_2mu);
}

Report base_report(std::string command, PotentialParams const& p)
{
    Report r;
    r.command = std::move(command);
    r.params = params_json(p);
    r.regime = regime_json(classify_regime(p));
    return r;
}

int effective_l(Options const& opt, Regime const& regime, std::ostream& err)
{
    int const l = opt.l.value_or(0);
    if (l < 0) {
        throw UsageError("--l must be >= 0");
    }
    if (l != 0 && regime.kind != RegimeKind::case1_mr) {
        err << fmt::format("note: {} is solved for s-waves only; using l = 0\n", to_string(regime.kind));
        return 0;
    }
    return l;
}

/// Fitted coefficients, with any of them replaced by --C0/--B0/--A0.
CentrifugalApprox approx_for(Options const& opt, PotentialParams const& p, Regime const& regime)
{
    if (regime.kind != RegimeKind::case1_mr) {
        return {};
    }
    CentrifugalApprox a = fit_centrifugal_approx(p);
    a.C0 = opt.C0.value_or(a.C0);
    a.B0 = opt.B0.value_or(a.B0);
    a.A0 = opt.A0.value_or(a.A0);
    return a;
}

RootScanConfig scan_config(Options const& opt, PotentialParams const& p)
{
    RootScanConfig scan = RootScanConfig::defaults_for(p);
    if (opt.scan_points) {
        scan.grid_points = *opt.scan_points;
    }
    if (opt.tol) {
        scan.bisect_rel_tol = *opt.tol;
    }
    scan.validate(p);
    return scan;
}

std::vector<Cell> level_row(BoundLevel const& level)
{
    return {static_cast<long long>(level.n_r), static_cast<long long>(level.l), level.energy,
            std::string(to_string(level.method)), level.residual};
}

BoundLevel select_level(std::vector<BoundLevel> const& levels, int n_r)
{
    if (n_r < 0) {
        throw UsageError("--n-r must be >= 0");
    }
    if (n_r >= static_cast<int>(levels.size())) {
        throw IndexError(fmt::format("n_r = {} exceeds n_r,max = {}", n_r, static_cast<int>(levels.size()) - 1));
    }
    return levels[n_r];
}

int cmd_classify(Options const& opt, std::ostream& out)
{
    PotentialParams const p = resolve_params(opt, false);
    Regime const regime = classify_regime(p);
    Report report = base_report("classify", p);
    report.table.columns = {"regime", "c_h", "threshold", "r0", "boundary_offset"};
    report.table.rows.push_back({std::string(to_string(regime.kind)), p.c_h, regime.threshold,
                                 regime.r0 ? Cell(*regime.r0) : Cell{},
                                 regime.boundary_offset ? Cell(*regime.boundary_offset) : Cell{}});
    emit(opt, report, out);
    return ok;
}

int cmd_levels(Options const& opt, std::ostream& out, std::ostream& err)
{
    PotentialParams const p = resolve_params(opt, true);
    Regime const regime = classify_regime(p);
    int const l = effective_l(opt, regime, err);
    CentrifugalApprox const approx = approx_for(opt, p, regime);
    Report report = base_report("levels", p);
    report.table.columns = {"n_r", "l", "energy", "method", "residual"};

    int code = ok;
    std::vector<BoundLevel> levels;
    if (regime.kind == RegimeKind::case1_mr && opt.n_r) {
        if (*opt.n_r < 0) {
            throw UsageError("--n-r must be >= 0");
        }
        levels.push_back(case1_energy(p, l, *opt.n_r, approx));
    }
    else {
        LevelScan const scan = bound_levels(p, l, approx, scan_config(opt, p));
        for (auto const& w : scan.warnings) {
            err << "warning: " << w << '\n';
            code = numerical_warning;
        }
        levels = opt.n_r ? std::vector<BoundLevel>{select_level(scan.levels, *opt.n_r)} : scan.levels;
    }
    for (auto const& level : levels) {
        report.table.rows.push_back(level_row(level));
    }
    emit(opt, report, out);
    return code;
}

int cmd_potential(Options const& opt, std::ostream& out)
{
    PotentialParams const p = resolve_params(opt, true);
    Regime const regime = classify_regime(p);
    double const start = opt.r_start.value_or(regime.domain_start() + 0.1 / p.b_h);
    double const stop = opt.r_stop.value_or(p.r_e + 10.0 / p.b_h);
    int const samples = opt.grid.value_or(201);
    if (!(stop > start)) {
        throw UsageError("--r-stop must exceed --r-start");
    }
    if (samples < 2) {
        throw UsageError("--grid must be >= 2");
    }
    if (!(start > regime.domain_start())) {
        throw UsageError(regime.r0 ? fmt::format("samples must lie above r0 = {:.12g}", *regime.r0)
                                   : std::string("samples must lie above r = 0"));
    }
    Report report = base_report("potential", p);
    report.table.columns = {"r", "V"};
    for (int i = 0; i < samples; ++i) {
        double const r = start + (stop - start) * i / (samples - 1);
        report.table.rows.push_back({r, potential_eval(p, r)});
    }
    emit(opt, report, out);
    return ok;
}

BoundLevel requested_level(Options const& opt, PotentialParams const& p, Regime const& regime, int l,
                           CentrifugalApprox const& approx, std::ostream& err, int& code)
{
    int const n_r = opt.n_r.value_or(0);
    if (n_r < 0) {
        throw UsageError("--n-r must be >= 0");
    }
    if (regime.kind == RegimeKind::case1_mr) {
        return case1_energy(p, l, n_r, approx);
    }
    LevelScan const scan = bound_levels(p, l, approx, scan_config(opt, p));
    for (auto const& w : scan.warnings) {
        err << "warning: " << w << '\n';
        code = numerical_warning;
    }
    return select_level(scan.levels, n_r);
}

int cmd_wavefunction(Options const& opt, std::ostream& out, std::ostream& err)
{
    PotentialParams const p = resolve_params(opt, true);
    Regime const regime = classify_regime(p);
    int const l = effective_l(opt, regime, err);
    CentrifugalApprox const approx = approx_for(opt, p, regime);
    int code = ok;
    WavefunctionSpec const spec = make_wavefunction(p, requested_level(opt, p, regime, l, approx, err, code), approx);

    Support const s = support(spec, 1e-10);
    double const start = opt.r_start.value_or(s.lo);
    double const stop = opt.r_stop.value_or(s.hi);
    int const samples = opt.grid.value_or(401);
    if (!(stop > start)) {
        throw UsageError("--r-stop must exceed --r-start");
    }
    if (samples < 2) {
        throw UsageError("--grid must be >= 2");
    }
    if (!(start > regime.domain_start())) {
        throw UsageError(fmt::format("samples must lie above r = {:.12g}", regime.domain_start()));
    }
    Report report = base_report("wavefunction", p);
    report.table.columns = {"r", "chi"};
    for (int i = 0; i < samples; ++i) {
        double const r = start + (stop - start) * i / (samples - 1);
        report.table.rows.push_back({r, evaluate(spec, r)});
    }
    emit(opt, report, out);
    return code;
}

int cmd_verify(Options const& opt, std::ostream& out, std::ostream& err)
{
    PotentialParams const p = resolve_params(opt, true);
    Regime const regime = classify_regime(p);
    int const l = effective_l(opt, regime, err);
    CentrifugalApprox const approx = approx_for(opt, p, regime);

    CentrifugalMode mode = CentrifugalMode::exact;
    if (opt.centrifugal == "approximated") {
        mode = CentrifugalMode::approximated;
    }
    else if (opt.centrifugal != "exact") {
        throw UsageError("--centrifugal must be exact or approximated");
    }

    int code = ok;
    std::vector<BoundLevel> analytic;
    if (regime.kind == RegimeKind::case1_mr) {
        analytic = case1_levels(p, l, approx);
    }
    else {
        LevelScan const scan = bound_levels(p, l, approx, scan_config(opt, p));
        for (auto const& w : scan.warnings) {
            err << "warning: " << w << '\n';
            code = numerical_warning;
        }
        analytic = scan.levels;
    }

    bool const informational = l > 0 && mode == CentrifugalMode::exact;
    double const tolerance =
        (regime.kind == RegimeKind::case2_half_space_mr || regime.kind == RegimeKind::case3_rm) ? 1e-5 : 1e-6;

    NumerovConfig cfg = NumerovConfig::defaults_for(p);
    cfg.centrifugal_mode = mode;
    cfg.approx = approx;
    double ceiling = p.D + (mode == CentrifugalMode::approximated ? p.hbar2_over_2mu * l * (l + 1.0) * approx.C0 : 0.0);
    if (opt.grid) {
        cfg.n_points = *opt.grid;
    }
    else if (!analytic.empty()) {
        // Reach far enough for the shallowest level to decay, at the default spacing.
        double const spacing = (cfg.r_max - cfg.r_min) / (cfg.n_points - 1);
        double const kappa = std::sqrt(std::max(ceiling - analytic.back().energy, 1e-12 * p.D) / p.hbar2_over_2mu);
        cfg.r_max = std::max(cfg.r_max, p.r_e + 40.0 / kappa + 5.0 / p.b_h);
        cfg.n_points = std::max(cfg.n_points, static_cast<int>(std::min((cfg.r_max - cfg.r_min) / spacing, 4e6)) + 1);
    }

    RichardsonReport const rich = richardson_check(p, l, cfg);
    if (rich.warning) {
        err << fmt::format("warning: Richardson check: halving the step shifts levels by {:.3g} (limit {:.3g}); "
                           "oracle grid too coarse\n",
                           rich.max_shift, 10.0 * cfg.e_tol_rel);
    }
    OracleResult const& oracle = rich.coarse;

    Report report = base_report("verify", p);
    report.table.columns = {"n_r", "l", "analytic", "oracle", "rel_deviation", "tolerance", "oracle_nodes", "status"};
    bool failed = false;
    std::size_t const rows = std::max(analytic.size(), oracle.levels.size());
    for (std::size_t i = 0; i < rows; ++i) {
        bool const has_a = i < analytic.size();
        bool const has_o = i < oracle.levels.size();
        std::vector<Cell> row{static_cast<long long>(i), static_cast<long long>(l)};
        row.push_back(has_a ? Cell(analytic[i].energy) : Cell{});
        row.push_back(has_o ? Cell(oracle.levels[i].level.energy) : Cell{});
        std::string status;
        if (has_a && has_o) {
            double const dev =
                std::abs(analytic[i].energy - oracle.levels[i].level.energy) / std::abs(oracle.levels[i].level.energy);
            row.push_back(dev);
            bool const pass = dev <= tolerance && oracle.levels[i].nodes == static_cast<int>(i);
            status = informational ? "info" : pass ? "pass" : "fail";
            failed = failed || (!informational && !pass);
        }
        else {
            row.push_back(Cell{});
            status = informational ? "info" : "fail";
            failed = failed || !informational;
        }
        row.push_back(informational ? Cell{} : Cell(tolerance));
        row.push_back(has_o ? Cell(static_cast<long long>(oracle.levels[i].nodes)) : Cell{});
        row.push_back(status);
        report.table.rows.push_back(std::move(row));
    }
    emit(opt, report, out);
    if (rich.warning || code == numerical_warning) {
        return numerical_warning;
    }
    if (failed) {
        err << "verification failed\n";
        return verification_failed;
    }
    return ok;
}

int cmd_molecules(Options const& opt, std::ostream& out)
{
    std::vector<MoleculeRecord> records = default_molecules();
    if (!opt.file.empty()) {
        auto extra = load_molecules(opt.file);
        records.insert(records.end(), extra.begin(), extra.end());
    }
    Report report;
    report.command = "molecules";
    report.table.columns = {"name", "b_h", "r_e", "c_h_min", "D", "mu", "c_h"};
    auto optional_cell = [](std::optional<double> v) { return v ? Cell(*v) : Cell{}; };
    for (auto const& m : records) {
        report.table.rows.push_back(
            {m.name, m.b_h, m.r_e, m.c_h_min, optional_cell(m.D), optional_cell(m.mu), optional_cell(m.c_h)});
    }
    emit(opt, report, out);
    return ok;
}

} // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Bound states of the Tietz-Wei diatomic potential"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    Options opt;

    app.add_option("--units", opt.units, "natural or molecular")->check(CLI::IsMember({"natural", "molecular"}));
    app.add_option("--D", opt.D, "well depth (eV in molecular units)");
    app.add_option("--mu", opt.mu, "reduced mass in amu (molecular units)");
    app.add_option("--hbar2-2mu", opt.hbar2_over_2mu, "hbar^2/2mu (natural units)")->capture_default_str();
    app.add_option("--b-h", opt.b_h, "b_h (1/Angstrom in molecular units)");
    app.add_option("--r-e", opt.r_e, "equilibrium distance (Angstrom in molecular units)");
    app.add_option("--c-h", opt.c_h, "deformation parameter, |c_h| < 1");
    app.add_option("--molecule", opt.molecule, "molecule name, e.g. H2");
    app.add_option("--file", opt.file, "molecule file");
    app.add_option("--l", opt.l, "orbital quantum number");
    app.add_option("--n-r", opt.n_r, "radial quantum number");
    app.add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", opt.out, "output file (default stdout)");
    app.add_option("--grid", opt.grid, "sample count, or oracle grid points for verify");
    app.add_option("--scan-points", opt.scan_points, "energy grid of the root scan");
    app.add_option("--tol", opt.tol, "relative bisection tolerance of the root scan");
    app.add_option("--r-start", opt.r_start, "first sample");
    app.add_option("--r-stop", opt.r_stop, "last sample");
    app.add_option("--centrifugal", opt.centrifugal, "verify: exact or approximated centrifugal term");
    app.add_option("--C0", opt.C0, "override the fitted C0 of the 1/r^2 replacement");
    app.add_option("--B0", opt.B0, "override the fitted B0");
    app.add_option("--A0", opt.A0, "override the fitted A0");

    auto* classify = app.add_subcommand("classify", "regime of c_h and its threshold");
    auto* levels = app.add_subcommand("levels", "bound-state energies");
    auto* potential = app.add_subcommand("potential", "sampled potential curve");
    auto* wavefunction = app.add_subcommand("wavefunction", "sampled normalized wave function");
    auto* verify = app.add_subcommand("verify", "analytic levels against the Numerov oracle");
    auto* molecules = app.add_subcommand("molecules", "molecule table with c_h,min");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    }
    catch (CLI::CallForHelp const&) {
        out << app.help();
        return ok;
    }
    catch (CLI::ParseError const& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }

    try {
        if (*classify) {
            return cmd_classify(opt, out);
        }
        if (*levels) {
            return cmd_levels(opt, out, err);
        }
        if (*potential) {
            return cmd_potential(opt, out);
        }
        if (*wavefunction) {
            return cmd_wavefunction(opt, out, err);
        }
        if (*verify) {
            return cmd_verify(opt, out, err);
        }
        if (*molecules) {
            return cmd_molecules(opt, out);
        }
    }
    catch (ConvergenceError const& e) {
        err << "error: " << e.what() << '\n';
        return numerical_warning;
    }
    catch (std::exception const& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }
    return usage_error;
}

} // namespace tietz::cli
