#include "heatdist/cli/commands.hpp"

#include "heatdist/catalog.hpp"
#include "heatdist/cli/initial_spec.hpp"
#include "heatdist/error.hpp"
#include "heatdist/evolve.hpp"
#include "heatdist/kernel.hpp"
#include "heatdist/spaces.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace heatdist::cli {

namespace {

struct RunConfig {
    std::string initial;
    std::string space;
    std::vector<double> t;
    double x_min = -5.0;
    double x_max = 5.0;
    std::size_t samples = 101;
    double tol = realline::kDefaultQuadratureTol;
    std::string out;
    std::string format = "csv";
    bool all = false;
    std::vector<std::string> checks;
    std::vector<std::string> params;
    std::optional<double> sigma;
    std::optional<double> rho;
    int n = 10;
    std::string trajectory = "evolve";
};

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_times(std::vector<double>& ts, bool required) {
    if (ts.empty()) {
        if (required) throw ConfigError("--t needs at least one time");
        return;
    }
    for (double t : ts) {
        if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("times must be positive and finite");
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
}

std::string full_spec(const RunConfig& cfg) {
    if (cfg.initial.empty()) throw ConfigError("--initial is required");
    if (cfg.space.empty()) return cfg.initial;
    const bool has_params = cfg.initial.find(':') != std::string::npos;
    return cfg.initial + (has_params ? "," : ":") + "space=" + cfg.space;
}

DistributionalData load_data(const RunConfig& cfg) {
    try {
        return parse_initial_spec(full_spec(cfg));
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
}

ParamMap parse_params(const std::vector<std::string>& items) {
    ParamMap out;
    for (const std::string& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("--param expects name=value, got '" + item + "'");
        double v = 0.0;
        const std::string value = item.substr(eq + 1);
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
            throw ConfigError("malformed number in --param '" + item + "'");
        }
        out[item.substr(0, eq)] = v;
    }
    return out;
}

nlohmann::json number_json(double v) {
    if (std::isfinite(v)) return v;
    return format_number(v);
}

// Writes to --out when given, otherwise to the provided stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError("cannot open output file '" + path + "'");
            stream_ = &file_;
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

void check_format(const RunConfig& cfg) {
    if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("--format must be csv or json");
}

int cmd_evolve(RunConfig cfg, std::ostream& out, std::ostream& err) {
    check_format(cfg);
    const DistributionalData data = load_data(cfg);
    require_times(cfg.t, true);
    if (!std::isfinite(cfg.x_min) || !std::isfinite(cfg.x_max) || !(cfg.x_max > cfg.x_min)) {
        throw ConfigError("x-range must be finite with x-max > x-min");
    }
    if (cfg.samples < 2) throw ConfigError("--samples must be at least 2");

    std::vector<double> xs(cfg.samples);
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        xs[i] = cfg.x_min + (cfg.x_max - cfg.x_min) * static_cast<double>(i) / static_cast<double>(cfg.samples - 1);
    }
    std::vector<std::vector<double>> cols;
    int status = kExitOk;
    for (double t : cfg.t) {
        std::vector<double> col(xs.size(), std::numeric_limits<double>::quiet_NaN());
        try {
            for (std::size_t i = 0; i < xs.size(); ++i) col[i] = evolve::convolve(data, t, xs[i], cfg.tol);
        } catch (const OutOfHorizon& e) {
            err << "t=" << format_number(t) << ": " << e.what() << "\n";
            status = kExitFail;
        }
        cols.push_back(std::move(col));
    }

    Sink sink(cfg.out, out);
    if (cfg.format == "csv") {
        *sink << "x";
        for (double t : cfg.t) *sink << ",u_t=" << format_number(t);
        *sink << "\n";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            *sink << format_number(xs[i]);
            for (const auto& col : cols) *sink << "," << format_number(col[i]);
            *sink << "\n";
        }
    } else {
        nlohmann::json j;
        j["x"] = xs;
        j["columns"] = nlohmann::json::array();
        for (std::size_t c = 0; c < cols.size(); ++c) {
            nlohmann::json u = nlohmann::json::array();
            for (double v : cols[c]) u.push_back(std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v));
            j["columns"].push_back({{"t", cfg.t[c]}, {"u", u}});
        }
        *sink << j.dump(2) << "\n";
    }
    return status;
}

struct NormRow {
    double t;
    NormReport report;
};

int cmd_norm(RunConfig cfg, std::ostream& out, std::ostream&) {
    check_format(cfg);
    require_times(cfg.t, false);
    const DistributionalData data = load_data(cfg);
    const SolveOptions opts{cfg.tol};
    std::vector<NormRow> rows;
    if (data.weighted()) {
        const double sigma = cfg.sigma.value_or(data.tau());
        rows.push_back({0.0, spaces::weighted_norm(data, WeightSpec(sigma), cfg.tol)});
        for (double t : cfg.t) rows.push_back({t, evolve::solution_weighted_norm(data, sigma, t, opts)});
    } else {
        rows.push_back({0.0, std::holds_alternative<AlexSpace>(data.space()) ? spaces::alex_norm(data, cfg.tol)
                                                                              : spaces::alexn_norm(data, cfg.tol)});
        for (double t : cfg.t) rows.push_back({t, evolve::field_norm(data, t, 0, opts)});
    }
    Sink sink(cfg.out, out);
    if (cfg.format == "csv") {
        *sink << "t,norm,achieved_lo,achieved_hi,refinement_error\n";
        for (const auto& r : rows) {
            *sink << format_number(r.t) << "," << format_number(r.report.value) << ","
                  << format_number(r.report.achieved_by.first) << "," << format_number(r.report.achieved_by.second)
                  << "," << format_number(r.report.refinement_error) << "\n";
        }
    } else {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : rows) {
            j.push_back({{"t", r.t},
                         {"norm", r.report.value},
                         {"achieved_by", {number_json(r.report.achieved_by.first),
                                          number_json(r.report.achieved_by.second)}},
                         {"refinement_error", r.report.refinement_error}});
        }
        *sink << j.dump(2) << "\n";
    }
    return kExitOk;
}

int cmd_converge(RunConfig cfg, std::ostream& out, std::ostream&) {
    check_format(cfg);
    require_times(cfg.t, true);
    std::reverse(cfg.t.begin(), cfg.t.end());
    const DistributionalData data = load_data(cfg);
    const SolveOptions opts{cfg.tol, 200000};
    std::vector<double> norms;
    for (double t : cfg.t) {
        if (data.weighted()) {
            const double sigma = cfg.sigma.value_or(0.5 * data.tau());
            try {
                norms.push_back(evolve::weighted_convergence_norm(data, sigma, t, opts).value);
            } catch (const UnsupportedDecay& e) {
                throw ConfigError(e.what());
            }
        } else {
            norms.push_back(evolve::convergence_norm(data, t, opts).value);
        }
    }
    Sink sink(cfg.out, out);
    if (cfg.format == "csv") {
        *sink << "t,norm\n";
        for (std::size_t i = 0; i < norms.size(); ++i) {
            *sink << format_number(cfg.t[i]) << "," << format_number(norms[i]) << "\n";
        }
    } else {
        nlohmann::json j = nlohmann::json::array();
        for (std::size_t i = 0; i < norms.size(); ++i) j.push_back({{"t", cfg.t[i]}, {"norm", norms[i]}});
        *sink << j.dump(2) << "\n";
    }
    return kExitOk;
}

int cmd_verify(RunConfig cfg, std::ostream& out, std::ostream& err) {
    if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("--format must be csv or json");
    std::vector<std::string> ids = cfg.checks;
    if (cfg.all) {
        if (!ids.empty()) throw ConfigError("--all cannot be combined with explicit check ids");
        for (const auto& info : registered_checks()) ids.push_back(info.id);
    }
    if (ids.empty()) throw ConfigError("name a check or pass --all");
    const ParamMap params = parse_params(cfg.params);
    if (!params.empty() && ids.size() > 1) throw ConfigError("--param applies to a single check");
    for (const std::string& id : ids) {
        const auto& reg = registered_checks();
        if (std::none_of(reg.begin(), reg.end(), [&](const CheckInfo& c) { return c.id == id; })) {
            throw ConfigError("unknown check '" + id + "'");
        }
    }
    std::vector<CheckResult> results;
    for (const std::string& id : ids) {
        try {
            results.push_back(run_check(id, params));
        } catch (const InvalidArgument& e) {
            throw ConfigError(e.what());
        } catch (const Error& e) {
            CheckResult failed;
            failed.check = id;
            failed.params = params;
            failed.note = std::string("check raised: ") + e.what();
            results.push_back(failed);
        }
        err << (results.back().pass ? "PASS " : "FAIL ") << id << "\n";
    }
    const bool all_pass = std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
    Sink sink(cfg.out, out);
    if (cfg.format == "json") {
        if (results.size() == 1 && !cfg.all) {
            *sink << to_json(results.front()).dump(2) << "\n";
        } else {
            nlohmann::json j = nlohmann::json::array();
            for (const auto& r : results) j.push_back(to_json(r));
            *sink << j.dump(2) << "\n";
        }
    } else {
        *sink << "check,pass,lhs,rhs,tolerance\n";
        for (const auto& r : results) {
            *sink << r.check << "," << (r.pass ? "true" : "false") << "," << format_number(r.lhs) << ","
                  << format_number(r.rhs) << "," << format_number(r.tolerance) << "\n";
        }
    }
    return all_pass ? kExitOk : kExitFail;
}

int cmd_eulerian(RunConfig cfg, std::ostream& out, std::ostream&) {
    check_format(cfg);
    if (cfg.n < 1 || cfg.n > 200) throw ConfigError("--n must lie in [1, 200]");
    const uniqueness::EulerianTable table(cfg.n);
    Sink sink(cfg.out, out);
    if (cfg.format == "csv") {
        *sink << "n,l,A\n";
        for (int n = 1; n <= cfg.n; ++n) {
            for (int l = 0; l <= n; ++l) *sink << n << "," << l << "," << table(n, l).str() << "\n";
        }
    } else {
        nlohmann::json rows = nlohmann::json::array();
        for (int n = 1; n <= cfg.n; ++n) {
            for (int l = 0; l <= n; ++l) {
                const auto& a = table(n, l);
                nlohmann::json value = n <= uniqueness::kEulerianMax ? nlohmann::json(a.convert_to<std::int64_t>())
                                                                     : nlohmann::json(a.str());
                rows.push_back({{"n", n}, {"l", l}, {"A", value}});
            }
        }
        *sink << nlohmann::json{{"n_max", cfg.n}, {"rows", rows}}.dump(2) << "\n";
    }
    return kExitOk;
}

int cmd_probe(RunConfig cfg, std::ostream& out, std::ostream&) {
    if (cfg.t.empty()) cfg.t = {1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2, 0.1, 0.2, 0.5, 1.0};
    require_times(cfg.t, true);
    if (cfg.t.size() < 3) throw ConfigError("probe needs at least three times");
    uniqueness::Trajectory traj;
    uniqueness::ProbeSpace space = uniqueness::AlexProbe{};
    if (cfg.trajectory == "delta-prime") {
        if (!cfg.initial.empty()) throw ConfigError("--trajectory delta-prime takes no --initial");
        traj.value = [](double x, double t) { return kernel::theta_deriv(1, t, x); };
        traj.primitive = [](double t) { return primitives::make_closed_form("gauss", {{"s", t}}); };
        if (!cfg.space.empty() && cfg.space != "alex") throw ConfigError("delta-prime probes the alex norm only");
    } else if (cfg.trajectory == "evolve") {
        const DistributionalData data = load_data(cfg);
        const double tol = cfg.tol;
        traj.value = [data, tol](double x, double t) { return evolve::convolve(data, t, x, tol); };
        if (data.weighted()) {
            const double tau = data.tau();
            space = uniqueness::WeightedProbe{tau, cfg.sigma.value_or(0.5 * tau), cfg.rho.value_or(0.25 * tau)};
        } else {
            traj.primitive = [data, tol](double t) { return SolutionField(data, t, {tol}).as_primitive(); };
            if (std::holds_alternative<AlexNSpace>(data.space())) space = uniqueness::AlexNProbe{data.order()};
        }
    } else {
        throw ConfigError("--trajectory must be evolve or delta-prime");
    }
    uniqueness::ProbeReport rep;
    try {
        rep = uniqueness::uniqueness_probe(traj, space, cfg.t, cfg.tol);
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    Sink sink(cfg.out, out);
    *sink << to_json(rep).dump(2) << "\n";
    return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool grid) {
    sub->add_option("--initial", cfg.initial, "initial data, e.g. gauss:s=0.5 or dirac-diff:n=3");
    sub->add_option("--space", cfg.space, "space override: alex, alexn or weighted:tau=<value>");
    sub->add_option("--t", cfg.t, "times, comma separated")->delimiter(',');
    sub->add_option("--tol", cfg.tol, "quadrature tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
    sub->add_option("--format", cfg.format, "csv or json");
    if (grid) {
        sub->add_option("--x-min", cfg.x_min, "left end of the x grid");
        sub->add_option("--x-max", cfg.x_max, "right end of the x grid");
        sub->add_option("--samples", cfg.samples, "number of grid points (>= 2)");
    }
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

nlohmann::json to_json(const CheckResult& r) {
    nlohmann::json cases = nlohmann::json::array();
    for (const auto& c : r.cases) {
        cases.push_back({{"label", c.label},
                         {"relation", relation_symbol(c.relation)},
                         {"lhs", number_json(c.lhs)},
                         {"rhs", number_json(c.rhs)},
                         {"tolerance", number_json(c.tolerance)},
                         {"pass", c.pass}});
    }
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : r.params) params[k] = number_json(v);
    return {{"check", r.check},
            {"title", r.title},
            {"params", params},
            {"lhs", number_json(r.lhs)},
            {"rhs", number_json(r.rhs)},
            {"tolerance", number_json(r.tolerance)},
            {"pass", r.pass},
            {"note", r.note},
            {"cases", cases}};
}

nlohmann::json to_json(const uniqueness::ProbeReport& r) {
    nlohmann::json psi = nlohmann::json::array();
    for (const auto& row : r.psi) psi.push_back({{"y", row.y}, {"psi", number_json(row.value)}});
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : r.params) params[k] = number_json(v);
    return {{"space", r.space},
            {"params", params},
            {"t", r.t},
            {"norm", r.norm},
            {"slope", r.slope},
            {"r_squared", r.r_squared},
            {"classification", r.classification},
            {"rate_exponent", r.rate_exponent},
            {"psi_x", r.psi_x},
            {"psi_t", r.psi_t},
            {"psi", psi},
            {"hypothesis", r.hypothesis},
            {"hypothesis_holds", r.hypothesis_holds}};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"heat equation with distributional initial data", "heatdist"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* evolve_cmd = app.add_subcommand("evolve", "tabulate u(x, t) on an x grid");
    add_common(evolve_cmd, cfg, true);
    auto* norm_cmd = app.add_subcommand("norm", "norm of f and of u_t");
    add_common(norm_cmd, cfg, false);
    norm_cmd->add_option("--sigma", cfg.sigma, "weight exponent for weighted data (default tau)");
    auto* converge_cmd = app.add_subcommand("converge", "||u_t - f|| along a t sequence");
    add_common(converge_cmd, cfg, false);
    converge_cmd->add_option("--sigma", cfg.sigma, "weight exponent for weighted data (default tau/2)");
    auto* verify_cmd = app.add_subcommand("verify", "run verification checks");
    verify_cmd->add_option("checks", cfg.checks, "check ids");
    verify_cmd->add_flag("--all", cfg.all, "run every registered check");
    verify_cmd->add_option("--param", cfg.params, "check parameter name=value (repeatable)");
    verify_cmd->add_option("--out", cfg.out, "output file (default: stdout)");
    cfg.format = "json";
    verify_cmd->add_option("--format", cfg.format, "json (default) or csv");
    auto* list_cmd = app.add_subcommand("list", "list catalog keys and check ids");
    auto* eulerian_cmd = app.add_subcommand("eulerian", "table of Eulerian numbers A(n, l)");
    eulerian_cmd->add_option("--n", cfg.n, "largest n");
    eulerian_cmd->add_option("--out", cfg.out, "output file (default: stdout)");
    eulerian_cmd->add_option("--format", cfg.format, "csv or json");
    auto* probe_cmd = app.add_subcommand("probe", "uniqueness probe of a trajectory");
    add_common(probe_cmd, cfg, false);
    probe_cmd->add_option("--trajectory", cfg.trajectory, "evolve (default) or delta-prime");
    probe_cmd->add_option("--sigma", cfg.sigma, "weighted probes: sigma (default tau/2)");
    probe_cmd->add_option("--rho", cfg.rho, "weighted probes: rho (default tau/4)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitConfig;
    }
    // csv is the default everywhere except verify
    if (!verify_cmd->parsed() && verify_cmd->count("--format") == 0 && app.get_subcommands().front() != verify_cmd) {
        bool explicit_format = false;
        for (auto* sub : app.get_subcommands()) {
            if (sub->get_option_no_throw("--format") != nullptr && sub->count("--format") > 0) explicit_format = true;
        }
        if (!explicit_format) cfg.format = "csv";
    }

    try {
        if (evolve_cmd->parsed()) return cmd_evolve(cfg, out, err);
        if (norm_cmd->parsed()) return cmd_norm(cfg, out, err);
        if (converge_cmd->parsed()) return cmd_converge(cfg, out, err);
        if (verify_cmd->parsed()) return cmd_verify(cfg, out, err);
        if (eulerian_cmd->parsed()) return cmd_eulerian(cfg, out, err);
        if (probe_cmd->parsed()) return cmd_probe(cfg, out, err);
        if (list_cmd->parsed()) {
            out << "catalog:";
            for (const auto& k : catalog::catalog_list()) out << " " << k;
            out << "\nchecks:";
            for (const auto& c : registered_checks()) out << " " << c.id;
            out << "\n";
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidArgument& e) {
        err << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitConfig;
}

}  // namespace heatdist::cli
