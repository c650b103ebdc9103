// Command-line front end: radial extremal profiles, phase-plane orbits,
// Picard iteration, resistance tables, and orbit sweeps, serialized as CSV or
// JSON for downstream plotting.

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stratres/errors.hpp"
#include "stratres/phase.hpp"
#include "stratres/picard.hpp"
#include "stratres/profile.hpp"
#include "stratres/resistance.hpp"
#include "stratres/serialize.hpp"
#include "stratres/slope_law.hpp"
#include "stratres/solver.hpp"

namespace {

using nlohmann::json;
using namespace stratres;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

void emit_error_line(const std::string& code, const std::string& message) {
    json err;
    err["error"]["code"] = code;
    err["error"]["message"] = message;
    std::cerr << err.dump() << "\n";
}

// Flags override the optional JSON config file: a config value is applied
// only when the flag was not given on the command line.
class ConfigFile {
public:
    void load(const std::string& path) {
        std::ifstream in(path);
        if (!in) fail(ErrorCode::BadConfig, "cannot open config file " + path);
        try {
            in >> data_;
        } catch (const json::parse_error& e) {
            fail(ErrorCode::BadConfig, std::string("config file parse error: ") + e.what());
        }
        if (!data_.is_object()) fail(ErrorCode::BadConfig, "config file must hold a JSON object");
    }

    template <class T>
    void apply(const CLI::App& cmd, const std::string& flag, const char* key, T& value) const {
        const CLI::Option* opt = cmd.get_option_no_throw(flag);
        if (opt && opt->count() > 0) return; // flag given: it wins
        if (auto it = data_.find(key); it != data_.end()) value = it->get<T>();
    }

private:
    json data_ = json::object();
};

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    write_atomic(path, content);
}

json profile_summary(const RadialProfile& prof) {
    json j;
    j["provenance"] = to_string(prof.provenance);
    j["samples"] = prof.samples.size();
    j["r_first"] = prof.samples.front().r;
    j["r_last"] = prof.samples.back().r;
    if (prof.terminal) {
        j["r_max"] = prof.terminal->r_M;
        j["u_end"] = prof.terminal->u_M;
        j["slope_end"] = prof.terminal->p_M;
    }
    return j;
}

json orbit_summary(const Orbit& orbit) {
    json j;
    j["class"] = to_string(classify_orbit(orbit));
    j["orientation"] = orbit.orientation;
    j["events"] = json::array();
    for (const OrbitEvent& e : orbit.events)
        j["events"].push_back({{"kind", to_string(e.kind)},
                               {"tau", e.tau},
                               {"x", e.state.x},
                               {"theta", e.state.theta},
                               {"y", e.state.y}});
    if (orbit.terminal)
        j["terminal"] = {{"kind", to_string(orbit.terminal->kind)},
                         {"tau", orbit.terminal->tau},
                         {"x", orbit.terminal->state.x},
                         {"theta", orbit.terminal->state.theta},
                         {"y", orbit.terminal->state.y}};
    return j;
}

std::string json_report(const std::string& command, const json& inputs, const json& results,
                        const json& diagnostics) {
    json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["results"] = results;
    j["diagnostics"] = diagnostics;
    return j.dump(2) + "\n";
}

struct CommonOut {
    std::string output_path;
    std::string format = "csv";
    long seed = 0;
};

void add_common(CLI::App* cmd, CommonOut& out) {
    cmd->add_option("-o,--output", out.output_path, "Output file (stdout when omitted)");
    cmd->add_option("--format", out.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", out.seed, "Seed recorded with the run");
}

// ---------------------------------------------------------------- solve ----

int run_solve(const CLI::App& cmd, const ConfigFile& cfgfile, CommonOut& out,
              std::string& method, SolveConfig& scfg, double& r0, double& p0, bool& offset) {
    cfgfile.apply(cmd, "--method", "method", method);
    cfgfile.apply(cmd, "--eps0", "eps0", scfg.eps0);
    cfgfile.apply(cmd, "--abs-tol", "abs_tol", scfg.abs_tol);
    cfgfile.apply(cmd, "--rel-tol", "rel_tol", scfg.rel_tol);
    cfgfile.apply(cmd, "--max-step", "max_step", scfg.max_step);
    cfgfile.apply(cmd, "--event-tol", "event_tol", scfg.event_tol);
    cfgfile.apply(cmd, "--series-radius", "series_radius", scfg.series_radius);
    cfgfile.apply(cmd, "--format", "format", out.format);

    if (method != "direct" && method != "parametric")
        fail(ErrorCode::BadConfig, "solve: method must be direct or parametric");
    scfg.method = (method == "direct") ? SolveMethod::Direct : SolveMethod::Parametric;
    scfg.validate();

    SolveDiagnostics diag;
    RadialProfile prof = offset ? solve_from_offset(r0, p0, scfg, &diag)
                                : solve_from_axis(scfg, &diag);

    if (out.format == "csv") {
        write_output(out.output_path, profile_to_csv(prof));
    } else {
        json inputs = {{"method", method},       {"eps0", scfg.eps0},
                       {"abs_tol", scfg.abs_tol}, {"rel_tol", scfg.rel_tol},
                       {"max_step", scfg.max_step}, {"event_tol", scfg.event_tol},
                       {"seed", out.seed}};
        if (offset) {
            inputs["r0"] = r0;
            inputs["p0"] = p0;
        }
        json diagnostics = {{"steps", diag.n_steps},
                            {"rejected_steps", diag.n_rejected},
                            {"stop_forward", diag.stop_forward}};
        if (!diag.stop_backward.empty()) diagnostics["stop_backward"] = diag.stop_backward;
        write_output(out.output_path,
                     json_report("solve", inputs, profile_summary(prof), diagnostics));
    }
    return kExitOk;
}

// ---------------------------------------------------------------- phase ----

void apply_orbit_config(const CLI::App& cmd, const ConfigFile& cfgfile, OrbitConfig& ocfg) {
    cfgfile.apply(cmd, "--tau-max", "tau_max", ocfg.tau_max);
    cfgfile.apply(cmd, "--abs-tol", "abs_tol", ocfg.abs_tol);
    cfgfile.apply(cmd, "--rel-tol", "rel_tol", ocfg.rel_tol);
    cfgfile.apply(cmd, "--max-step", "max_step", ocfg.max_step);
    cfgfile.apply(cmd, "--event-tol", "event_tol", ocfg.event_tol);
    cfgfile.apply(cmd, "--closure-tol", "closure_tol", ocfg.closure_tol);
}

int run_phase(CommonOut& out, double x0, double theta0, OrbitConfig& ocfg) {
    ocfg.validate();
    const Orbit orbit = integrate_orbit({x0, theta0, 0.0}, ocfg);
    if (out.format == "csv") {
        write_output(out.output_path, orbit_to_csv(orbit));
    } else {
        json inputs = {{"x0", x0},
                       {"theta0", theta0},
                       {"tau_max", ocfg.tau_max},
                       {"closure_tol", ocfg.closure_tol},
                       {"stop_at_critical", ocfg.stop_at_critical},
                       {"seed", out.seed}};
        json diagnostics = {{"steps", orbit.n_steps}, {"rejected_steps", orbit.n_rejected}};
        write_output(out.output_path,
                     json_report("phase", inputs, orbit_summary(orbit), diagnostics));
    }
    return kExitOk;
}

// --------------------------------------------------------------- picard ----

int run_picard(CommonOut& out, PicardConfig& pcfg) {
    pcfg.validate();
    const RadiusBound bound = choose_radius(pcfg.epsilon);
    const PicardReport report = picard_solve(pcfg);
    if (out.format == "csv") {
        write_output(out.output_path, profile_to_csv(report.final));
    } else {
        json inputs = {{"epsilon", pcfg.epsilon},   {"R", pcfg.resolved_R()},
                       {"quad_nodes", pcfg.quad_nodes}, {"panels", pcfg.panels},
                       {"max_iter", pcfg.max_iter}, {"conv_tol", pcfg.conv_tol},
                       {"seed", out.seed}};
        json results = profile_summary(report.final);
        results["iterations"] = report.iterations;
        results["observed_ratio"] = report.observed_ratio;
        results["radius_bound"] = {{"R", bound.R},
                                   {"m2", bound.m2},
                                   {"L_finv", bound.L_finv},
                                   {"L_g", bound.L_g}};
        json diagnostics = {{"diffs", report.diffs}};
        write_output(out.output_path, json_report("picard", inputs, results, diagnostics));
    }
    return kExitOk;
}

// ----------------------------------------------------------- resistance ----

int run_resistance(CommonOut& out, const std::vector<double>& cone_args,
                   const std::string& profile_path, double inner, double outer,
                   double demo_radius, std::vector<double>& demo_lambdas) {
    if (!cone_args.empty()) {
        const ResistanceResult res = resistance_cone(cone_args[0], cone_args[1]);
        std::string csv = "lambda,E,err\n" + format_double(cone_args[0]) + ","
                        + format_double(res.value) + "," + format_double(res.error_est) + "\n";
        if (out.format == "csv") {
            write_output(out.output_path, csv);
        } else {
            json inputs = {{"lambda", cone_args[0]}, {"R", cone_args[1]}, {"seed", out.seed}};
            json results = {{"E", res.value}, {"error_est", res.error_est}};
            write_output(out.output_path, json_report("resistance", inputs, results, json::object()));
        }
        return kExitOk;
    }
    if (demo_radius > 0.0) {
        const auto rows = nonexistence_demo(demo_radius, demo_lambdas);
        if (out.format == "csv") {
            write_output(out.output_path, demo_table_to_csv(rows));
        } else {
            json inputs = {{"R", demo_radius}, {"lambdas", demo_lambdas}, {"seed", out.seed}};
            json table = json::array();
            for (const auto& row : rows)
                table.push_back({{"lambda", row.lambda},
                                 {"E", row.resistance},
                                 {"err", row.error_est}});
            write_output(out.output_path,
                         json_report("resistance", inputs, {{"table", table}}, json::object()));
        }
        return kExitOk;
    }
    if (!profile_path.empty()) {
        std::ifstream in(profile_path);
        if (!in) fail(ErrorCode::BadParams, "cannot open profile " + profile_path);
        std::stringstream ss;
        ss << in.rdbuf();
        const RadialProfile prof = profile_from_csv(ss.str());
        ResistanceDomain domain{inner, outer > 0.0 ? outer : prof.r_back()};
        const ResistanceResult res = resistance_radial(prof, domain);
        if (out.format == "csv") {
            std::string csv = "inner,outer,E,err\n" + format_double(domain.inner) + ","
                            + format_double(domain.outer) + "," + format_double(res.value) + ","
                            + format_double(res.error_est) + "\n";
            write_output(out.output_path, csv);
        } else {
            json inputs = {{"profile", profile_path},
                           {"inner", domain.inner},
                           {"outer", domain.outer},
                           {"seed", out.seed}};
            json results = {{"E", res.value}, {"error_est", res.error_est}};
            write_output(out.output_path, json_report("resistance", inputs, results, json::object()));
        }
        return kExitOk;
    }
    fail(ErrorCode::BadParams, "resistance: provide --cone, --demo, or --profile");
}

// ---------------------------------------------------------------- sweep ----

struct SweepRow {
    std::size_t index = 0;
    PhaseState start;
    std::string orbit_class;
    std::string event;
    double tau_end = 0.0;
    PhaseState end;
    std::string error;
};

int run_sweep(CommonOut& out, const std::vector<std::string>& starts_spec,
              const std::vector<std::string>& starts_rp, OrbitConfig& ocfg) {
    ocfg.validate();
    std::vector<PhaseState> starts;
    auto parse_pair = [](const std::string& spec, const char* what) {
        const auto comma = spec.find(',');
        if (comma == std::string::npos)
            fail(ErrorCode::BadParams, std::string(what) + ": expected 'a,b', got '" + spec + "'");
        try {
            return std::pair<double, double>{std::stod(spec.substr(0, comma)),
                                             std::stod(spec.substr(comma + 1))};
        } catch (const std::exception&) {
            fail(ErrorCode::BadParams, std::string(what) + ": bad numbers in '" + spec + "'");
        }
    };
    for (const std::string& s : starts_spec) {
        const auto [x, theta] = parse_pair(s, "--start");
        starts.push_back({x, theta, 0.0});
    }
    for (const std::string& s : starts_rp) {
        const auto [r0, p0] = parse_pair(s, "--start-slope");
        starts.push_back({r0, std::atan(p0), 0.0});
    }
    if (starts.empty()) fail(ErrorCode::BadParams, "sweep: no start points given");

    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        SweepRow row;
        row.index = i;
        row.start = starts[i];
        try {
            const Orbit orbit = integrate_orbit(starts[i], ocfg);
            row.orbit_class = to_string(classify_orbit(orbit));
            if (orbit.terminal) {
                row.event = to_string(orbit.terminal->kind);
                row.tau_end = orbit.terminal->tau;
                row.end = orbit.terminal->state;
            }
        } catch (const Error& e) {
            row.error = to_string(e.code());
        }
        rows.push_back(row);
    }

    if (out.format == "csv") {
        std::string csv = "index,x0,theta0,class,event,tau_end,x_end,theta_end,y_end,error\n";
        for (const SweepRow& row : rows) {
            csv += std::to_string(row.index) + ',' + format_double(row.start.x) + ','
                 + format_double(row.start.theta) + ',' + row.orbit_class + ',' + row.event + ','
                 + format_double(row.tau_end) + ',' + format_double(row.end.x) + ','
                 + format_double(row.end.theta) + ',' + format_double(row.end.y) + ','
                 + row.error + '\n';
        }
        write_output(out.output_path, csv);
    } else {
        json inputs = {{"tau_max", ocfg.tau_max},
                       {"closure_tol", ocfg.closure_tol},
                       {"stop_at_critical", ocfg.stop_at_critical},
                       {"seed", out.seed}};
        json table = json::array();
        for (const SweepRow& row : rows) {
            json r = {{"index", row.index},
                      {"x0", row.start.x},
                      {"theta0", row.start.theta},
                      {"class", row.orbit_class},
                      {"event", row.event},
                      {"tau_end", row.tau_end},
                      {"x_end", row.end.x},
                      {"theta_end", row.end.theta},
                      {"y_end", row.end.y}};
            if (!row.error.empty()) r["error"] = row.error;
            table.push_back(r);
        }
        write_output(out.output_path,
                     json_report("sweep", inputs, {{"rows", table}}, json::object()));
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radial minimal-resistance profiles in an exponentially stratified medium"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; flags take precedence");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Integrate the radial profile equation");
    std::string method = "parametric";
    SolveConfig scfg;
    double r0 = 0.0, p0 = 0.0;
    CommonOut solve_out;
    solve_cmd->add_option("--method", method, "direct or parametric");
    solve_cmd->add_option("--eps0", scfg.eps0, "Series handoff radius");
    solve_cmd->add_option("--abs-tol", scfg.abs_tol, "Integrator absolute tolerance");
    solve_cmd->add_option("--rel-tol", scfg.rel_tol, "Integrator relative tolerance");
    solve_cmd->add_option("--max-step", scfg.max_step, "Integrator maximum step");
    solve_cmd->add_option("--event-tol", scfg.event_tol, "Event location tolerance");
    solve_cmd->add_option("--series-radius", scfg.series_radius, "Series validity radius");
    auto* r0_opt = solve_cmd->add_option("--r0", r0, "Offset start radius (with --p0)");
    auto* p0_opt = solve_cmd->add_option("--p0", p0, "Offset start slope (with --r0)");
    r0_opt->needs(p0_opt);
    p0_opt->needs(r0_opt);
    add_common(solve_cmd, solve_out);

    // phase
    auto* phase_cmd = app.add_subcommand("phase", "Integrate one phase-plane orbit");
    double x0 = 1.0, theta0 = 0.0;
    OrbitConfig ocfg;
    CommonOut phase_out;
    phase_cmd->add_option("--x0", x0, "Start x")->required();
    phase_cmd->add_option("--theta0", theta0, "Start theta (radians)")->required();
    phase_cmd->add_option("--tau-max", ocfg.tau_max, "Clock budget");
    phase_cmd->add_option("--abs-tol", ocfg.abs_tol, "Integrator absolute tolerance");
    phase_cmd->add_option("--rel-tol", ocfg.rel_tol, "Integrator relative tolerance");
    phase_cmd->add_option("--max-step", ocfg.max_step, "Integrator maximum step");
    phase_cmd->add_option("--event-tol", ocfg.event_tol, "Event location tolerance");
    phase_cmd->add_option("--closure-tol", ocfg.closure_tol, "Closure return distance");
    phase_cmd->add_flag("--stop-at-critical", ocfg.stop_at_critical,
                        "Stop at the theta = pi/6 crossing");
    add_common(phase_cmd, phase_out);

    // picard
    auto* picard_cmd = app.add_subcommand("picard", "Fixed-point iteration on [0, R]");
    PicardConfig pcfg;
    CommonOut picard_out;
    picard_cmd->add_option("--epsilon", pcfg.epsilon, "Ball radius in the C1 norm");
    picard_cmd->add_option("--radius", pcfg.R, "Interval radius override (<= admissible bound)");
    picard_cmd->add_option("--quad-nodes", pcfg.quad_nodes, "Gauss nodes per panel");
    picard_cmd->add_option("--panels", pcfg.panels, "Panel count");
    picard_cmd->add_option("--max-iter", pcfg.max_iter, "Iteration cap");
    picard_cmd->add_option("--conv-tol", pcfg.conv_tol, "C1 convergence tolerance");
    add_common(picard_cmd, picard_out);

    // resistance
    auto* res_cmd = app.add_subcommand("resistance", "Resistance functional evaluation");
    std::vector<double> cone_args;
    std::string profile_path;
    double inner = 0.0, outer = 0.0, demo_radius = 0.0;
    std::vector<double> demo_lambdas{1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0};
    CommonOut res_out;
    res_cmd->add_option("--cone", cone_args, "Cone slope and disk radius: LAMBDA R")
        ->expected(2);
    res_cmd->add_option("--profile", profile_path, "Profile CSV to integrate");
    res_cmd->add_option("--inner", inner, "Annulus inner radius");
    res_cmd->add_option("--outer", outer, "Annulus outer radius (default: profile end)");
    res_cmd->add_option("--demo", demo_radius, "Cone-family demo on the disk of this radius");
    res_cmd->add_option("--lambdas", demo_lambdas, "Demo lambda values (increasing)");
    add_common(res_cmd, res_out);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Classify orbits from a list of starts");
    std::vector<std::string> starts_spec, starts_rp;
    OrbitConfig sweep_ocfg;
    CommonOut sweep_out;
    sweep_cmd->add_option("--start", starts_spec, "Start 'x,theta' (repeatable)");
    sweep_cmd->add_option("--start-slope", starts_rp, "Start 'r0,p0' (repeatable)");
    sweep_cmd->add_option("--tau-max", sweep_ocfg.tau_max, "Clock budget per orbit");
    sweep_cmd->add_option("--closure-tol", sweep_ocfg.closure_tol, "Closure return distance");
    sweep_cmd->add_flag("--stop-at-critical", sweep_ocfg.stop_at_critical,
                        "Stop rows at the theta = pi/6 crossing");
    add_common(sweep_cmd, sweep_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        emit_error_line("BadConfig", e.what());
        return kExitValidation;
    }

    try {
        ConfigFile cfgfile;
        if (!config_path.empty()) cfgfile.load(config_path);

        if (solve_cmd->parsed()) {
            bool offset = r0_opt->count() > 0;
            return run_solve(*solve_cmd, cfgfile, solve_out, method, scfg, r0, p0, offset);
        }
        if (phase_cmd->parsed()) {
            apply_orbit_config(*phase_cmd, cfgfile, ocfg);
            return run_phase(phase_out, x0, theta0, ocfg);
        }
        if (picard_cmd->parsed()) {
            cfgfile.apply(*picard_cmd, "--epsilon", "epsilon", pcfg.epsilon);
            cfgfile.apply(*picard_cmd, "--radius", "radius", pcfg.R);
            cfgfile.apply(*picard_cmd, "--quad-nodes", "quad_nodes", pcfg.quad_nodes);
            cfgfile.apply(*picard_cmd, "--panels", "panels", pcfg.panels);
            cfgfile.apply(*picard_cmd, "--max-iter", "max_iter", pcfg.max_iter);
            cfgfile.apply(*picard_cmd, "--conv-tol", "conv_tol", pcfg.conv_tol);
            return run_picard(picard_out, pcfg);
        }
        if (res_cmd->parsed())
            return run_resistance(res_out, cone_args, profile_path, inner, outer, demo_radius,
                                  demo_lambdas);
        if (sweep_cmd->parsed()) {
            apply_orbit_config(*sweep_cmd, cfgfile, sweep_ocfg);
            return run_sweep(sweep_out, starts_spec, starts_rp, sweep_ocfg);
        }
        emit_error_line("BadConfig", "no subcommand given");
        return kExitValidation;
    } catch (const Error& e) {
        emit_error_line(to_string(e.code()), e.what());
        return is_validation_error(e.code()) ? kExitValidation : kExitNumerical;
    } catch (const std::exception& e) {
        emit_error_line("Internal", e.what());
        return kExitNumerical;
    }
}
