// ionread: simulate and analyze state-dependent-fluorescence qubit readout.
//
// Subcommands: rates, error-curve, mc, calibrate, ramsey-fit, crosstalk, sweep.
// Exit codes: 0 success, 2 usage/schema error, 3 data error, 4 numerical
// non-convergence.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "ionread/config.hpp"
#include "ionread/csv.hpp"
#include "ionread/discriminate.hpp"
#include "ionread/mcsim.hpp"
#include "ionread/report.hpp"
#include "ionread/svg.hpp"

namespace fs = std::filesystem;
using namespace ionread;
using report::Json;
using report::Report;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    bool emit_svg = false;
    bool mc_overlay = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "run configuration file");
    cmd->add_option("--out", opts.out_dir, "output directory (default .)");
    cmd->add_option("--seed", opts.seed, "Monte Carlo base seed");
    cmd->add_option("--trials", opts.trials, "Monte Carlo trial count");
    cmd->add_flag("--svg", opts.emit_svg, "emit SVG plots");
    cmd->add_flag("--mc-overlay", opts.mc_overlay, "overlay Monte Carlo points");
}

config::RunConfig load_config(const CommonOpts& opts) {
    config::RunConfig cfg =
        opts.config_path.empty() ? config::RunConfig{} : config::load(opts.config_path);
    if (opts.seed) cfg.mc_seed = *opts.seed;
    if (opts.trials) cfg.mc_trials = *opts.trials;
    return cfg;
}

Json rates_json(const RateSet& rates) {
    return {{"r_o_per_s", rates.r_o},
            {"detected_bright_cps", rates.detected_bright},
            {"r_d_per_s", rates.r_d},
            {"r_b_per_s", rates.r_b},
            {"r_bg_cps", rates.r_bg}};
}

Json config_echo(const config::RunConfig& cfg) {
    return {{"rates_mode", cfg.rates_mode == config::RatesMode::measured ? "measured" : "formula"},
            {"eps_sys", cfg.eps_sys},
            {"prep", {{"p_dark", cfg.prep.p_prep_dark}, {"p_bright", cfg.prep.p_prep_bright}}},
            {"policy",
             {{"kind", cfg.policy.kind == PolicyKind::first_photon_stop
                           ? "first_photon_stop"
                           : "fixed_window_threshold"},
              {"window_s", cfg.policy.window},
              {"threshold", cfg.policy.threshold}}},
            {"prior_bright", cfg.prior_bright},
            {"mc", {{"trials", cfg.mc_trials}, {"seed", cfg.mc_seed}}}};
}

void write_report(const Report& rep, const CommonOpts& opts) {
    fs::create_directories(opts.out_dir);
    const auto path = fs::path(opts.out_dir) / "report.json";
    rep.write(path.string());
    std::cout << rep.serialize();
}

int cmd_rates(const CommonOpts& opts) {
    const auto cfg = load_config(opts);
    const auto rates = cfg.rates();

    Report rep;
    rep.seed = cfg.mc_seed;
    rep.inputs = config_echo(cfg);
    rep.results["rates"] = rates_json(rates);
    if (cfg.rates_mode == config::RatesMode::formula) {
        rep.results["saturation_param"] = saturation_param(cfg.beam_intensity, cfg.constants);
        rep.warnings.push_back(
            "pump rates from the detuning-free formulas are approximate; measured "
            "values differ at the 20% level");
    }
    write_report(rep, opts);
    return 0;
}

int cmd_error_curve(const CommonOpts& opts) {
    const auto cfg = load_config(opts);
    const auto rates = cfg.rates();
    const auto grid = cfg.window_grid();
    if (grid.empty()) throw config::SchemaError("empty window grid");

    const auto curve = stats::error_curve(rates, cfg.prep, grid, cfg.prior_bright);

    csv::Table table;
    table.columns = {"window_s", "dark_error", "bright_error", "avg_error", "avg_time_s"};
    for (const auto& pt : curve)
        table.rows.push_back({pt.window, pt.dark_error, pt.bright_error, pt.avg_error,
                              pt.avg_time});

    Report rep;
    rep.seed = cfg.mc_seed;
    rep.inputs = config_echo(cfg);
    rep.inputs["rates"] = rates_json(rates);

    Json curve_json = Json::array();
    for (const auto& pt : curve)
        curve_json.push_back({{"window_s", pt.window},
                              {"dark_error", pt.dark_error},
                              {"bright_error", pt.bright_error},
                              {"avg_error", pt.avg_error},
                              {"avg_time_s", pt.avg_time}});
    rep.results["curve"] = curve_json;

    std::vector<stats::ErrorPoint> mc_points;
    if (opts.mc_overlay) {
        for (double w : grid) {
            Policy policy{cfg.policy.kind, w, cfg.policy.threshold};
            mc_points.push_back(discriminate::evaluate(
                policy, rates, cfg.prep,
                discriminate::MonteCarloBackend{cfg.mc_trials, cfg.mc_seed}));
        }
        Json mc_json = Json::array();
        for (const auto& pt : mc_points)
            mc_json.push_back({{"window_s", pt.window},
                               {"dark_error", pt.dark_error},
                               {"bright_error", pt.bright_error},
                               {"avg_error", pt.avg_error},
                               {"avg_time_s", pt.avg_time}});
        rep.results["mc_overlay"] = mc_json;
    }

    fs::create_directories(opts.out_dir);
    csv::write_table((fs::path(opts.out_dir) / "error_curve.csv").string(), table);

    if (opts.emit_svg) {
        svg::Plot plot;
        plot.title = "Detection error vs window";
        plot.x_label = "window (s)";
        plot.y_label = "error probability";
        plot.log_x = true;
        plot.log_y = true;
        svg::Series dark{"dark error", "#d62728"}, bright{"bright error", "#1f77b4"},
            avg{"average", "#2ca02c"};
        for (const auto& pt : curve) {
            dark.xs.push_back(pt.window); dark.ys.push_back(pt.dark_error);
            bright.xs.push_back(pt.window); bright.ys.push_back(pt.bright_error);
            avg.xs.push_back(pt.window); avg.ys.push_back(pt.avg_error);
        }
        plot.series = {dark, bright, avg};
        if (!mc_points.empty()) {
            svg::Series mc{"MC average", "#9467bd"};
            mc.markers = true;
            for (const auto& pt : mc_points) {
                mc.xs.push_back(pt.window); mc.ys.push_back(pt.avg_error);
            }
            plot.series.push_back(mc);
        }
        plot.write((fs::path(opts.out_dir) / "error_curve.svg").string());

        svg::Plot tplot;
        tplot.title = "Average error vs average detection time";
        tplot.x_label = "average detection time (s)";
        tplot.y_label = "average error";
        tplot.log_x = true;
        tplot.log_y = true;
        svg::Series tseries{"analytic", "#2ca02c"};
        for (const auto& pt : curve) {
            tseries.xs.push_back(pt.avg_time); tseries.ys.push_back(pt.avg_error);
        }
        tplot.series = {tseries};
        tplot.write((fs::path(opts.out_dir) / "error_vs_time.svg").string());
    }

    write_report(rep, opts);
    return 0;
}

int cmd_mc(const CommonOpts& opts, const std::string& dump_path) {
    const auto cfg = load_config(opts);
    const auto rates = cfg.rates();

    const auto point = discriminate::evaluate(
        cfg.policy, rates, cfg.prep,
        discriminate::MonteCarloBackend{cfg.mc_trials, cfg.mc_seed});

    Report rep;
    rep.seed = cfg.mc_seed;
    rep.inputs = config_echo(cfg);
    rep.inputs["rates"] = rates_json(rates);
    rep.results["mc"] = {{"window_s", point.window},
                         {"dark_error", point.dark_error},
                         {"bright_error", point.bright_error},
                         {"avg_error", point.avg_error},
                         {"avg_time_s", point.avg_time}};

    if (!dump_path.empty()) {
        csv::Table table;
        table.columns = {"trial", "prepared_state", "n_photons", "first_arrival_ns",
                         "stop_time_ns", "outcome"};
        mcsim::TrialConfig trial_cfg{rates, mcsim::IonState::dark, cfg.policy.window,
                                     cfg.timing_resolution, cfg.prep};
        for (int pass = 0; pass < 2; ++pass) {
            trial_cfg.initial_state = pass == 0 ? mcsim::IonState::dark
                                                : mcsim::IonState::bright;
            const std::uint64_t seed =
                cfg.mc_seed + (pass == 0 ? 0 : 0x9E3779B97F4A7C15ULL);
            mcsim::for_each_trace(
                trial_cfg, std::max<std::uint64_t>(1, cfg.mc_trials / 2), seed,
                [&](const mcsim::PhotonTrace& trace) {
                    const auto outcome =
                        discriminate::classify(trace, cfg.policy.window, cfg.policy);
                    const double first = trace.timestamps.empty()
                                             ? -1.0
                                             : trace.timestamps.front() * 1e9;
                    table.rows.push_back(
                        {static_cast<double>(trace.trial_index),
                         trace.prepared_state == mcsim::IonState::bright ? 1.0 : 0.0,
                         static_cast<double>(trace.timestamps.size()), first,
                         outcome.stop_time * 1e9,
                         outcome.decision == mcsim::IonState::bright ? 1.0 : 0.0});
                });
        }
        fs::create_directories(opts.out_dir);
        csv::write_table((fs::path(opts.out_dir) / dump_path).string(), table);
    }

    write_report(rep, opts);
    return 0;
}

Json fit_json(const calibrate::SaturationFit& fit) {
    return {{"eps_sys", fit.eps_sys},
            {"eps_sys_error", fit.eps_sys_error},
            {"i_sat_w_m2", fit.i_sat_used},
            {"i_sat_error_w_m2", fit.i_sat_error},
            {"residual_norm", fit.residual_norm},
            {"converged", fit.converged}};
}

int cmd_calibrate(const CommonOpts& opts, const std::string& csv_path,
                  const std::string& free_pmt_path, const std::string& fiber_pmt_path,
                  bool fit_i_sat, double pmt_qe, double eps_pg, double eps_fiber,
                  double eps_fiber_err) {
    const auto cfg = load_config(opts);

    Report rep;
    rep.seed = cfg.mc_seed;
    rep.inputs = {{"csv", csv_path},
                  {"fit_i_sat", fit_i_sat},
                  {"pmt_qe", pmt_qe},
                  {"eps_pg", eps_pg},
                  {"eps_fiber", eps_fiber}};

    const auto points = csv::load_calibration(csv_path);
    const auto fit = calibrate::fit_saturation(points, cfg.constants, fit_i_sat);
    rep.results["saturation_fit"] = fit_json(fit);

    if (!free_pmt_path.empty() && !fiber_pmt_path.empty()) {
        const auto free_fit = calibrate::fit_saturation(
            csv::load_calibration(free_pmt_path), cfg.constants, fit_i_sat);
        const auto fiber_fit = calibrate::fit_saturation(
            csv::load_calibration(fiber_pmt_path), cfg.constants, fit_i_sat);
        rep.results["free_pmt_fit"] = fit_json(free_fit);
        rep.results["fiber_pmt_fit"] = fit_json(fiber_fit);

        const auto breakdown = calibrate::decompose(
            {free_fit.eps_sys, free_fit.eps_sys_error},
            {fiber_fit.eps_sys, fiber_fit.eps_sys_error},
            {fit.eps_sys, fit.eps_sys_error}, eps_pg, {eps_fiber, eps_fiber_err}, pmt_qe);
        rep.results["breakdown"] = {
            {"eps_pg", {{"value", breakdown.eps_pg.value}, {"error", breakdown.eps_pg.error}}},
            {"eps_fc", {{"value", breakdown.eps_fc.value}, {"error", breakdown.eps_fc.error}}},
            {"eps_fiber",
             {{"value", breakdown.eps_fiber.value}, {"error", breakdown.eps_fiber.error}}},
            {"eps_det",
             {{"value", breakdown.eps_det.value}, {"error", breakdown.eps_det.error}}}};
    } else if (!free_pmt_path.empty() || !fiber_pmt_path.empty()) {
        rep.warnings.push_back(
            "breakdown needs both --free-pmt and --fiber-pmt datasets; fit only");
    } else {
        rep.warnings.push_back("single dataset: efficiency breakdown omitted");
    }

    if (opts.emit_svg) {
        svg::Plot plot;
        plot.title = "Saturation fit";
        plot.x_label = "intensity (W/m2)";
        plot.y_label = "rate (cps)";
        svg::Series data{"data", "#1f77b4"};
        data.markers = true;
        double i_max = 0.0;
        for (const auto& pt : points) {
            data.xs.push_back(pt.intensity);
            data.ys.push_back(pt.rate);
            i_max = std::max(i_max, pt.intensity);
        }
        svg::Series curve{"fit", "#d62728"};
        for (int i = 0; i <= 200; ++i) {
            const double x = i_max * i / 200.0;
            const double u = x / fit.i_sat_used;
            curve.xs.push_back(x);
            curve.ys.push_back(fit.eps_sys * cfg.constants.gamma / 2.0 * u / (1.0 + u));
        }
        plot.series = {data, curve};
        fs::create_directories(opts.out_dir);
        plot.write((fs::path(opts.out_dir) / "saturation_fit.svg").string());
    }

    write_report(rep, opts);
    return 0;
}

Json coherence_json(const crosstalk::CoherenceFit& fit) {
    return {{"amplitude", fit.amplitude},
            {"amplitude_error", fit.amplitude_error},
            {"coherence_time_s", fit.coherence_time},
            {"coherence_time_error_s", fit.coherence_time_error},
            {"residual_norm", fit.residual_norm},
            {"converged", fit.converged}};
}

int cmd_ramsey_fit(const CommonOpts& opts, const std::string& csv_path) {
    const auto cfg = load_config(opts);
    const auto fit = crosstalk::fit_coherence(csv::load_visibility(csv_path));

    Report rep;
    rep.seed = cfg.mc_seed;
    rep.inputs = {{"csv", csv_path}};
    rep.results["coherence_fit"] = coherence_json(fit);
    write_report(rep, opts);
    return 0;
}

int cmd_crosstalk(const CommonOpts& opts, const std::string& csv_path, double distance,
                  std::optional<double> avg_time_opt) {
    const auto cfg = load_config(opts);
    const auto rates = cfg.rates();
    const auto fit = crosstalk::fit_coherence(csv::load_visibility(csv_path));

    const double avg_time =
        avg_time_opt ? *avg_time_opt
                     : stats::avg_stop_time(rates, cfg.policy.window, cfg.prior_bright);
    const auto budget = crosstalk::measurement_crosstalk(fit.coherence_time, avg_time);
    const auto plan = crosstalk::shuttle_time(distance);
    const double scatter_rate = rates.r_o;
    const double absorption = crosstalk::absorption_crosstalk(
        distance, scatter_rate, avg_time, cfg.constants.wavelength);

    Report rep;
    rep.seed = cfg.mc_seed;
    rep.inputs = {{"csv", csv_path},
                  {"distance_m", distance},
                  {"avg_detect_time_s", avg_time},
                  {"scatter_rate_per_s", scatter_rate}};
    rep.results["coherence_fit"] = coherence_json(fit);
    rep.results["budget"] = {
        {"per_measurement", budget.per_measurement},
        {"n_star", budget.n_star},
        {"per_measurement_gaussian", budget.per_measurement_gaussian},
        {"definition", "linear exposure budget t_avg / alpha; the Gaussian-decay "
                       "marginal rate is reported alongside"}};
    rep.results["shuttle_plan"] = {{"distance_m", plan.distance},
                                   {"step_size_m", plan.step_size},
                                   {"step_period_s", plan.step_period},
                                   {"n_steps", plan.n_steps},
                                   {"total_time_s", plan.total_time}};
    rep.results["absorption_crosstalk"] = absorption;
    write_report(rep, opts);
    return 0;
}

int cmd_sweep(const CommonOpts& opts, double i_min_mw_cm2, double i_max_mw_cm2,
              int points) {
    if (points < 2 || i_min_mw_cm2 <= 0 || i_max_mw_cm2 <= i_min_mw_cm2)
        throw config::SchemaError("sweep needs 0 < i-min < i-max and points >= 2");
    auto cfg = load_config(opts);
    cfg.rates_mode = config::RatesMode::formula;

    csv::Table table;
    table.columns = {"intensity_mw_cm2", "saturation_param", "r_o_per_s",
                     "detected_bright_cps", "r_d_per_s", "r_b_per_s",
                     "dark_error", "bright_error", "avg_error", "avg_time_s"};
    for (int i = 0; i < points; ++i) {
        const double i_mw = i_min_mw_cm2 +
                            (i_max_mw_cm2 - i_min_mw_cm2) * i / (points - 1);
        cfg.beam_intensity = i_mw * units::mW_per_cm2;
        const auto rates = cfg.rates();
        const auto pt =
            stats::error_curve(rates, cfg.prep, {cfg.policy.window}, cfg.prior_bright)
                .front();
        table.rows.push_back({i_mw, saturation_param(cfg.beam_intensity, cfg.constants),
                              rates.r_o, rates.detected_bright, rates.r_d, rates.r_b,
                              pt.dark_error, pt.bright_error, pt.avg_error, pt.avg_time});
    }

    fs::create_directories(opts.out_dir);
    csv::write_table((fs::path(opts.out_dir) / "sweep.csv").string(), table);

    Report rep;
    rep.seed = cfg.mc_seed;
    rep.inputs = config_echo(cfg);
    rep.inputs["sweep"] = {{"i_min_mw_cm2", i_min_mw_cm2},
                           {"i_max_mw_cm2", i_max_mw_cm2},
                           {"points", points}};
    rep.results["csv"] = "sweep.csv";
    rep.warnings.push_back(
        "formula-derived pump rates are approximate; see the rates command notes");
    write_report(rep, opts);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trapped-ion fluorescence readout simulator and analysis toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto* rates_cmd = app.add_subcommand("rates", "derive the scattering-rate set");
    add_common(rates_cmd, opts);

    auto* curve_cmd =
        app.add_subcommand("error-curve", "detection error vs window, analytic + MC");
    add_common(curve_cmd, opts);

    auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo policy evaluation");
    add_common(mc_cmd, opts);
    std::string dump_path;
    mc_cmd->add_option("--dump-traces", dump_path, "write a per-trial trace CSV");

    auto* cal_cmd = app.add_subcommand("calibrate", "saturation fit and efficiency chain");
    add_common(cal_cmd, opts);
    std::string cal_csv, free_pmt_csv, fiber_pmt_csv;
    bool fit_i_sat = false;
    double pmt_qe = 0.32, eps_pg = 0.10, eps_fiber = 0.731, eps_fiber_err = 0.008;
    cal_cmd->add_option("csv", cal_csv, "calibration dataset (SNSPD when decomposing)")
        ->required();
    cal_cmd->add_option("--free-pmt", free_pmt_csv, "free-space PMT dataset");
    cal_cmd->add_option("--fiber-pmt", fiber_pmt_csv, "fiber PMT dataset");
    cal_cmd->add_flag("--fit-isat", fit_i_sat, "float I_sat as a fit parameter");
    cal_cmd->add_option("--pmt-qe", pmt_qe, "PMT quantum efficiency (default 0.32)");
    cal_cmd->add_option("--eps-pg", eps_pg, "lens collection efficiency (default 0.10)");
    cal_cmd->add_option("--eps-fiber", eps_fiber, "fiber transmission (default 0.731)");
    cal_cmd->add_option("--eps-fiber-err", eps_fiber_err, "fiber transmission error");

    auto* ramsey_cmd = app.add_subcommand("ramsey-fit", "Gaussian coherence-decay fit");
    add_common(ramsey_cmd, opts);
    std::string ramsey_csv;
    ramsey_cmd->add_option("csv", ramsey_csv, "visibility dataset")->required();

    auto* xtalk_cmd =
        app.add_subcommand("crosstalk", "coherence fit, crosstalk budget, shuttle plan");
    add_common(xtalk_cmd, opts);
    std::string xtalk_csv;
    double distance_um = 370.0;
    std::optional<double> avg_time_us;
    xtalk_cmd->add_option("csv", xtalk_csv, "visibility dataset")->required();
    xtalk_cmd->add_option("--distance-um", distance_um, "qubit separation (default 370)");
    xtalk_cmd->add_option("--avg-time-us", avg_time_us,
                          "average detection time; derived from the policy when omitted");

    auto* sweep_cmd = app.add_subcommand("sweep", "intensity sweep of rates and errors");
    add_common(sweep_cmd, opts);
    double i_min = 10.0, i_max = 200.0;
    int sweep_points = 20;
    sweep_cmd->add_option("--i-min", i_min, "minimum intensity, mW/cm2");
    sweep_cmd->add_option("--i-max", i_max, "maximum intensity, mW/cm2");
    sweep_cmd->add_option("--points", sweep_points, "grid size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (rates_cmd->parsed()) return cmd_rates(opts);
        if (curve_cmd->parsed()) return cmd_error_curve(opts);
        if (mc_cmd->parsed()) return cmd_mc(opts, dump_path);
        if (cal_cmd->parsed())
            return cmd_calibrate(opts, cal_csv, free_pmt_csv, fiber_pmt_csv, fit_i_sat,
                                 pmt_qe, eps_pg, eps_fiber, eps_fiber_err);
        if (ramsey_cmd->parsed()) return cmd_ramsey_fit(opts, ramsey_csv);
        if (xtalk_cmd->parsed()) {
            std::optional<double> avg_time_s;
            if (avg_time_us) avg_time_s = *avg_time_us * units::us;
            return cmd_crosstalk(opts, xtalk_csv, distance_um * units::um, avg_time_s);
        }
        if (sweep_cmd->parsed()) return cmd_sweep(opts, i_min, i_max, sweep_points);
    } catch (const config::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const units::UnitError& e) {
        std::cerr << "unit error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const csv::ParseError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const DomainError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
