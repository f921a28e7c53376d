#include "ascal/runner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

using namespace ascal;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string preset;
    std::vector<std::string> overrides;
    std::string out_stem;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "config file (dotted key = value lines)");
    cmd->add_option("--preset", o.preset,
                    "preset name (pks_blowup, sqg_random, aggregation_random, event_bench, "
                    "region_scan)");
    cmd->add_option("--set", o.overrides, "override key=value (repeatable)")
        ->take_all();
    cmd->add_option("--out", o.out_stem, "output stem; writes <stem>.csv and <stem>.json");
}

RunConfig resolve_config(const CommonOpts& o) {
    RunConfig cfg;
    if (!o.preset.empty()) cfg = RunConfig::preset(o.preset);
    if (!o.config_path.empty()) {
        RunConfig file = RunConfig::from_file(o.config_path);
        for (const auto& [k, v] : file.kv) cfg.set(k, v);
    }
    for (const auto& ov : o.overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw ContractViolation("--set expects key=value, got " + ov);
        cfg.set(ov.substr(0, eq), ov.substr(eq + 1));
    }
    if (!o.out_stem.empty()) {
        if (!cfg.has("output.csv")) cfg.set("output.csv", o.out_stem + ".csv");
        if (!cfg.has("output.json")) cfg.set("output.json", o.out_stem + ".json");
    }
    return cfg;
}

int error_record(const std::string& kind, const std::string& message, int code) {
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["message"] = message;
    j["exit_code"] = code;
    std::cerr << j.dump() << "\n";
    return code;
}

ScanAxis parse_axis(const std::string& text) {
    // param:lo:hi:count
    ScanAxis ax;
    std::stringstream ss(text);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 4) throw ContractViolation("axis must be param:lo:hi:count, got " + text);
    ax.param = parts[0];
    ax.lo = std::stod(parts[1]);
    ax.hi = std::stod(parts[2]);
    ax.count = std::stoi(parts[3]);
    return ax;
}

nlohmann::ordered_json report_json(const ConditionReport& rep) {
    nlohmann::ordered_json j;
    j["admissible"] = rep.admissible;
    nlohmann::ordered_json conds = nlohmann::ordered_json::array();
    for (const auto& c : rep.conditions) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["inequality"] = c.inequality;
        cj["holds"] = c.holds;
        if (c.boundary) cj["boundary"] = true;
        if (c.witness_p) cj["witness_p"] = *c.witness_p;
        conds.push_back(cj);
    }
    j["conditions"] = conds;
    if (rep.min_sigma_s) j["min_sigma_s"] = *rep.min_sigma_s;
    if (rep.max_sigma_s) j["max_sigma_s"] = *rep.max_sigma_s;
    if (rep.min_kappa_s) j["min_kappa_s"] = *rep.min_kappa_s;
    if (rep.kappa_threshold) j["kappa_threshold"] = *rep.kappa_threshold;
    if (!rep.notes.empty()) j["notes"] = rep.notes;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudospectral active scalar simulator with random Gevrey diffusion"};
    app.require_subcommand(1);

    CommonOpts sim_o, sweep_o, blow_o, strat_o, cal_o, conv_o;
    auto* sim = app.add_subcommand("simulate", "run one simulation");
    add_common(sim, sim_o);

    auto* sw = app.add_subcommand("sweep", "run a parameter grid of simulations");
    add_common(sw, sweep_o);
    std::vector<std::string> sweep_axes;
    std::string sweep_dir = "sweep_out";
    sw->add_option("--axis", sweep_axes, "key=v1,v2,... (repeatable)")->take_all();
    sw->add_option("--dir", sweep_dir, "output directory");

    auto* ev = app.add_subcommand("event-prob", "closed form vs Monte Carlo event probability");
    CommonOpts ev_o;
    add_common(ev, ev_o);

    auto* adm = app.add_subcommand("admissible", "parameter feasibility check or region scan");
    double a_d = 2, a_gamma = 1, a_s = 1, a_r = 1;
    double a_sigma = std::numeric_limits<double>::quiet_NaN();
    double a_kappa = std::numeric_limits<double>::quiet_NaN();
    double a_q = std::numeric_limits<double>::quiet_NaN();
    std::string adm_check = "lwp", adm_out;
    std::vector<std::string> adm_scan;
    adm->add_option("-d", a_d, "dimension");
    adm->add_option("--gamma", a_gamma, "interaction exponent");
    adm->add_option("--s", a_s, "noise regularity s");
    adm->add_option("--r", a_r, "integrability exponent (inf allowed)");
    adm->add_option("--sigma", a_sigma, "Sobolev index sigma (lwp)");
    adm->add_option("--kappa", a_kappa, "Sobolev index kappa (monotonicity)");
    adm->add_option("--q", a_q, "auxiliary exponent q");
    adm->add_option("--check", adm_check, "lwp | monotonicity");
    adm->add_option("--scan", adm_scan, "two axes param:lo:hi:count (repeatable)")->take_all();
    adm->add_option("--out", adm_out, "output stem");

    auto* blow = app.add_subcommand("blowup-demo", "deterministic attractive run + virial rate");
    add_common(blow, blow_o);

    auto* strat = app.add_subcommand("strat-demo", "Ito-transformed vs Stratonovich comparison");
    add_common(strat, strat_o);

    auto* cal = app.add_subcommand("calibrate-smallness", "bisect datum scale for monotonicity");
    add_common(cal, cal_o);
    double cal_lo = 0.1, cal_hi = 10.0;
    int cal_iters = 12;
    cal->add_option("--lo", cal_lo, "low scale (expected monotone)");
    cal->add_option("--hi", cal_hi, "high scale (expected failing)");
    cal->add_option("--iters", cal_iters, "bisection iterations");

    auto* conv = app.add_subcommand("convergence", "pathwise dt-refinement study");
    add_common(conv, conv_o);
    int conv_levels = 4;
    conv->add_option("--levels", conv_levels, "number of dyadic levels");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            const SimulateResult r = simulate(resolve_config(sim_o));
            std::cout << "termination=" << r.record.summary.termination
                      << " t_final=" << r.record.summary.t_final << "\n";
            return r.exit_code;
        }
        if (sw->parsed()) {
            RunConfig base = resolve_config(sweep_o);
            std::vector<std::pair<std::string, std::vector<std::string>>> axes;
            for (const auto& ax : sweep_axes) {
                const auto eq = ax.find('=');
                if (eq == std::string::npos)
                    throw ContractViolation("--axis expects key=v1,v2,...");
                std::vector<std::string> vals;
                std::stringstream ss(ax.substr(eq + 1));
                std::string v;
                while (std::getline(ss, v, ',')) vals.push_back(v);
                axes.emplace_back(ax.substr(0, eq), vals);
            }
            const SweepResult r = sweep(base, axes, sweep_dir);
            atomic_write(sweep_dir + "/aggregate.csv", r.aggregate_csv);
            std::cout << "runs=" << r.summaries.size() << " dir=" << sweep_dir << "\n";
            return kOk;
        }
        if (ev->parsed()) {
            RunConfig cfg = resolve_config(ev_o);
            if (cfg.kv.empty()) cfg = RunConfig::preset("event_bench");
            EventSpec spec{cfg.get_double("event.alpha", 1.0), cfg.get_double("event.beta", 1.0),
                           cfg.get_double("event.nu", 1.0)};
            const auto row = event_prob_run(
                spec, static_cast<std::uint64_t>(cfg.get_int("event.n_paths", 100000)),
                cfg.get_double("event.dt", 1e-3), cfg.get_double("event.horizon", 20.0),
                cfg.get_bool("event.bridge", true),
                static_cast<std::uint64_t>(cfg.get_int("seed", 1)));
            const std::string csv = event_prob_csv({row});
            std::cout << csv;
            const std::string stem = ev_o.out_stem;
            if (!stem.empty()) {
                atomic_write(stem + ".csv", csv);
                nlohmann::ordered_json j;
                j["closed_form"] = row.closed_form;
                j["mc_estimate"] = row.mc.estimate;
                j["std_error"] = row.mc.std_error;
                j["truncation_bound"] = row.mc.truncation_bound;
                j["n_paths"] = row.mc.n_paths;
                nlohmann::ordered_json cfgj;
                for (const auto& [k, v] : cfg.kv) cfgj[k] = v;
                j["config"] = cfgj;
                atomic_write(stem + ".json", j.dump(2) + "\n");
            }
            return kOk;
        }
        if (adm->parsed()) {
            AdmissibilityQuery q;
            q.d = static_cast<int>(a_d);
            q.gamma = a_gamma;
            q.s = a_s;
            q.r = a_r;
            if (!std::isnan(a_sigma)) q.sigma = a_sigma;
            if (!std::isnan(a_kappa)) q.kappa = a_kappa;
            if (!std::isnan(a_q)) q.q = a_q;
            if (!adm_scan.empty()) {
                if (adm_scan.size() != 2)
                    throw ContractViolation("--scan needs exactly two axes");
                const ScanResult r = scan_region(q, parse_axis(adm_scan[0]),
                                                 parse_axis(adm_scan[1]),
                                                 adm_check == "monotonicity");
                const std::string csv = scan_csv(r);
                if (!adm_out.empty())
                    atomic_write(adm_out + ".csv", csv);
                else
                    std::cout << csv;
                return kOk;
            }
            const ConditionReport rep =
                adm_check == "monotonicity" ? check_monotonicity(q) : check_lwp(q);
            const auto j = report_json(rep);
            std::cout << j.dump(2) << "\n";
            if (!adm_out.empty()) atomic_write(adm_out + ".json", j.dump(2) + "\n");
            return kOk;
        }
        if (blow->parsed()) {
            RunConfig cfg = resolve_config(blow_o);
            if (cfg.kv.size() <= 2) {  // only output paths given
                RunConfig p = RunConfig::preset("pks_blowup");
                for (const auto& [k, v] : cfg.kv) p.set(k, v);
                cfg = p;
            }
            const BlowupDemoResult r = blowup_demo(cfg);
            nlohmann::ordered_json j;
            j["slope"] = r.slope;
            j["expected_rate"] = r.expected_rate;
            j["rel_err"] = r.rel_err;
            j["window_points"] = r.window_points;
            j["termination"] = r.record.summary.termination;
            std::cout << j.dump(2) << "\n";
            if (!blow_o.out_stem.empty()) {
                const SimulationSetup setup = cfg.setup();
                atomic_write(blow_o.out_stem + ".csv", trajectory_csv(setup, r.record));
                nlohmann::ordered_json cfgj;
                for (const auto& [k, v] : cfg.kv) cfgj[k] = v;
                j["config"] = cfgj;
                atomic_write(blow_o.out_stem + ".json", j.dump(2) + "\n");
            }
            return kOk;
        }
        if (strat->parsed()) {
            RunConfig cfg = resolve_config(strat_o);
            const StratDemoResult r = strat_demo(cfg);
            nlohmann::ordered_json j;
            j["strat_zero_mode_max_rel_drift"] = r.strat_zero_mode_drift;
            j["strat_final_ge_initial"] = r.strat_final_ge_initial;
            j["ito_monotone"] = r.ito_monotone;
            j["ito_termination"] = r.ito.summary.termination;
            j["strat_termination"] = r.strat.summary.termination;
            std::cout << j.dump(2) << "\n";
            if (!strat_o.out_stem.empty()) {
                RunConfig ic = cfg;
                ic.set("integrator.mode", "ito");
                RunConfig sc = cfg;
                sc.set("integrator.mode", "stratonovich");
                sc.set("output.audit", "off");
                atomic_write(strat_o.out_stem + ".ito.csv",
                             trajectory_csv(ic.setup(), r.ito));
                atomic_write(strat_o.out_stem + ".strat.csv",
                             trajectory_csv(sc.setup(), r.strat));
                nlohmann::ordered_json cfgj;
                for (const auto& [k, v] : cfg.kv) cfgj[k] = v;
                j["config"] = cfgj;
                atomic_write(strat_o.out_stem + ".json", j.dump(2) + "\n");
            }
            return kOk;
        }
        if (cal->parsed()) {
            RunConfig cfg = resolve_config(cal_o);
            const CalibrationResult r = calibrate_smallness(cfg, cal_lo, cal_hi, cal_iters);
            nlohmann::ordered_json j;
            j["threshold_scale"] = r.threshold_scale;
            j["lo"] = r.lo;
            j["hi"] = r.hi;
            j["lo_monotone"] = r.lo_monotone;
            j["hi_monotone"] = r.hi_monotone;
            j["evaluations"] = r.evaluations;
            std::cout << j.dump(2) << "\n";
            if (!cal_o.out_stem.empty()) atomic_write(cal_o.out_stem + ".json", j.dump(2) + "\n");
            return kOk;
        }
        if (conv->parsed()) {
            RunConfig cfg = resolve_config(conv_o);
            const ConvergenceResult r = convergence_study(cfg, conv_levels);
            nlohmann::ordered_json j;
            j["dts"] = r.dts;
            j["diffs_etd1"] = r.diffs_etd1;
            j["diffs_etdrk2"] = r.diffs_etdrk2;
            j["order_etd1"] = r.order_etd1;
            j["order_etdrk2"] = r.order_etdrk2;
            std::cout << j.dump(2) << "\n";
            if (!conv_o.out_stem.empty()) atomic_write(conv_o.out_stem + ".json", j.dump(2) + "\n");
            return kOk;
        }
    } catch (const ContractViolation& e) {
        return error_record("config", e.what(), kConfigError);
    } catch (const AmplificationOverflow& e) {
        return error_record("overflow", e.what(), kOverflow);
    } catch (const std::exception& e) {
        return error_record("internal", e.what(), kConfigError);
    }
    return kOk;
}
