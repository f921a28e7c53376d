#include "ascal/runner.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace ascal {

namespace {

int map_exit(const std::string& termination, const std::string& expect) {
    const bool is_blowup = termination == "blowup" || termination == "resolution_loss";
    if (expect == "blowup") return is_blowup ? kOk : kExpectationUnmet;
    if (expect == "overflow") return termination == "overflow" ? kOk : kExpectationUnmet;
    if (termination == "overflow") return kOverflow;
    if (is_blowup) return kBlowup;
    return kOk;
}

}  // namespace

SimulateResult simulate(const RunConfig& cfg) {
    SimulateResult res;
    const SimulationSetup setup = cfg.setup();
    const OutputOptions out = cfg.output();
    res.record = run_simulation(setup);
    if (!out.csv_path.empty()) atomic_write(out.csv_path, trajectory_csv(setup, res.record));
    if (!out.json_path.empty())
        atomic_write(out.json_path, trajectory_json(cfg, setup, res.record));
    if (out.plot && !out.csv_path.empty()) write_plots(out.csv_path, setup, res.record);
    res.exit_code = map_exit(res.record.summary.termination, out.expect);
    return res;
}

EventProbRow event_prob_run(const EventSpec& spec, std::uint64_t n_paths, double dt,
                            double horizon, bool bridge, std::uint64_t seed) {
    EventProbRow row;
    row.spec = spec;
    row.closed_form = event_probability(spec);
    row.mc = mc_event_probability(spec, n_paths, dt, horizon, bridge, seed);
    row.dt = dt;
    row.horizon = horizon;
    row.bridge = bridge;
    return row;
}

std::string event_prob_csv(const std::vector<EventProbRow>& rows) {
    std::string out =
        "alpha,beta,nu,closed_form,mc_estimate,std_error,truncation_bound,n_paths,dt,horizon,"
        "bridge\n";
    for (const auto& r : rows) {
        out += format_double(r.spec.alpha) + "," + format_double(r.spec.beta) + "," +
               format_double(r.spec.nu) + "," + format_double(r.closed_form) + "," +
               format_double(r.mc.estimate) + "," + format_double(r.mc.std_error) + "," +
               format_double(r.mc.truncation_bound) + "," + std::to_string(r.mc.n_paths) + "," +
               format_double(r.dt) + "," + format_double(r.horizon) + "," +
               (r.bridge ? "1" : "0") + "\n";
    }
    return out;
}

BlowupDemoResult blowup_demo(const RunConfig& cfg) {
    BlowupDemoResult res;
    RunConfig c = cfg;
    c.set("output.second_moment", "on");
    const SimulationSetup setup = c.setup();
    res.record = run_simulation(setup);

    // least-squares slope over the clean window
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& row : res.record.rows) {
        if (row.boundary_warning || row.blowup || row.overflow || row.resolution_loss) break;
        sx += row.t;
        sy += row.second_moment;
        sxx += row.t * row.t;
        sxy += row.t * row.second_moment;
        ++n;
    }
    res.window_points = n;
    if (n >= 2) {
        const double denom = n * sxx - sx * sx;
        if (denom != 0) res.slope = (n * sxy - sx * sy) / denom;
    }
    res.expected_rate = virial_rate_expected(setup.datum.mass * setup.datum.scale, 0.0);
    if (res.expected_rate != 0)
        res.rel_err = std::abs(res.slope - res.expected_rate) / std::abs(res.expected_rate);
    return res;
}

StratDemoResult strat_demo(const RunConfig& cfg) {
    StratDemoResult res;
    RunConfig ito_cfg = cfg;
    ito_cfg.set("integrator.mode", "ito");
    res.ito = run_simulation(ito_cfg.setup());

    RunConfig strat_cfg = cfg;
    strat_cfg.set("integrator.mode", "stratonovich");
    strat_cfg.set("output.audit", "off");  // audit is an ito-mode construct
    res.strat = run_simulation(strat_cfg.setup());

    res.strat_zero_mode_drift = res.strat.summary.strat_zero_mode_max_rel_drift;
    res.strat_final_ge_initial =
        res.strat.summary.audited_final >= res.strat.summary.audited_initial;
    res.ito_monotone = res.ito.summary.audited_monotone;
    return res;
}

CalibrationResult calibrate_smallness(const RunConfig& cfg, double lo, double hi, int iters) {
    CalibrationResult res;
    res.lo = lo;
    res.hi = hi;
    auto monotone_at = [&](double scale) {
        RunConfig c = cfg;
        c.set("datum.scale", format_double(scale));
        const SimulationSetup setup = c.setup();
        const TrajectoryRecord rec = run_simulation(setup);
        ++res.evaluations;
        return rec.summary.termination == "horizon" && rec.summary.audited_monotone;
    };
    res.lo_monotone = monotone_at(lo);
    res.hi_monotone = monotone_at(hi);
    if (!res.lo_monotone || res.hi_monotone) {
        // bracket does not straddle the threshold; report the endpoint
        res.threshold_scale = res.hi_monotone ? hi : lo;
        return res;
    }
    double a = lo, b = hi;
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (a + b);
        if (monotone_at(mid))
            a = mid;
        else
            b = mid;
    }
    res.threshold_scale = a;
    return res;
}

ConvergenceResult convergence_study(const RunConfig& cfg, int levels) {
    ConvergenceResult res;
    const SimulationSetup base = cfg.setup();
    const double dt0 = base.integrator.dt;
    BrownianPath path = sample_path(dt0, base.integrator.horizon, base.seed);

    auto run_scheme = [&](Scheme scheme) {
        std::vector<SpectralField> finals;
        BrownianPath p = path;
        for (int level = 0; level < levels; ++level) {
            SimulationSetup s = base;
            s.integrator.scheme = scheme;
            s.integrator.dt = p.dt;
            s.path_override = p;
            s.enable_audit = false;
            finals.push_back(run_simulation(s).final_state);
            if (level + 1 < levels) p = refine_path(p);
        }
        std::vector<double> diffs;
        for (std::size_t i = 0; i + 1 < finals.size(); ++i) {
            real_t acc = 0;
            for (std::size_t k = 0; k < finals[i].coeffs.size(); ++k)
                acc += std::norm(finals[i].coeffs[k] - finals[i + 1].coeffs[k]);
            diffs.push_back(static_cast<double>(std::sqrt(acc)));
        }
        return diffs;
    };

    for (int level = 0; level < levels; ++level) res.dts.push_back(dt0 / std::pow(2.0, level));
    res.diffs_etd1 = run_scheme(Scheme::etd1);
    res.diffs_etdrk2 = run_scheme(Scheme::etdrk2);
    // least-squares slope of log2(diff) against log2(dt) over all pairs
    auto order_of = [&](const std::vector<double>& d) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] <= 0) continue;
            const double x = std::log2(res.dts[i]);
            const double y = std::log2(d[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
        if (n < 2) return 0.0;
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    res.order_etd1 = order_of(res.diffs_etd1);
    res.order_etdrk2 = order_of(res.diffs_etdrk2);
    return res;
}

SweepResult sweep(const RunConfig& base,
                  const std::vector<std::pair<std::string, std::vector<std::string>>>& axes,
                  const std::string& out_dir) {
    SweepResult res;
    for (const auto& [k, _] : axes) res.keys.push_back(k);

    std::vector<std::vector<std::string>> combos{{}};
    for (const auto& [_, vals] : axes) {
        std::vector<std::vector<std::string>> next;
        for (const auto& c : combos)
            for (const auto& v : vals) {
                auto c2 = c;
                c2.push_back(v);
                next.push_back(std::move(c2));
            }
        combos = std::move(next);
    }

    res.values = combos;
    res.summaries.resize(combos.size());
    auto run_one = [&](std::size_t i) {
        RunConfig c = base;
        for (std::size_t a = 0; a < res.keys.size(); ++a) c.set(res.keys[a], combos[i][a]);
        const std::string stem = out_dir + "/run" + std::to_string(i);
        c.set("output.csv", stem + ".csv");
        c.set("output.json", stem + ".json");
        res.summaries[i] = simulate(c).record.summary;
    };

    std::vector<std::future<void>> jobs;
    for (std::size_t i = 0; i < combos.size(); ++i)
        jobs.push_back(std::async(std::launch::async, run_one, i));
    for (auto& j : jobs) j.get();

    // aggregate sorted by key tuple
    std::vector<std::size_t> order(combos.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return combos[a] < combos[b]; });
    std::string csv;
    for (const auto& k : res.keys) csv += k + ",";
    csv += "termination,audited_monotone,audited_final,mass_law_max_rel_err\n";
    for (std::size_t i : order) {
        for (const auto& v : combos[i]) csv += v + ",";
        const RunSummary& s = res.summaries[i];
        csv += s.termination + "," + (s.audited_monotone ? "1" : "0") + "," +
               format_double(s.audited_final) + "," + format_double(s.mass_law_max_rel_err) +
               "\n";
    }
    res.aggregate_csv = csv;
    return res;
}

}  // namespace ascal
