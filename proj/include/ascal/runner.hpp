#ifndef ASCAL_RUNNER_HPP
#define ASCAL_RUNNER_HPP

#include "ascal/config.hpp"
#include "ascal/output.hpp"

namespace ascal {

// Exit codes shared by the CLI: 0 ok, 1 expectation unmet, 2 config error,
// 3 unexpected overflow, 4 unexpected blow-up / resolution loss.
enum ExitCode : int {
    kOk = 0,
    kExpectationUnmet = 1,
    kConfigError = 2,
    kOverflow = 3,
    kBlowup = 4,
};

struct SimulateResult {
    TrajectoryRecord record;
    int exit_code = kOk;
};

// One run: builds the setup, runs, writes CSV/JSON (+ optional plots), maps
// the termination against the expected outcome.
SimulateResult simulate(const RunConfig& cfg);

struct EventProbRow {
    EventSpec spec;
    double closed_form = 0;
    McEventResult mc;
    double dt = 0, horizon = 0;
    bool bridge = true;
};

EventProbRow event_prob_run(const EventSpec& spec, std::uint64_t n_paths, double dt,
                            double horizon, bool bridge, std::uint64_t seed);
std::string event_prob_csv(const std::vector<EventProbRow>& rows);

struct BlowupDemoResult {
    TrajectoryRecord record;
    double slope = 0;            // least-squares d/dt of the second moment
    double expected_rate = 0;    // virial prediction at nu = 0
    double rel_err = 1;
    int window_points = 0;
};

// Deterministic attractive-Newtonian run; fits the second-moment rate over
// the window before the boundary warning (and before any termination flag).
BlowupDemoResult blowup_demo(const RunConfig& cfg);

struct StratDemoResult {
    TrajectoryRecord ito;
    TrajectoryRecord strat;
    double strat_zero_mode_drift = 0;
    bool strat_final_ge_initial = false;
    bool ito_monotone = false;
};

// Same datum, same path: Ito-transformed vs Stratonovich side by side.
StratDemoResult strat_demo(const RunConfig& cfg);

struct CalibrationResult {
    double threshold_scale = 0;  // largest tested scale with monotone audit
    double lo = 0, hi = 0;
    int evaluations = 0;
    bool lo_monotone = false, hi_monotone = false;
};

// Bisects datum.scale between a monotone low end and a failing high end;
// reports the empirical smallness threshold for this seed/path.
CalibrationResult calibrate_smallness(const RunConfig& cfg, double lo, double hi, int iters);

struct ConvergenceResult {
    std::vector<double> dts;
    std::vector<double> diffs_etd1;    // final-time L2 distances between levels
    std::vector<double> diffs_etdrk2;
    double order_etd1 = 0;
    double order_etdrk2 = 0;
};

// Pathwise dt-refinement study: one seed, dyadic bridge refinements, both
// schemes; observed order from the last Richardson pair.
ConvergenceResult convergence_study(const RunConfig& cfg, int levels);

struct SweepResult {
    std::vector<std::string> keys;
    std::vector<std::vector<std::string>> values;  // per run, aligned with keys
    std::vector<RunSummary> summaries;
    std::string aggregate_csv;
};

// Cartesian product of override values; runs fan out concurrently, the
// aggregate table is sorted by key before writing.
SweepResult sweep(const RunConfig& base,
                  const std::vector<std::pair<std::string, std::vector<std::string>>>& axes,
                  const std::string& out_dir);

}  // namespace ascal

#endif
