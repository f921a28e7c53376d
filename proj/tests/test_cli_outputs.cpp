#include "ascal/runner.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace ascal;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string temp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "ascal_test_out";
    std::filesystem::create_directories(dir);
    return dir.string();
}

}  // namespace

TEST_CASE("csv schema: documented header and golden first column set") {
    RunConfig cfg = RunConfig::preset("sqg_random");
    cfg.set("integrator.horizon", "0.1");
    const SimulationSetup setup = cfg.setup();
    const TrajectoryRecord rec = run_simulation(setup);
    const std::string csv = trajectory_csv(setup, rec);
    const std::string header = csv.substr(0, csv.find('\n'));
    CHECK(header ==
          "t,W_t,in_event_so_far,mass_mu,mass_theta,l2_theta,G_a0_k2_r1_phi,audit_energy,"
          "audit_derivative,audit_dissipation,audit_nonlinear,overflow,blowup,resolution_loss");
    // rows strictly increasing in t
    std::stringstream ss(csv);
    std::string line;
    std::getline(ss, line);
    double prev = -1;
    int rows = 0;
    while (std::getline(ss, line)) {
        const double t = std::stod(line.substr(0, line.find(',')));
        CHECK(t > prev);
        prev = t;
        ++rows;
    }
    CHECK(rows == static_cast<int>(rec.rows.size()));
}

TEST_CASE("doubles round-trip through the 17-digit serialization") {
    for (double v : {1.0 / 3, 6.283185307179586, 1e-300, 0.0, -0.1234567890123456789}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("simulate writes byte-identical outputs for identical config+seed") {
    const std::string dir = temp_dir();
    RunConfig cfg = RunConfig::preset("aggregation_random");
    cfg.set("integrator.horizon", "0.05");
    cfg.set("output.csv", dir + "/a.csv");
    cfg.set("output.json", dir + "/a.json");
    CHECK(simulate(cfg).exit_code == kOk);
    const std::string csv1 = slurp(dir + "/a.csv");
    const std::string json1 = slurp(dir + "/a.json");
    cfg.set("output.csv", dir + "/b.csv");
    cfg.set("output.json", dir + "/b.json");
    CHECK(simulate(cfg).exit_code == kOk);
    CHECK(slurp(dir + "/b.csv") == csv1);
    // json embeds the config; only the output paths differ
    CHECK(json1.find("\"termination\"") != std::string::npos);
    CHECK(json1.find("\"config\"") != std::string::npos);
    CHECK(json1.find("aggregation") == std::string::npos);  // no preset leakage, resolved keys only
}

TEST_CASE("exit code mapping honors expectations") {
    const std::string dir = temp_dir();
    RunConfig blow;
    blow.set("grid.d", "2");
    blow.set("grid.n", "24");
    blow.set("kernel.preset", "newtonian2d");
    blow.set("kernel.sign", "attractive");
    blow.set("coupling.type", "gradient");
    blow.set("integrator.mode", "deterministic");
    blow.set("integrator.scheme", "rk4");
    blow.set("integrator.dt", "0.002");
    blow.set("integrator.horizon", "5.0");
    blow.set("datum.preset", "gaussian");
    blow.set("datum.mass", "0.8");
    blow.set("datum.width", "0.35");
    blow.set("output.stride", "100");
    blow.set("output.csv", dir + "/blow.csv");

    RunConfig expecting = blow;
    expecting.set("expect", "blowup");
    CHECK(simulate(expecting).exit_code == kOk);
    CHECK(simulate(blow).exit_code == kBlowup);

    RunConfig bad = blow;
    bad.set("integrator.scheme", "etd1");  // invalid for deterministic mode
    CHECK_THROWS_AS((void)simulate(bad), ContractViolation);
}

TEST_CASE("svg plot is emitted per series and is self-contained") {
    const std::string dir = temp_dir();
    RunConfig cfg = RunConfig::preset("sqg_random");
    cfg.set("integrator.horizon", "0.05");
    cfg.set("output.csv", dir + "/p.csv");
    cfg.set("output.plot", "on");
    CHECK(simulate(cfg).exit_code == kOk);
    const std::string svg = slurp(dir + "/p.csv.mass_mu.svg");
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("event-prob csv schema is stable") {
    const auto row = event_prob_run({1.0, 1.0, 1.0}, 500, 1e-2, 5.0, true, 7);
    const std::string csv = event_prob_csv({row});
    CHECK(csv.rfind("alpha,beta,nu,closed_form,mc_estimate,std_error,truncation_bound,n_paths,"
                    "dt,horizon,bridge\n",
                    0) == 0);
}

TEST_CASE("sweep aggregates runs sorted by key") {
    const std::string dir = temp_dir() + "/sweep";
    std::filesystem::create_directories(dir);
    RunConfig cfg = RunConfig::preset("sqg_random");
    cfg.set("integrator.horizon", "0.02");
    cfg.set("output.stride", "10");
    const SweepResult r =
        sweep(cfg, {{"noise.nu", {"0.3", "0.2"}}, {"datum.seed", {"1", "2"}}}, dir);
    CHECK(r.summaries.size() == 4);
    const std::string agg = r.aggregate_csv;
    // sorted by key tuple: 0.2 rows precede 0.3 rows
    CHECK(agg.find("0.2,1") < agg.find("0.2,2"));
    CHECK(agg.find("0.2,2") < agg.find("0.3,1"));
    for (int i = 0; i < 4; ++i)
        CHECK(std::filesystem::exists(dir + "/run" + std::to_string(i) + ".csv"));
}

TEST_CASE("config parsing errors and bad values are reported as config errors") {
    CHECK_THROWS_AS((void)RunConfig::from_text("grid.n 32"), ContractViolation);
    RunConfig cfg = RunConfig::preset("sqg_random");
    cfg.set("noise.s", "0.3");  // outside (1/2, 1]
    CHECK_THROWS_AS((void)cfg.setup(), ContractViolation);
    RunConfig cfg2 = RunConfig::preset("sqg_random");
    cfg2.set("envelope.beta", "1.0");  // beta >= nu^2/2 with audit on
    CHECK_THROWS_AS((void)cfg2.setup(), ContractViolation);
}
