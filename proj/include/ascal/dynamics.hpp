#ifndef ASCAL_DYNAMICS_HPP
#define ASCAL_DYNAMICS_HPP

#include "ascal/brownian.hpp"
#include "ascal/fft.hpp"
#include "ascal/kernels.hpp"
#include "ascal/norms.hpp"

#include <span>
#include <string>

namespace ascal {

struct PhysicsSpec {
    GridSpec grid;
    KernelSpec kernel;
    CouplingMatrix coupling;
    NoiseSpec noise;
    DriftEnvelope envelope;
    double overflow_cap = kDefaultLogCap;

    void validate() const;
};

enum class Scheme { etd1, etdrk2, rk4 };
enum class Mode { ito, stratonovich, deterministic };

std::string to_string(Scheme s);
std::string to_string(Mode m);
int scheme_order(Scheme s);

struct IntegratorSpec {
    double dt = 1e-3;
    Scheme scheme = Scheme::etdrk2;
    Mode mode = Mode::ito;
    double horizon = 1.0;
    double chi = 0.0;     // optional deterministic diffusion chi |nabla|^lambda
    double lambda = 2.0;

    void validate() const;
};

// B(f,g) = div Gamma( Gamma^{-1}f (M grad g * Gamma^{-1}g) ) with Gamma frozen
// at W_t; products are 2/3-dealiased in physical space; the zero mode is 0
// exactly (divergence factor i xi).
SpectralField bilinear_B(const SpectralField& f, const SpectralField& g, double w_t,
                         const PhysicsSpec& phys);

// theta = e^{nu W_t (1+|nabla|^s)} mu
SpectralField recover_theta(const SpectralField& mu, double w_t, const NoiseSpec& noise,
                            double cap = kDefaultLogCap);

// One step of each scheme. w_n and w_np1 are the path values at the step
// endpoints; the Ito-consistent pathwise quadrature freezes W at the left
// endpoint inside B for ETD1.
SpectralField etd1_step(const SpectralField& mu, double w_n, double dt,
                        const PhysicsSpec& phys, double chi = 0, double lambda = 2);
SpectralField etdrk2_step(const SpectralField& mu, double w_n, double w_np1, double dt,
                          const PhysicsSpec& phys, double chi = 0, double lambda = 2);
SpectralField stratonovich_step(const SpectralField& mu, double w_n, double w_np1, double dt,
                                const PhysicsSpec& phys);
SpectralField deterministic_step(const SpectralField& theta, double dt, const PhysicsSpec& phys,
                                 double chi = 0, double lambda = 2);

// Initial data presets. Gevrey-class data (theorem hypothesis) comes from the
// random preset: coeffs c * e^{-a0 |xi|} * unit-modulus noise.
struct DatumSpec {
    enum class Preset { gaussian, dipole, random };

    Preset preset = Preset::gaussian;
    double mass = 1.0;        // gaussian/random: zero-mode value; dipole: lobe mass
    double width = 1.0;       // gaussian/dipole lobe sigma
    double separation = 0.0;  // dipole lobe offset (0 -> L/8)
    double amplitude = 0.1;   // random: coefficient scale c
    double radius = 1.0;      // random: analyticity radius a0
    std::uint64_t seed = 1;
    double scale = 1.0;       // overall multiplier (smallness calibration)
    bool truncate_to_band = true;
};

SpectralField make_datum(const GridSpec& grid, const DatumSpec& datum);

// Differential energy audit of (1/r)||e^{(phi^t+eps) A^{1/2}} mu||^r for a
// recorded trajectory; refuses when beta >= nu^2/2.
struct AuditSample {
    double t = 0;
    const SpectralField* mu = nullptr;
    const SpectralField* b_hat = nullptr;  // may be null (zero-field B)
};

std::vector<EnergyAuditRow> energy_inequality_audit(std::span<const AuditSample> trajectory,
                                                    const NormSpec& norm,
                                                    const DriftEnvelope& envelope,
                                                    const NoiseSpec& noise);

// A norm column of the trajectory record. When envelope_weight is set the
// Gevrey index follows phi^t + epsilon (+ the spec's own a as offset).
struct NormRequest {
    std::string name;
    bool is_x = false;
    bool envelope_weight = false;
    NormSpec norm;
    XNormSpec xnorm;
};

struct SimulationSetup {
    PhysicsSpec physics;
    IntegratorSpec integrator;
    DatumSpec datum;
    std::vector<NormRequest> norms;
    int audited_norm = -1;  // index into norms driving the monotonicity verdict
    std::uint64_t seed = 1;
    int stride = 10;
    bool enable_second_moment = false;
    bool enable_audit = false;
    // dt-refinement studies share one realization across resolutions
    std::optional<BrownianPath> path_override;

    void validate() const;
};

struct TrajectoryRow {
    double t = 0;
    double w = 0;
    int in_event_so_far = 1;
    double mass_mu = 0;
    double mass_theta = 0;
    double l2_theta = 0;
    double second_moment = 0;
    int boundary_warning = 0;
    std::vector<double> norms;
    double audit_energy = 0;
    double audit_derivative = 0;
    double audit_dissipation = 0;
    double audit_nonlinear = 0;
    int overflow = 0;
    int blowup = 0;
    int resolution_loss = 0;
};

struct RunSummary {
    std::string termination = "horizon";
    double t_final = 0;
    bool in_event_throughout = true;
    bool audited_monotone = false;
    bool audited_strict_decrease = false;
    double audited_initial = 0;
    double audited_final = 0;
    double mass_law_max_rel_err = 0;
    double l2_drift_per_unit_time = 0;
    double strat_zero_mode_max_rel_drift = 0;
};

struct TrajectoryRecord {
    std::vector<std::string> columns;  // names of the norm columns
    std::vector<TrajectoryRow> rows;
    RunSummary summary;
    BrownianPath path;
    SpectralField final_state;
};

TrajectoryRecord run_simulation(const SimulationSetup& setup);

// Spectral-tail resolution indicator: fraction of |f|^2 in modes with
// max_i |k_i| above half the dealias band.
double tail_energy_fraction(const SpectralField& f);

}  // namespace ascal

#endif
