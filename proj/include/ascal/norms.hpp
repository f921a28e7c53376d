#ifndef ASCAL_NORMS_HPP
#define ASCAL_NORMS_HPP

#include "ascal/fields.hpp"
#include "ascal/multipliers.hpp"

#include <limits>
#include <string>

namespace ascal {

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

// Gevrey-Fourier-Lebesgue norm ||e^{a A^{1/2}} f||_{W-hat^{kappa*s, r}}.
struct NormSpec {
    double a = 0.0;      // exponential (Gevrey) weight
    double kappa = 0.0;  // Sobolev index, used as the product kappa*s
    double r = 1.0;      // integrability exponent in [1, inf]

    void validate() const {
        if (a < 0) throw ContractViolation("norm: a must be >= 0");
        if (!(r >= 1.0)) throw ContractViolation("norm: r must be >= 1");
    }
};

// Two-tier intersection norm: G_a^{sigma_r, r} (+ G_a^{sigma_q, 2q/(q-1)} when
// gamma > 1; the second tier is absent otherwise).
struct XNormSpec {
    double a = 0.0;
    double sigma_r = 0.0;
    double r = 1.0;
    double sigma_q = 0.0;
    double q = 1.5;

    double tier2_exponent() const { return 2.0 * q / (q - 1.0); }
    void validate(double gamma, int d) const {
        if (!(r >= 1.0)) throw ContractViolation("xnorm: r must be >= 1");
        if (a < 0) throw ContractViolation("xnorm: a must be >= 0");
        if (gamma > 1.0) {
            if (!(q > 1.0 && q < static_cast<double>(d) / (gamma - 1.0)))
                throw ContractViolation("xnorm: q must lie in (1, d/(gamma-1)) when gamma > 1");
        }
    }
};

// (sum_k <xi(k)>^{kappa_s * r} |F(k)|^r)^{1/r} over retained lattice modes,
// max over modes when r = inf; log-sum-exp throughout.
real_t fourier_lebesgue_norm(const SpectralField& f, double kappa_s, double r);

real_t gevrey_norm(const SpectralField& f, const NormSpec& n, const NoiseSpec& noise);

real_t x_norm(const SpectralField& f, const XNormSpec& x, const NoiseSpec& noise, double gamma);

// F(0): equals the physical integral under the transform convention
double mass(const SpectralField& f);

struct SecondMomentResult {
    double value = 0;
    bool boundary_warning = false;
    double boundary_fraction = 0;
};

// sum |x - center|^2_torus-min-image f(x) (L/N)^d; warns when more than 1% of
// |f|-mass sits within L/4 of the boundary shell (the R^d reading of the
// second moment is then breaking down).
SecondMomentResult second_moment(const RealField& f, std::array<double, 2> center);

// d/dt of the second moment for the d=2 attractive Newtonian gradient flow:
// M (8 pi nu - M) / (2 pi)
double virial_rate_expected(double mass, double nu);

// One row of the differential energy audit at a recorded time: the discrete
// derivative of (1/r)||e^{phi A^{1/2}} mu||^r_{W-hat^{kappa s,r}} against the
// bound's two components, dissipation (negative) and nonlinear.
struct EnergyAuditRow {
    double t = 0;
    double norm_value = 0;        // audited Gevrey norm at t
    double energy = 0;            // (1/r) * norm^r
    double discrete_derivative = 0;  // (E_next - E) / (t_next - t), 0 on the last row
    double dissipation = 0;       // -(nu^2/2 - beta) * sum ...
    double nonlinear = 0;         // + sum ... |B-hat|
    bool monotone_so_far = true;  // of the norm sequence up to and including t
};

// Pieces used by the audit (B-hat supplied by the dynamics module).
real_t audit_energy(const SpectralField& mu, double phi, double kappa, double r,
                    const NoiseSpec& noise);
real_t audit_dissipation(const SpectralField& mu, double phi, double kappa, double r,
                         const NoiseSpec& noise, double beta);
real_t audit_nonlinear(const SpectralField& mu, const SpectralField& b_hat, double phi,
                       double kappa, double r, const NoiseSpec& noise);

}  // namespace ascal

#endif
