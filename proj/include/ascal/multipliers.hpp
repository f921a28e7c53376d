#ifndef ASCAL_MULTIPLIERS_HPP
#define ASCAL_MULTIPLIERS_HPP

#include "ascal/fields.hpp"

#include <string>

namespace ascal {

// Noise operator nu*(1+|nabla|^s) (inhomogeneous, the default) or nu*|nabla|^s
// (homogeneous torus variant; zero mode untouched, mass conserved).
struct NoiseSpec {
    double s = 1.0;
    double nu = 1.0;
    bool inhomogeneous = true;

    void validate() const {
        if (!(s > 0.5 && s <= 1.0))
            throw ContractViolation("noise: s must lie in (1/2, 1]");
        if (!(nu > 0.0)) throw ContractViolation("noise: nu must be positive");
    }
    // base(xi) = 1+|xi|^s or |xi|^s; every multiplier symbol is a function of it
    real_t base(real_t xi_norm) const {
        const real_t pow_s = xi_norm == 0 ? real_t(0) : std::pow(xi_norm, static_cast<real_t>(s));
        return inhomogeneous ? real_t(1) + pow_s : pow_s;
    }
};

// phi(t) = alpha + beta*t, the drifted barrier of the good event and the
// Gevrey weight schedule. epsilon is the extra analyticity margin.
struct DriftEnvelope {
    double alpha = 1.0;
    double beta = 0.1;
    double epsilon = 0.0;

    double phi(double t) const { return alpha + beta * t; }
    void validate() const {
        if (!(alpha > 0.0) || !(beta > 0.0))
            throw ContractViolation("envelope: alpha and beta must be positive");
        if (epsilon < 0.0) throw ContractViolation("envelope: epsilon must be >= 0");
    }
    // beta < nu^2/2 is required by every monotonicity statement
    void require_subcritical(const NoiseSpec& noise) const {
        if (!(beta < 0.5 * noise.nu * noise.nu))
            throw ContractViolation("envelope: beta < nu^2/2 is required");
    }
};

struct AmplificationOverflow : std::runtime_error {
    std::array<int, 2> mode;
    double log_symbol;
    AmplificationOverflow(std::array<int, 2> k, double lv)
        : std::runtime_error("multiplier amplification exceeds cap at mode (" +
                             std::to_string(k[0]) + "," + std::to_string(k[1]) +
                             "), log symbol " + std::to_string(lv)),
          mode(k),
          log_symbol(lv) {}
};

// Diagonal Fourier multipliers, all evaluated in log domain:
//   A            (1+|xi|^s)^2
//   SqrtA        1+|xi|^s
//   Semigroup    e^{-(nu^2 tau/2) (1+|xi|^s)^2} [optionally * e^{-chi tau |xi|^lambda}]
//   Gamma        e^{-nu w (1+|xi|^s)}
//   GammaInverse e^{+nu w (1+|xi|^s)}
//   GevreyWeight e^{a (1+|xi|^s)}
//   FractionalLaplacian  e^{-chi tau |xi|^lambda} (semigroup-context factor)
struct MultiplierSymbol {
    enum class Kind { A, SqrtA, Semigroup, Gamma, GammaInverse, GevreyWeight, FractionalLaplacian };

    Kind kind = Kind::A;
    NoiseSpec noise;
    double tau = 0.0;     // Semigroup / FractionalLaplacian
    double w = 0.0;       // Gamma / GammaInverse
    double a = 0.0;       // GevreyWeight
    double chi = 0.0;     // deterministic diffusion strength
    double lambda = 0.0;  // deterministic diffusion order

    static MultiplierSymbol a_op(const NoiseSpec& n) { return {Kind::A, n, 0, 0, 0, 0, 0}; }
    static MultiplierSymbol sqrt_a(const NoiseSpec& n) { return {Kind::SqrtA, n, 0, 0, 0, 0, 0}; }
    static MultiplierSymbol semigroup(const NoiseSpec& n, double tau, double chi = 0.0,
                                      double lambda = 0.0) {
        return {Kind::Semigroup, n, tau, 0, 0, chi, lambda};
    }
    static MultiplierSymbol gamma(const NoiseSpec& n, double w) {
        return {Kind::Gamma, n, 0, w, 0, 0, 0};
    }
    static MultiplierSymbol gamma_inverse(const NoiseSpec& n, double w) {
        return {Kind::GammaInverse, n, 0, w, 0, 0, 0};
    }
    static MultiplierSymbol gevrey_weight(const NoiseSpec& n, double a) {
        return {Kind::GevreyWeight, n, 0, 0, a, 0, 0};
    }
    static MultiplierSymbol fractional_laplacian(const NoiseSpec& n, double chi, double tau,
                                                 double lambda) {
        return {Kind::FractionalLaplacian, n, tau, 0, 0, chi, lambda};
    }
};

// Natural log of the (positive) symbol at wavevector norm |xi|.
real_t symbol_log_value(const MultiplierSymbol& m, real_t xi_norm);

inline constexpr double kDefaultLogCap = 700.0;

// coeffs(k) *= exp(symbol_log_value at xi(k)). Throws AmplificationOverflow
// when any retained mode's log symbol exceeds the cap (hard error, never a
// clamp: Gamma^{-1} with large positive w signals Gevrey-radius exhaustion).
SpectralField apply_multiplier(const SpectralField& f, const MultiplierSymbol& m,
                               double log_cap = kDefaultLogCap);

}  // namespace ascal

#endif
