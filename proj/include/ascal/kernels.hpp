#ifndef ASCAL_KERNELS_HPP
#define ASCAL_KERNELS_HPP

#include "ascal/fields.hpp"

#include <optional>
#include <vector>

namespace ascal {

// Interaction kernel in Fourier form: g_hat(xi) = sign * c * |xi|^{-gamma},
// zero at xi = 0 (torus convention; the velocity never sees the zero mode).
// newtonian2d pins c = 1 so that g_hat(xi) = sign*|xi|^{-2}, the exact symbol
// of the 2d Newtonian potential.
struct KernelSpec {
    enum class Preset { none, riesz, newtonian2d };

    double gamma = 1.0;
    int sign = +1;  // +1 repulsive, -1 attractive
    double c = 1.0;
    Preset preset = Preset::none;

    static KernelSpec riesz(double gamma, int sign, double c = 1.0) {
        return {gamma, sign, c, Preset::riesz};
    }
    static KernelSpec newtonian2d(int sign) { return {2.0, sign, 1.0, Preset::newtonian2d}; }

    void validate(int d) const {
        if (!(gamma > 0.0 && gamma < d + 1))
            throw ContractViolation("kernel: gamma must lie in (0, d+1)");
        if (sign != 1 && sign != -1) throw ContractViolation("kernel: sign must be +-1");
        if (!(c > 0.0)) throw ContractViolation("kernel: normalization c must be positive");
        if (preset == Preset::newtonian2d && (d != 2 || gamma != 2.0 || c != 1.0))
            throw ContractViolation("kernel: newtonian2d preset requires d=2, gamma=2, c=1");
    }
};

real_t g_hat(const KernelSpec& k, real_t xi_norm);

// Coupling matrix M of the velocity v = M grad g * theta. GradientFlow is -I,
// Hamiltonian2D is rotation by pi/2 (only d=2). Custom matrices carry a
// precomputed exact-antisymmetry flag.
struct CouplingMatrix {
    enum class Kind { gradient_flow, hamiltonian2d, custom };

    Kind kind = Kind::gradient_flow;
    int d = 2;
    std::array<std::array<double, 2>, 2> m{{{-1.0, 0.0}, {0.0, -1.0}}};
    bool antisymmetric = false;

    static CouplingMatrix gradient_flow(int d);
    static CouplingMatrix hamiltonian2d();
    static CouplingMatrix custom(int d, const std::array<std::array<double, 2>, 2>& mat);
    static CouplingMatrix zero(int d);

    // operator (max) norm |M|, used by smallness conditions
    double norm() const;
    // M*xi
    std::array<real_t, 2> apply(const std::array<real_t, 2>& xi) const;
};

// Spectral velocity components: v_hat_j(xi) = i (M xi)_j g_hat(xi) theta_hat(xi).
std::vector<SpectralField> velocity(const SpectralField& theta, const KernelSpec& k,
                                    const CouplingMatrix& coupling);

// Divergence of the velocity, i (xi^T M xi) g_hat theta, with the quadratic
// form evaluated first: for antisymmetric M the cancellation is then
// floating-point exact, mode by mode.
SpectralField velocity_divergence(const SpectralField& theta, const KernelSpec& k,
                                  const CouplingMatrix& coupling);

}  // namespace ascal

#endif
