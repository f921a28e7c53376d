#include "ascal/kernels.hpp"

#include <cmath>

namespace ascal {

real_t g_hat(const KernelSpec& k, real_t xi_norm) {
    if (xi_norm == 0) return 0;
    return static_cast<real_t>(k.sign) * static_cast<real_t>(k.c) *
           std::pow(xi_norm, -static_cast<real_t>(k.gamma));
}

CouplingMatrix CouplingMatrix::gradient_flow(int d) {
    CouplingMatrix c;
    c.kind = Kind::gradient_flow;
    c.d = d;
    c.m = {{{-1.0, 0.0}, {0.0, -1.0}}};
    c.antisymmetric = false;
    return c;
}

CouplingMatrix CouplingMatrix::hamiltonian2d() {
    CouplingMatrix c;
    c.kind = Kind::hamiltonian2d;
    c.d = 2;
    c.m = {{{0.0, -1.0}, {1.0, 0.0}}};
    c.antisymmetric = true;
    return c;
}

CouplingMatrix CouplingMatrix::custom(int d, const std::array<std::array<double, 2>, 2>& mat) {
    CouplingMatrix c;
    c.kind = Kind::custom;
    c.d = d;
    c.m = mat;
    c.antisymmetric = true;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (mat[i][j] != -mat[j][i]) c.antisymmetric = false;
    return c;
}

CouplingMatrix CouplingMatrix::zero(int d) {
    return custom(d, {{{0.0, 0.0}, {0.0, 0.0}}});
}

double CouplingMatrix::norm() const {
    // Frobenius bound; exact enough for smallness bookkeeping
    double s = 0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s += m[i][j] * m[i][j];
    return std::sqrt(s);
}

std::array<real_t, 2> CouplingMatrix::apply(const std::array<real_t, 2>& xi) const {
    std::array<real_t, 2> out{0, 0};
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out[i] += static_cast<real_t>(m[i][j]) * xi[j];
    return out;
}

SpectralField velocity_divergence(const SpectralField& theta, const KernelSpec& k,
                                  const CouplingMatrix& coupling) {
    SpectralField out(theta.grid);
    const int d = theta.grid.d;
    LatticeIterator it(theta.grid);
    it.for_each([&](const LatticePoint& p) {
        if (p.xi_norm == 0) return;
        real_t qf = 0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                qf += static_cast<real_t>(coupling.m[i][j]) * (p.xi[i] * p.xi[j]);
        out.coeffs[p.flat] = cplx(0, qf * g_hat(k, p.xi_norm)) * theta.coeffs[p.flat];
    });
    return out;
}

std::vector<SpectralField> velocity(const SpectralField& theta, const KernelSpec& k,
                                    const CouplingMatrix& coupling) {
    theta.grid.validate();
    if (coupling.kind == CouplingMatrix::Kind::hamiltonian2d && theta.grid.d != 2)
        throw ContractViolation("velocity: hamiltonian2d coupling requires d=2");
    const int d = theta.grid.d;
    std::vector<SpectralField> v(d, SpectralField(theta.grid));
    LatticeIterator it(theta.grid);
    it.for_each([&](const LatticePoint& p) {
        if (p.xi_norm == 0) return;  // g_hat(0) = 0: no zero-mode velocity
        const real_t gh = g_hat(k, p.xi_norm);
        const auto mxi = coupling.apply(p.xi);
        const cplx factor = cplx(0, gh) * theta.coeffs[p.flat];
        for (int j = 0; j < d; ++j) v[j].coeffs[p.flat] = mxi[j] * factor;
    });
    return v;
}

}  // namespace ascal
