#include "ascal/kernels.hpp"

#include "ascal/fields.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ascal;

TEST_CASE("g_hat values: newtonian, zero mode, riesz") {
    const KernelSpec newton = KernelSpec::newtonian2d(-1);
    CHECK(g_hat(newton, 1.0L) == -1.0L);
    CHECK(g_hat(newton, 0.0L) == 0.0L);
    const KernelSpec sqg = KernelSpec::riesz(1.0, +1);
    CHECK(std::abs(g_hat(sqg, 2.0L) - 0.5L) < 1e-18L);
}

TEST_CASE("kernel bound |xi||g_hat| = c |xi|^{1-gamma} on every lattice mode") {
    GridSpec g{2, 32, 5.0};
    const KernelSpec k = KernelSpec::riesz(1.7, -1, 0.8);
    LatticeIterator it(g);
    it.for_each([&](const LatticePoint& p) {
        if (p.xi_norm == 0) return;
        const real_t lhs = p.xi_norm * std::abs(g_hat(k, p.xi_norm));
        const real_t rhs = 0.8L * std::pow(p.xi_norm, real_t(1) - 1.7L);
        CHECK(std::abs(lhs - rhs) <= 1e-12L * rhs);
    });
}

TEST_CASE("single-mode velocity matches the hand-evaluated symbol") {
    GridSpec g{2, 16, 2.0 * 3.14159265358979323846};
    const KernelSpec k = KernelSpec::riesz(1.5, -1, 1.0);
    const auto m = CouplingMatrix::gradient_flow(2);
    SpectralField theta(g);
    const std::array<int, 2> k0{2, 1};
    theta.coeffs[flat_index(g, k0)] = cplx(0.7L, -0.2L);
    theta.coeffs[flat_index(g, {-2, -1})] = std::conj(theta.coeffs[flat_index(g, k0)]);
    const auto v = velocity(theta, k, m);
    const real_t xin = std::sqrt(real_t(5));
    const cplx expect0 = cplx(0, -2.0L) * (-std::pow(xin, -1.5L)) *
                         theta.coeffs[flat_index(g, k0)];  // (M xi)_0 = -xi_0 = -2
    CHECK(std::abs(v[0].coeffs[flat_index(g, k0)] - expect0) < 1e-15L);
    // all other modes empty
    std::size_t nonzero = 0;
    for (const auto& c : v[0].coeffs)
        if (std::abs(c) > 0) ++nonzero;
    CHECK(nonzero == 2);  // k0 and its mirror
    CHECK(std::abs(v[0].coeffs[0]) == 0.0L);
    CHECK(std::abs(v[1].coeffs[0]) == 0.0L);
}

TEST_CASE("antisymmetric coupling gives exactly divergence-free velocity") {
    GridSpec g{2, 24, 4.0};
    const KernelSpec k = KernelSpec::riesz(1.0, +1);
    const auto m = CouplingMatrix::hamiltonian2d();
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SpectralField theta(g);
    for (auto& c : theta.coeffs) c = cplx(u(rng), u(rng));
    enforce_hermitian(theta);
    // the prescribed diagnostic evaluates the quadratic form first: exact zero
    const SpectralField div = velocity_divergence(theta, k, m);
    for (const auto& c : div.coeffs) CHECK(std::abs(c) == 0.0L);

    // summing the components afterwards cancels to rounding only
    const auto v = velocity(theta, k, m);
    LatticeIterator it(g);
    it.for_each([&](const LatticePoint& p) {
        const cplx d0 = p.xi[0] * v[0].coeffs[p.flat];
        const cplx d1 = p.xi[1] * v[1].coeffs[p.flat];
        const real_t scale = std::abs(d0) + std::abs(d1);
        CHECK(std::abs(d0 + d1) <= 1e-16L * std::max<real_t>(scale, 1e-30L));
    });
}

TEST_CASE("velocity is linear in theta and vanishes on the zero field") {
    GridSpec g{2, 12, 3.0};
    const KernelSpec k = KernelSpec::riesz(0.8, -1);
    const auto m = CouplingMatrix::gradient_flow(2);
    SpectralField zero(g);
    for (const auto& comp : velocity(zero, k, m))
        for (const auto& c : comp.coeffs) CHECK(std::abs(c) == 0.0L);

    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SpectralField a(g), b(g);
    for (auto& c : a.coeffs) c = cplx(u(rng), u(rng));
    for (auto& c : b.coeffs) c = cplx(u(rng), u(rng));
    enforce_hermitian(a);
    enforce_hermitian(b);
    SpectralField lin(g);
    for (std::size_t i = 0; i < lin.coeffs.size(); ++i)
        lin.coeffs[i] = a.coeffs[i] + real_t(3) * b.coeffs[i];
    const auto va = velocity(a, k, m);
    const auto vb = velocity(b, k, m);
    const auto vl = velocity(lin, k, m);
    for (int j = 0; j < 2; ++j)
        for (std::size_t i = 0; i < lin.coeffs.size(); ++i)
            CHECK(std::abs(vl[j].coeffs[i] - (va[j].coeffs[i] + real_t(3) * vb[j].coeffs[i])) <
                  1e-14L);
}

TEST_CASE("coupling matrices: antisymmetry detection and validation") {
    CHECK(CouplingMatrix::hamiltonian2d().antisymmetric);
    CHECK(!CouplingMatrix::gradient_flow(2).antisymmetric);
    CHECK(CouplingMatrix::custom(2, {{{0, 2}, {-2, 0}}}).antisymmetric);
    CHECK(!CouplingMatrix::custom(2, {{{0, 2}, {-1.9, 0}}}).antisymmetric);
    CHECK_THROWS_AS(KernelSpec::riesz(3.5, +1).validate(2), ContractViolation);
    GridSpec g1{1, 8, 1.0};
    SpectralField f(g1);
    CHECK_THROWS_AS((void)velocity(f, KernelSpec::riesz(1.0, +1), CouplingMatrix::hamiltonian2d()),
                    ContractViolation);
}
