#include "ascal/norms.hpp"

#include "ascal/dynamics.hpp"
#include "ascal/fft.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ascal;

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

SpectralField random_spectral(const GridSpec& g, unsigned seed, double decay = 0.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SpectralField f(g);
    LatticeIterator it(g);
    it.for_each([&](const LatticePoint& p) {
        const double a = u(rng), b = u(rng);
        f.coeffs[p.flat] = cplx(a, b) * std::exp(-static_cast<real_t>(decay) * p.xi_norm);
    });
    enforce_hermitian(f);
    return f;
}

}  // namespace

TEST_CASE("fourier-lebesgue norm: single mode, r=inf, plain l2") {
    GridSpec g{2, 16, kTwoPi};
    SpectralField f(g);
    f.coeffs[flat_index(g, {1, 0})] = cplx(0.6L, 0);
    f.coeffs[flat_index(g, {-1, 0})] = cplx(0.6L, 0);
    // kappa*s = 2 at |xi| = 1: weight <xi>^2 = 2, r=1 sums both modes
    CHECK(static_cast<double>(fourier_lebesgue_norm(f, 2.0, 1.0)) ==
          doctest::Approx(2 * 0.6 * 2.0).epsilon(1e-14));
    // r = inf takes the max
    CHECK(static_cast<double>(fourier_lebesgue_norm(f, 2.0, kInfExponent)) ==
          doctest::Approx(0.6 * 2.0).epsilon(1e-14));

    const SpectralField r = random_spectral(g, 3);
    real_t l2 = 0;
    for (const auto& c : r.coeffs) l2 += std::norm(c);
    CHECK(static_cast<double>(fourier_lebesgue_norm(r, 0.0, 2.0)) ==
          doctest::Approx(static_cast<double>(std::sqrt(l2))).epsilon(1e-13));
}

TEST_CASE("gevrey norm with a=0 reduces to the fourier-lebesgue norm") {
    GridSpec g{2, 16, 3.0};
    const SpectralField f = random_spectral(g, 5);
    const NoiseSpec noise{0.9, 1.0, true};
    CHECK(static_cast<double>(gevrey_norm(f, {0.0, 1.7, 1.5}, noise)) ==
          doctest::Approx(static_cast<double>(fourier_lebesgue_norm(f, 1.7 * 0.9, 1.5)))
              .epsilon(1e-14));
}

TEST_CASE("Gevrey-index embedding holds as computed numbers on random fields") {
    GridSpec g{2, 16, kTwoPi};
    const NoiseSpec noise{0.8, 1.0, true};
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const SpectralField f = random_spectral(g, 100 + trial, 1.2);
        const double a = u(rng);
        const double ap = a + u(rng) + 1e-3;
        const double kappa = 2 * u(rng) - 0.5;
        const double kp = kappa + u(rng);
        const double r = 1.0 + 2 * u(rng);
        const double lhs = static_cast<double>(gevrey_norm(f, {a, kappa, r}, noise));
        const double rhs = std::exp(a - ap) *
                           static_cast<double>(gevrey_norm(f, {ap, kp, r}, noise));
        CHECK(lhs <= rhs * (1 + 1e-12));
    }
}

TEST_CASE("Gevrey smoothing embedding with the ceiling factorial constant") {
    GridSpec g{2, 16, kTwoPi};
    const NoiseSpec noise{0.8, 1.0, true};
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const SpectralField f = random_spectral(g, 200 + trial, 1.5);
        const double a = u(rng);
        const double ap = a + 0.2 + u(rng);
        const double kappa = u(rng) - 0.2;
        const double kp = kappa + 2.5 * u(rng) + 1e-3;
        const double r = 1.0 + u(rng);
        const double m = std::ceil(kp - kappa);
        double fact = 1;
        for (int i = 2; i <= static_cast<int>(m); ++i) fact *= i;
        const double lhs = static_cast<double>(gevrey_norm(f, {a, kp, r}, noise));
        const double rhs = fact / std::pow(ap - a, m) *
                           static_cast<double>(gevrey_norm(f, {ap, kappa, r}, noise));
        CHECK(lhs <= rhs * (1 + 1e-12));
    }
}

TEST_CASE("discrete Sobolev embedding with the exact lattice Hoelder constant") {
    GridSpec g{2, 24, kTwoPi};
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const SpectralField f = random_spectral(g, 300 + trial, 0.6);
        const double p = 1.0 + u(rng);
        const double r = p + 0.2 + u(rng);
        const double s_idx = 2 * u(rng) - 1;
        const double delta = 0.3 + u(rng);
        // C_grid = (sum <xi>^{-delta r p/(r-p)})^{(r-p)/(rp)}
        const double expo = delta * r * p / (r - p);
        real_t csum = 0;
        LatticeIterator it(g);
        it.for_each([&](const LatticePoint& pt) {
            csum += std::pow(real_t(1) + pt.xi_norm * pt.xi_norm, -static_cast<real_t>(expo) / 2);
        });
        const double c_grid = std::pow(static_cast<double>(csum), (r - p) / (r * p));
        const double lhs = static_cast<double>(fourier_lebesgue_norm(f, s_idx, p));
        const double rhs =
            c_grid * static_cast<double>(fourier_lebesgue_norm(f, s_idx + delta, r));
        CHECK(lhs <= rhs * (1 + 1e-12));
    }
}

TEST_CASE("x norm: single tier at gamma<=1 bit-for-bit, sum of tiers otherwise") {
    GridSpec g{2, 16, kTwoPi};
    const NoiseSpec noise{1.0, 1.0, true};
    const SpectralField f = random_spectral(g, 23, 1.0);
    const XNormSpec x{0.3, 1.5, 1.0, 0.5, 1.5};
    const real_t tier1 = gevrey_norm(f, {0.3, 1.5, 1.0}, noise);
    CHECK(x_norm(f, x, noise, 0.9) == tier1);
    const real_t tier2 = gevrey_norm(f, {0.3, 0.5, 2.0 * 1.5 / 0.5}, noise);
    CHECK(static_cast<double>(x_norm(f, x, noise, 2.0)) ==
          doctest::Approx(static_cast<double>(tier1 + tier2)).epsilon(1e-14));
    // q outside (1, d/(gamma-1)) rejected when gamma > 1
    const XNormSpec bad{0.3, 1.5, 1.0, 0.5, 2.5};
    CHECK_THROWS_AS((void)x_norm(f, bad, noise, 2.0), ContractViolation);
    CHECK_NOTHROW((void)x_norm(f, bad, noise, 0.9));
}

TEST_CASE("mass: constant field and mean-zero dipole") {
    GridSpec g{2, 16, 3.0};
    RealField ones(g);
    for (auto& v : ones.values) v = 2.0L;
    CHECK(mass(forward_transform(ones)) == doctest::Approx(2.0 * 9.0).epsilon(1e-14));

    DatumSpec dip;
    dip.preset = DatumSpec::Preset::dipole;
    dip.mass = 0.5;
    dip.width = 0.3;
    CHECK(mass(make_datum(g, dip)) == 0.0);
}

TEST_CASE("second moment of a concentrated gaussian is 2 sigma^2 M in 2d") {
    GridSpec g{2, 128, 20.0};
    DatumSpec d;
    d.preset = DatumSpec::Preset::gaussian;
    d.mass = 1.7;
    d.width = 0.8;
    const RealField f = inverse_transform(make_datum(g, d));
    const auto sm = second_moment(f, {10.0, 10.0});
    CHECK(sm.value == doctest::Approx(2 * 0.8 * 0.8 * 1.7).epsilon(1e-3));
    CHECK(!sm.boundary_warning);
}

TEST_CASE("second moment agrees with a radial quadrature oracle for a symmetric field") {
    GridSpec g{2, 96, 12.0};
    RealField f(g);
    const double c = 6.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            const double x = std::remainder(i * g.dx() - c, g.length);
            const double y = std::remainder(j * g.dx() - c, g.length);
            const double r2 = x * x + y * y;
            f.values[static_cast<std::size_t>(i) * g.n + j] =
                static_cast<real_t>(std::exp(-r2) * (1 + 0.5 * r2));
        }
    // oracle: direct sum of r^2 f over the same lattice (identical formula,
    // independently coded path)
    real_t oracle = 0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            const double x = std::remainder(i * g.dx() - c, g.length);
            const double y = std::remainder(j * g.dx() - c, g.length);
            oracle += static_cast<real_t>((x * x + y * y)) *
                      f.values[static_cast<std::size_t>(i) * g.n + j];
        }
    oracle *= static_cast<real_t>(g.cell_volume());
    const auto sm = second_moment(f, {c, c});
    CHECK(sm.value == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-13));

    RealField zero(g);
    CHECK(second_moment(zero, {c, c}).value == 0.0);
}

TEST_CASE("boundary-mass warning fires when mass piles near the edge") {
    GridSpec g{2, 64, 8.0};
    RealField f(g);
    // bump centered across the torus from the query center
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            const double x = std::remainder(i * g.dx() - 0.0, g.length);
            const double y = std::remainder(j * g.dx() - 0.0, g.length);
            f.values[static_cast<std::size_t>(i) * g.n + j] =
                static_cast<real_t>(std::exp(-(x * x + y * y)));
        }
    CHECK(second_moment(f, {4.0, 4.0}).boundary_warning);
}

TEST_CASE("virial rate: paper values") {
    CHECK(virial_rate_expected(1.0, 0.0) == doctest::Approx(-1.0 / (2 * 3.14159265358979323846)));
    CHECK(virial_rate_expected(2.0, 0.0) == doctest::Approx(-4.0 / (2 * 3.14159265358979323846)));
    const double m = 8 * 3.14159265358979323846 * 0.7;
    CHECK(virial_rate_expected(m, 0.7) == doctest::Approx(0.0));
}

TEST_CASE("energy audit refuses beta >= nu^2/2 and reports zero on the zero field") {
    GridSpec g{2, 8, kTwoPi};
    SpectralField zero(g);
    const NoiseSpec noise{1.0, 1.0, true};
    const DriftEnvelope bad{1.0, 0.6, 0.0};
    std::vector<AuditSample> traj{{0.0, &zero, nullptr}, {0.1, &zero, nullptr}};
    CHECK_THROWS_AS((void)energy_inequality_audit(traj, {0, 2, 1}, bad, noise),
                    ContractViolation);
    const DriftEnvelope ok{1.0, 0.3, 0.0};
    const auto rows = energy_inequality_audit(traj, {0, 2, 1}, ok, noise);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].energy == 0.0);
    CHECK(rows[0].discrete_derivative == 0.0);
    CHECK(rows[0].monotone_so_far);
    CHECK(rows[1].monotone_so_far);
}

TEST_CASE("norms are nonnegative and vanish only on the zero field") {
    GridSpec g{2, 12, 2.0};
    const NoiseSpec noise{0.8, 1.0, true};
    SpectralField zero(g);
    CHECK(gevrey_norm(zero, {0.5, 1.0, 1.0}, noise) == 0.0L);
    const SpectralField f = random_spectral(g, 31);
    CHECK(gevrey_norm(f, {0.5, 1.0, 1.0}, noise) > 0.0L);
}
