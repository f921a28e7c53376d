#include "ascal/fft.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ascal;

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

RealField random_field(const GridSpec& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RealField f(g);
    for (auto& v : f.values) v = u(rng);
    return f;
}

real_t rel_diff(real_t a, real_t b) {
    const real_t scale = std::max<real_t>({1e-30L, std::abs(a), std::abs(b)});
    return std::abs(a - b) / scale;
}

}  // namespace

TEST_CASE("constant field transforms to a pure zero mode of value c*L^d") {
    for (int d : {1, 2}) {
        GridSpec g{d, 16, 3.5};
        RealField f(g);
        for (auto& v : f.values) v = 2.25L;
        const SpectralField F = forward_transform(f);
        const double vol = g.volume();
        CHECK(std::abs(F.coeffs[0] - cplx(2.25L * vol, 0)) < 1e-12L * vol);
        for (std::size_t i = 1; i < F.coeffs.size(); ++i)
            CHECK(std::abs(F.coeffs[i]) < 1e-12L * vol);
    }
}

TEST_CASE("cos(2 pi x / L) lands on modes +-1 with weight L/2") {
    GridSpec g{1, 32, 5.0};
    RealField f(g);
    for (int i = 0; i < g.n; ++i)
        f.values[static_cast<std::size_t>(i)] =
            std::cos(kTwoPi * i * g.dx() / g.length);
    const SpectralField F = forward_transform(f);
    CHECK(std::abs(F.coeffs[flat_index(g, {1, 0})] - cplx(g.length / 2, 0)) < 1e-12L);
    CHECK(std::abs(F.coeffs[flat_index(g, {-1, 0})] - cplx(g.length / 2, 0)) < 1e-12L);
    CHECK(std::abs(F.coeffs[0]) < 1e-12L);
}

TEST_CASE("zero coefficients invert to the zero field, pure DC to a constant") {
    GridSpec g{2, 16, 2.0};
    SpectralField F(g);
    RealField f = inverse_transform(F);
    for (auto v : f.values) CHECK(v == 0.0L);

    F.coeffs[0] = cplx(g.volume(), 0);
    f = inverse_transform(F);
    for (auto v : f.values) CHECK(std::abs(v - 1.0L) < 1e-14L);
}

TEST_CASE("round trip is identity to 1e-12 on random fields, all grid sizes") {
    for (int n : {16, 32, 64, 128}) {
        for (int d : {1, 2}) {
            GridSpec g{d, n, 7.3};
            const RealField f = random_field(g, static_cast<unsigned>(n + d));
            const RealField back = inverse_transform(forward_transform(f));
            real_t worst = 0;
            for (std::size_t i = 0; i < f.values.size(); ++i)
                worst = std::max(worst, rel_diff(f.values[i], back.values[i]));
            CHECK(worst < 1e-12L);
        }
    }
}

TEST_CASE("Parseval: sum f^2 (L/N)^d equals sum |F|^2 L^-d") {
    for (int d : {1, 2}) {
        GridSpec g{d, 32, 4.1};
        const RealField f = random_field(g, 99);
        const SpectralField F = forward_transform(f);
        real_t phys = 0;
        for (auto v : f.values) phys += v * v;
        phys *= static_cast<real_t>(g.cell_volume());
        real_t spec = 0;
        for (const auto& c : F.coeffs) spec += std::norm(c);
        spec /= static_cast<real_t>(g.volume());
        CHECK(rel_diff(phys, spec) < 1e-12L);
    }
}

TEST_CASE("inverse transform rejects non-Hermitian input") {
    GridSpec g{1, 8, 1.0};
    SpectralField F(g);
    F.coeffs[flat_index(g, {1, 0})] = cplx(1, 1);  // mirror left at zero
    CHECK_THROWS_AS((void)inverse_transform(F), ContractViolation);
}

TEST_CASE("product with a constant equals the dealiased other factor") {
    GridSpec g{2, 24, kTwoPi};
    RealField ones(g);
    for (auto& v : ones.values) v = 1.0L;
    const RealField b = random_field(g, 5);
    const SpectralField prod = dealiased_product(ones, b);
    SpectralField expect = forward_transform(b);
    dealias_in_place(expect);
    for (std::size_t i = 0; i < prod.coeffs.size(); ++i)
        CHECK(std::abs(prod.coeffs[i] - expect.coeffs[i]) < 1e-11L);
}

TEST_CASE("two in-band modes combine at the sum wavevector with convolution weight") {
    // hand computation: F(e_i k1) = L^d delta_{k,k1}; product transform is the
    // discrete convolution L^-d sum F1(k') F2(k-k'), so a cos*cos product puts
    // L^d/4 on each of the four combination modes
    GridSpec g{1, 32, kTwoPi};
    auto cosine = [&](int k) {
        RealField f(g);
        for (int i = 0; i < g.n; ++i)
            f.values[static_cast<std::size_t>(i)] = std::cos(k * i * g.dx());
        return f;
    };
    const SpectralField p = dealiased_product(cosine(3), cosine(4));
    const double quarter = g.length / 4;
    CHECK(std::abs(p.coeffs[flat_index(g, {7, 0})] - cplx(quarter, 0)) < 1e-12L);
    CHECK(std::abs(p.coeffs[flat_index(g, {-7, 0})] - cplx(quarter, 0)) < 1e-12L);
    CHECK(std::abs(p.coeffs[flat_index(g, {1, 0})] - cplx(quarter, 0)) < 1e-12L);
    CHECK(std::abs(p.coeffs[flat_index(g, {-1, 0})] - cplx(quarter, 0)) < 1e-12L);
    CHECK(std::abs(p.coeffs[0]) < 1e-12L);
}

TEST_CASE("modes aliasing outside the band vanish") {
    GridSpec g{1, 30, kTwoPi};  // band limit 10
    auto cosine = [&](int k) {
        RealField f(g);
        for (int i = 0; i < g.n; ++i)
            f.values[static_cast<std::size_t>(i)] = std::cos(k * i * g.dx());
        return f;
    };
    // 6+6 = 12 > 10: the sum mode must be zeroed; 6-6 = 0 survives
    const SpectralField p = dealiased_product(cosine(6), cosine(6));
    CHECK(std::abs(p.coeffs[flat_index(g, {12, 0})]) == 0.0L);
    CHECK(std::abs(p.coeffs[0] - cplx(g.length / 2, 0)) < 1e-12L);
    // an input beyond the band is zeroed before multiplying
    const SpectralField q = dealiased_product(cosine(11), cosine(1));
    for (const auto& c : q.coeffs) CHECK(std::abs(c) < 1e-12L);
}

TEST_CASE("dealiased product is bilinear, symmetric, and truncation-idempotent") {
    GridSpec g{2, 16, 3.0};
    const RealField a = random_field(g, 1);
    const RealField b = random_field(g, 2);
    const RealField c = random_field(g, 3);

    const SpectralField ab = dealiased_product(a, b);
    const SpectralField ba = dealiased_product(b, a);
    for (std::size_t i = 0; i < ab.coeffs.size(); ++i)
        CHECK(std::abs(ab.coeffs[i] - ba.coeffs[i]) < 1e-12L);

    RealField apc(g);
    for (std::size_t i = 0; i < apc.values.size(); ++i)
        apc.values[i] = a.values[i] + 2.0L * c.values[i];
    const SpectralField lhs = dealiased_product(apc, b);
    const SpectralField cb = dealiased_product(c, b);
    for (std::size_t i = 0; i < lhs.coeffs.size(); ++i)
        CHECK(std::abs(lhs.coeffs[i] - (ab.coeffs[i] + real_t(2) * cb.coeffs[i])) < 1e-11L);

    SpectralField once = ab;
    dealias_in_place(once);
    for (std::size_t i = 0; i < once.coeffs.size(); ++i)
        CHECK(once.coeffs[i] == ab.coeffs[i]);
}

TEST_CASE("hermitian utilities detect and repair asymmetry") {
    GridSpec g{2, 8, 1.0};
    SpectralField f(g);
    f.coeffs[flat_index(g, {1, 2})] = cplx(1.0L, 0.5L);
    CHECK(!is_hermitian(f));
    enforce_hermitian(f);
    CHECK(is_hermitian(f, 1e-15L));
    CHECK(std::abs(f.coeffs[flat_index(g, {-1, -2})] -
                   std::conj(f.coeffs[flat_index(g, {1, 2})])) == 0.0L);
}
