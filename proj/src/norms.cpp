#include "ascal/norms.hpp"

#include <cmath>

namespace ascal {

namespace {

constexpr real_t kPi = 3.141592653589793238462643383279502884L;

real_t log_bracket(real_t xi_norm) { return 0.5L * std::log1p(xi_norm * xi_norm); }

// (sum_k exp(r * e_k))^{1/r} via log-sum-exp; e_k = -inf terms are skipped.
class LseNorm {
  public:
    explicit LseNorm(double r) : r_(static_cast<real_t>(r)), is_max_(std::isinf(r)) {}

    void add(real_t exponent) {
        if (std::isinf(exponent) && exponent < 0) return;
        if (exponent > max_) {
            if (count_ > 0 && !is_max_)
                sum_ = sum_ * std::exp(r_ * (max_ - exponent)) + real_t(1);
            else
                sum_ = 1;
            max_ = exponent;
        } else if (!is_max_) {
            sum_ += std::exp(r_ * (exponent - max_));
        }
        ++count_;
    }

    real_t value() const {
        if (count_ == 0) return 0;
        if (is_max_) return std::exp(max_);
        return std::exp(max_ + std::log(sum_) / r_);
    }

  private:
    real_t r_;
    bool is_max_;
    real_t max_ = -std::numeric_limits<real_t>::infinity();
    real_t sum_ = 0;
    std::size_t count_ = 0;
};

}  // namespace

real_t fourier_lebesgue_norm(const SpectralField& f, double kappa_s, double r) {
    if (!(r >= 1.0)) throw ContractViolation("norm: r must be >= 1");
    LseNorm acc(r);
    LatticeIterator it(f.grid);
    it.for_each([&](const LatticePoint& p) {
        const real_t amp = std::abs(f.coeffs[p.flat]);
        if (amp == 0) return;
        acc.add(static_cast<real_t>(kappa_s) * log_bracket(p.xi_norm) + std::log(amp));
    });
    return acc.value();
}

real_t gevrey_norm(const SpectralField& f, const NormSpec& n, const NoiseSpec& noise) {
    n.validate();
    LseNorm acc(n.r);
    const real_t kappa_s = static_cast<real_t>(n.kappa) * static_cast<real_t>(noise.s);
    LatticeIterator it(f.grid);
    it.for_each([&](const LatticePoint& p) {
        const real_t amp = std::abs(f.coeffs[p.flat]);
        if (amp == 0) return;
        acc.add(static_cast<real_t>(n.a) * noise.base(p.xi_norm) +
                kappa_s * log_bracket(p.xi_norm) + std::log(amp));
    });
    return acc.value();
}

real_t x_norm(const SpectralField& f, const XNormSpec& x, const NoiseSpec& noise, double gamma) {
    x.validate(gamma, f.grid.d);
    const real_t tier1 = gevrey_norm(f, NormSpec{x.a, x.sigma_r, x.r}, noise);
    if (gamma <= 1.0) return tier1;
    return tier1 + gevrey_norm(f, NormSpec{x.a, x.sigma_q, x.tier2_exponent()}, noise);
}

double mass(const SpectralField& f) { return static_cast<double>(f.zero_mode().real()); }

SecondMomentResult second_moment(const RealField& f, std::array<double, 2> center) {
    const GridSpec& g = f.grid;
    g.validate();
    for (int a = 0; a < g.d; ++a)
        if (center[a] < 0 || center[a] >= g.length)
            throw ContractViolation("second_moment: center outside box");

    const real_t L = static_cast<real_t>(g.length);
    const real_t dx = static_cast<real_t>(g.dx());
    const real_t shell_edge = L / 4;

    real_t moment = 0, total_abs = 0, shell_abs = 0;
    const int n = g.n;
    auto accumulate = [&](real_t r2, real_t max_axis_dist, real_t v) {
        moment += r2 * v;
        const real_t av = std::abs(v);
        total_abs += av;
        if (max_axis_dist > shell_edge) shell_abs += av;
    };
    if (g.d == 1) {
        for (int i = 0; i < n; ++i) {
            const real_t w = std::remainder(i * dx - static_cast<real_t>(center[0]), L);
            accumulate(w * w, std::abs(w), f.values[static_cast<std::size_t>(i)]);
        }
    } else {
        std::size_t flat = 0;
        for (int i = 0; i < n; ++i) {
            const real_t wi = std::remainder(i * dx - static_cast<real_t>(center[0]), L);
            for (int j = 0; j < n; ++j, ++flat) {
                const real_t wj = std::remainder(j * dx - static_cast<real_t>(center[1]), L);
                accumulate(wi * wi + wj * wj, std::max(std::abs(wi), std::abs(wj)),
                           f.values[flat]);
            }
        }
    }
    SecondMomentResult res;
    res.value = static_cast<double>(moment * static_cast<real_t>(g.cell_volume()));
    res.boundary_fraction =
        total_abs > 0 ? static_cast<double>(shell_abs / total_abs) : 0.0;
    res.boundary_warning = res.boundary_fraction > 0.01;
    return res;
}

double virial_rate_expected(double mass, double nu) {
    return mass * (8.0 * static_cast<double>(kPi) * nu - mass) / (2.0 * static_cast<double>(kPi));
}

real_t audit_energy(const SpectralField& mu, double phi, double kappa, double r,
                    const NoiseSpec& noise) {
    const real_t norm = gevrey_norm(mu, NormSpec{phi, kappa, r}, noise);
    if (norm == 0) return 0;
    return std::exp(static_cast<real_t>(r) * std::log(norm)) / static_cast<real_t>(r);
}

real_t audit_dissipation(const SpectralField& mu, double phi, double kappa, double r,
                         const NoiseSpec& noise, double beta) {
    if (std::isinf(r)) throw ContractViolation("audit: r must be finite");
    const real_t rr = static_cast<real_t>(r);
    const real_t weight_pow = (static_cast<real_t>(kappa) + 2 / rr) * static_cast<real_t>(noise.s);
    real_t sum = 0;
    LatticeIterator it(mu.grid);
    it.for_each([&](const LatticePoint& p) {
        const real_t amp = std::abs(mu.coeffs[p.flat]);
        if (amp == 0) return;
        const real_t e = static_cast<real_t>(phi) * noise.base(p.xi_norm) +
                         weight_pow * log_bracket(p.xi_norm) + std::log(amp);
        sum += std::exp(rr * e);
    });
    const real_t damping = static_cast<real_t>(noise.nu) * static_cast<real_t>(noise.nu) / 2 -
                           static_cast<real_t>(beta);
    return -damping * sum;
}

real_t audit_nonlinear(const SpectralField& mu, const SpectralField& b_hat, double phi,
                       double kappa, double r, const NoiseSpec& noise) {
    if (std::isinf(r)) throw ContractViolation("audit: r must be finite");
    const real_t rr = static_cast<real_t>(r);
    const real_t kappa_s = static_cast<real_t>(kappa) * static_cast<real_t>(noise.s);
    real_t sum = 0;
    LatticeIterator it(mu.grid);
    it.for_each([&](const LatticePoint& p) {
        const real_t amp_b = std::abs(b_hat.coeffs[p.flat]);
        if (amp_b == 0) return;
        const real_t w = static_cast<real_t>(phi) * noise.base(p.xi_norm) +
                         kappa_s * log_bracket(p.xi_norm);
        real_t e = w + std::log(amp_b);
        if (rr > 1) {
            const real_t amp_mu = std::abs(mu.coeffs[p.flat]);
            if (amp_mu == 0) return;
            e += (rr - 1) * (w + std::log(amp_mu));
        }
        sum += std::exp(e);
    });
    return sum;
}

}  // namespace ascal
