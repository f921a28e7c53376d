#ifndef ASCAL_FIELDS_HPP
#define ASCAL_FIELDS_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ascal {

// Spectral arithmetic runs in extended precision: Gevrey weights e^{a(1+|xi|^s)}
// eat mantissa bits fast, and the extra exponent range delays overflow of
// intermediate Gamma^{-1} amplifications.
using real_t = long double;
using cplx = std::complex<real_t>;

struct ContractViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Periodic box [0,L)^d sampled on N points per axis. Lattice wavevectors are
// xi(k) = 2*pi*k/L with integer k per axis in (-N/2, N/2].
struct GridSpec {
    int d = 2;
    int n = 32;
    double length = 2.0 * 3.14159265358979323846;

    std::size_t size() const {
        std::size_t s = 1;
        for (int i = 0; i < d; ++i) s *= static_cast<std::size_t>(n);
        return s;
    }
    double dx() const { return length / n; }
    // quadrature weight (L/N)^d
    double cell_volume() const {
        double v = 1.0;
        for (int i = 0; i < d; ++i) v *= dx();
        return v;
    }
    double volume() const {
        double v = 1.0;
        for (int i = 0; i < d; ++i) v *= length;
        return v;
    }
    // per-axis integer mode from storage index (FFT ordering 0..N-1)
    int mode_of(int idx) const { return idx <= n / 2 ? idx : idx - n; }
    // 2/3-rule band limit: modes with |k_i| > floor(N/3) get zeroed in products
    int dealias_limit() const { return n / 3; }

    void validate() const;
    bool operator==(const GridSpec&) const = default;
};

// Indexing helpers shared by all modules: storage is row-major over d axes,
// last axis contiguous, each axis in FFT order.
struct LatticePoint {
    std::array<int, 2> k{0, 0};   // integer modes, k[1] unused when d == 1
    std::array<real_t, 2> xi{0, 0};
    real_t xi_norm = 0;
    std::size_t flat = 0;
};

class LatticeIterator {
  public:
    explicit LatticeIterator(const GridSpec& g) : grid_(g) {}

    template <class F>
    void for_each(F&& f) const {
        const int n = grid_.n;
        const real_t two_pi_over_l =
            2.0L * 3.141592653589793238462643383279502884L / static_cast<real_t>(grid_.length);
        LatticePoint p;
        if (grid_.d == 1) {
            for (int i = 0; i < n; ++i) {
                p.k = {grid_.mode_of(i), 0};
                p.xi = {two_pi_over_l * p.k[0], 0};
                p.xi_norm = std::abs(p.xi[0]);
                p.flat = static_cast<std::size_t>(i);
                f(p);
            }
        } else {
            std::size_t flat = 0;
            for (int i = 0; i < n; ++i) {
                const int ki = grid_.mode_of(i);
                for (int j = 0; j < n; ++j, ++flat) {
                    const int kj = grid_.mode_of(j);
                    p.k = {ki, kj};
                    p.xi = {two_pi_over_l * ki, two_pi_over_l * kj};
                    p.xi_norm = std::hypot(p.xi[0], p.xi[1]);
                    p.flat = flat;
                    f(p);
                }
            }
        }
    }

  private:
    GridSpec grid_;
};

struct SpectralField {
    GridSpec grid;
    std::vector<cplx> coeffs;

    SpectralField() = default;
    explicit SpectralField(const GridSpec& g) : grid(g), coeffs(g.size(), cplx(0, 0)) {}

    cplx zero_mode() const { return coeffs.empty() ? cplx(0, 0) : coeffs[0]; }
};

struct RealField {
    GridSpec grid;
    std::vector<real_t> values;

    RealField() = default;
    explicit RealField(const GridSpec& g) : grid(g), values(g.size(), 0.0L) {}
};

// Flat index of the lattice site with per-axis integer modes k (each in
// (-N/2, N/2]).
std::size_t flat_index(const GridSpec& g, std::array<int, 2> k);

// Max |coeffs(-k) - conj(coeffs(k))| relative to the field scale.
real_t hermitian_defect(const SpectralField& f);
bool is_hermitian(const SpectralField& f, real_t rel_tol = 1e-10L);

// Forces exact Hermitian symmetry (averages mirror pairs, realifies
// self-conjugate modes). Used when synthesizing data, not in the dynamics.
void enforce_hermitian(SpectralField& f);

bool all_finite(const SpectralField& f);
bool all_finite(const RealField& f);

}  // namespace ascal

#endif
