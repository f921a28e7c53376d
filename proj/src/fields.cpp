#include "ascal/fields.hpp"

#include <cmath>

namespace ascal {

void GridSpec::validate() const {
    if (d != 1 && d != 2) throw ContractViolation("grid: dimension must be 1 or 2");
    if (n <= 0 || n % 2 != 0) throw ContractViolation("grid: N must be a positive even integer");
    if (!(length > 0.0)) throw ContractViolation("grid: L must be positive");
}

std::size_t flat_index(const GridSpec& g, std::array<int, 2> k) {
    auto axis = [&](int kk) {
        int i = kk >= 0 ? kk : kk + g.n;
        if (i < 0 || i >= g.n) throw ContractViolation("flat_index: mode out of range");
        return static_cast<std::size_t>(i);
    };
    if (g.d == 1) return axis(k[0]);
    return axis(k[0]) * static_cast<std::size_t>(g.n) + axis(k[1]);
}

real_t hermitian_defect(const SpectralField& f) {
    real_t scale = 0;
    for (const auto& c : f.coeffs) scale = std::max(scale, std::abs(c));
    if (scale == 0) return 0;
    real_t worst = 0;
    const int half = f.grid.n / 2;
    LatticeIterator it(f.grid);
    it.for_each([&](const LatticePoint& p) {
        // the mirror of a Nyquist index is itself
        std::array<int, 2> mk{};
        for (int a = 0; a < 2; ++a) mk[a] = p.k[a] == half ? half : -p.k[a];
        const std::size_t j = flat_index(f.grid, mk);
        const cplx defect = f.coeffs[p.flat] - std::conj(f.coeffs[j]);
        worst = std::max(worst, std::abs(defect));
    });
    return worst / scale;
}

bool is_hermitian(const SpectralField& f, real_t rel_tol) {
    return hermitian_defect(f) <= rel_tol;
}

void enforce_hermitian(SpectralField& f) {
    const int half = f.grid.n / 2;
    LatticeIterator it(f.grid);
    it.for_each([&](const LatticePoint& p) {
        std::array<int, 2> mk{};
        bool self = true;
        for (int a = 0; a < 2; ++a) {
            mk[a] = p.k[a] == half ? half : -p.k[a];
            if (mk[a] != p.k[a]) self = false;
        }
        const std::size_t j = flat_index(f.grid, mk);
        if (self) {
            f.coeffs[p.flat] = cplx(f.coeffs[p.flat].real(), 0);
        } else if (j > p.flat) {
            const cplx avg = (f.coeffs[p.flat] + std::conj(f.coeffs[j])) * real_t(0.5);
            f.coeffs[p.flat] = avg;
            f.coeffs[j] = std::conj(avg);
        }
    });
}

bool all_finite(const SpectralField& f) {
    for (const auto& c : f.coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

bool all_finite(const RealField& f) {
    for (const auto& v : f.values)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace ascal
