#include "ascal/multipliers.hpp"

#include <cmath>

namespace ascal {

real_t symbol_log_value(const MultiplierSymbol& m, real_t xi_norm) {
    const real_t b = m.noise.base(xi_norm);
    switch (m.kind) {
        case MultiplierSymbol::Kind::A:
            return 2 * std::log(b);
        case MultiplierSymbol::Kind::SqrtA:
            return std::log(b);
        case MultiplierSymbol::Kind::Semigroup: {
            const real_t nu = static_cast<real_t>(m.noise.nu);
            real_t lv = -(nu * nu * static_cast<real_t>(m.tau) / 2) * b * b;
            if (m.chi > 0.0 && xi_norm > 0)
                lv -= static_cast<real_t>(m.chi) * static_cast<real_t>(m.tau) *
                      std::pow(xi_norm, static_cast<real_t>(m.lambda));
            return lv;
        }
        case MultiplierSymbol::Kind::Gamma:
            return -static_cast<real_t>(m.noise.nu) * static_cast<real_t>(m.w) * b;
        case MultiplierSymbol::Kind::GammaInverse:
            return static_cast<real_t>(m.noise.nu) * static_cast<real_t>(m.w) * b;
        case MultiplierSymbol::Kind::GevreyWeight:
            return static_cast<real_t>(m.a) * b;
        case MultiplierSymbol::Kind::FractionalLaplacian:
            if (xi_norm == 0) return 0;
            return -static_cast<real_t>(m.chi) * static_cast<real_t>(m.tau) *
                   std::pow(xi_norm, static_cast<real_t>(m.lambda));
    }
    return 0;
}

SpectralField apply_multiplier(const SpectralField& f, const MultiplierSymbol& m, double log_cap) {
    SpectralField out(f.grid);
    LatticeIterator it(f.grid);
    it.for_each([&](const LatticePoint& p) {
        const real_t lv = symbol_log_value(m, p.xi_norm);
        if (lv > static_cast<real_t>(log_cap))
            throw AmplificationOverflow(p.k, static_cast<double>(lv));
        out.coeffs[p.flat] = f.coeffs[p.flat] * std::exp(lv);
    });
    return out;
}

}  // namespace ascal
