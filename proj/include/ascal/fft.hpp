#ifndef ASCAL_FFT_HPP
#define ASCAL_FFT_HPP

#include "ascal/fields.hpp"

namespace ascal {

// Transform convention: coeffs(k) = (L/N)^d * sum_x f(x) e^{-i x.xi(k)}, the
// quadrature discretization of f_hat(xi) = integral f e^{-ix.xi} dx, so the
// zero mode equals the physical integral (the mass).
SpectralField forward_transform(const RealField& f);

// Exact inverse: f(x) = L^{-d} * sum_k coeffs(k) e^{+i xi(k).x}.
// Rejects non-Hermitian input (the result would not be a real scalar).
RealField inverse_transform(const SpectralField& F);

// Unnormalized c2c transforms on raw coefficient arrays; building block for
// the two above and for velocity evaluation inside the dynamics.
void c2c_forward(const GridSpec& g, const cplx* in, cplx* out);
void c2c_backward(const GridSpec& g, const cplx* in, cplx* out);

bool mode_is_dealiased(const GridSpec& g, std::array<int, 2> k);
void dealias_in_place(SpectralField& f);

// 2/3-rule product: both inputs band-limited (spectra zeroed beyond N/3 per
// axis), pointwise multiply in physical space, truncate the result again.
SpectralField dealiased_product(const RealField& a, const RealField& b);

// Same product when the factors are already available spectrally.
SpectralField dealiased_product_spectral(const SpectralField& a, const SpectralField& b);

}  // namespace ascal

#endif
