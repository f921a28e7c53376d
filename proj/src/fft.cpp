#include "ascal/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace ascal {

namespace {

// Plan creation is not thread-safe; new-array execution is. Plans are created
// once per (d, n, sign) with FFTW_ESTIMATE so the algorithm choice, and hence
// the bit pattern of every result, is reproducible.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache c;
        return c;
    }

    fftwl_plan get(const GridSpec& g, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        const Key key{g.d, g.n, sign};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cplx> dummy(g.size());
        auto* buf = reinterpret_cast<fftwl_complex*>(dummy.data());
        fftwl_plan p = nullptr;
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        if (g.d == 1) {
            p = fftwl_plan_dft_1d(g.n, buf, buf, sign, flags);
        } else {
            p = fftwl_plan_dft_2d(g.n, g.n, buf, buf, sign, flags);
        }
        if (!p) throw std::runtime_error("fftw plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

  private:
    struct Key {
        int d, n, sign;
        bool operator<(const Key& o) const {
            return std::tie(d, n, sign) < std::tie(o.d, o.n, o.sign);
        }
    };
    std::mutex mu_;
    std::map<Key, fftwl_plan> plans_;
};

}  // namespace

void c2c_forward(const GridSpec& g, const cplx* in, cplx* out) {
    fftwl_plan p = PlanCache::instance().get(g, FFTW_FORWARD);
    fftwl_execute_dft(p, reinterpret_cast<fftwl_complex*>(const_cast<cplx*>(in)),
                      reinterpret_cast<fftwl_complex*>(out));
}

void c2c_backward(const GridSpec& g, const cplx* in, cplx* out) {
    fftwl_plan p = PlanCache::instance().get(g, FFTW_BACKWARD);
    fftwl_execute_dft(p, reinterpret_cast<fftwl_complex*>(const_cast<cplx*>(in)),
                      reinterpret_cast<fftwl_complex*>(out));
}

SpectralField forward_transform(const RealField& f) {
    f.grid.validate();
    if (!all_finite(f)) throw ContractViolation("forward_transform: input not finite");
    SpectralField out(f.grid);
    std::vector<cplx> in(f.grid.size());
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = cplx(f.values[i], 0);
    c2c_forward(f.grid, in.data(), out.coeffs.data());
    const real_t w = static_cast<real_t>(f.grid.cell_volume());
    for (auto& c : out.coeffs) c *= w;
    return out;
}

RealField inverse_transform(const SpectralField& F) {
    F.grid.validate();
    if (!is_hermitian(F))
        throw ContractViolation("inverse_transform: non-Hermitian coefficients");
    std::vector<cplx> tmp(F.grid.size());
    c2c_backward(F.grid, F.coeffs.data(), tmp.data());
    RealField out(F.grid);
    const real_t w = real_t(1) / static_cast<real_t>(F.grid.volume());
    for (std::size_t i = 0; i < tmp.size(); ++i) out.values[i] = tmp[i].real() * w;
    return out;
}

bool mode_is_dealiased(const GridSpec& g, std::array<int, 2> k) {
    const int kb = g.dealias_limit();
    for (int a = 0; a < g.d; ++a)
        if (std::abs(k[a]) > kb) return true;
    return false;
}

void dealias_in_place(SpectralField& f) {
    LatticeIterator it(f.grid);
    it.for_each([&](const LatticePoint& p) {
        if (mode_is_dealiased(f.grid, p.k)) f.coeffs[p.flat] = cplx(0, 0);
    });
}

SpectralField dealiased_product_spectral(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid == b.grid)) throw ContractViolation("dealiased_product: grid mismatch");
    SpectralField fa = a;
    SpectralField fb = b;
    dealias_in_place(fa);
    dealias_in_place(fb);

    const GridSpec& g = a.grid;
    std::vector<cplx> pa(g.size()), pb(g.size());
    c2c_backward(g, fa.coeffs.data(), pa.data());
    c2c_backward(g, fb.coeffs.data(), pb.data());
    const real_t inv_vol = real_t(1) / static_cast<real_t>(g.volume());
    for (std::size_t i = 0; i < pa.size(); ++i) pa[i] = (pa[i] * inv_vol) * (pb[i] * inv_vol);

    SpectralField out(g);
    c2c_forward(g, pa.data(), out.coeffs.data());
    const real_t w = static_cast<real_t>(g.cell_volume());
    for (auto& c : out.coeffs) c *= w;
    dealias_in_place(out);
    return out;
}

SpectralField dealiased_product(const RealField& a, const RealField& b) {
    if (!(a.grid == b.grid)) throw ContractViolation("dealiased_product: grid mismatch");
    return dealiased_product_spectral(forward_transform(a), forward_transform(b));
}

}  // namespace ascal
