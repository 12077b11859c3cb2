#pragma once

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

#include "bsq/field.hpp"

namespace bsq {
namespace detail {

// Process-wide FFTW plan cache, one plan per (n, direction).  Plans are
// created with FFTW_UNALIGNED so they can be re-executed on any buffer;
// fftw_execute_dft on distinct buffers is thread-safe.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache c;
        return c;
    }

    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<Complex> in(static_cast<size_t>(n) * n), out(static_cast<size_t>(n) * n);
        fftw_plan p = fftw_plan_dft_2d(n, n, reinterpret_cast<fftw_complex*>(in.data()),
                                       reinterpret_cast<fftw_complex*>(out.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

  private:
    PlanCache() = default;
    ~PlanCache() {
        for (auto& [k, p] : plans_) fftw_destroy_plan(p);
    }
    std::mutex mu_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

inline void execute(int n, int sign, const Complex* in, Complex* out) {
    fftw_plan p = PlanCache::instance().get(n, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

}  // namespace detail

// Inverse transform: samples f(x_j) = sum_k c(k) exp(i k.x_j).  The input
// must be Hermitian-symmetric (real field); violations surface as imaginary
// sample content and are rejected.
inline std::vector<double> to_physical(const SpectralScalar& f) {
    const int n = f.n();
    std::vector<Complex> buf(f.size());
    detail::execute(n, FFTW_BACKWARD, f.data(), buf.data());

    double max_im = 0.0, max_abs = 0.0;
    for (const Complex& v : buf) {
        max_im = std::max(max_im, std::abs(v.imag()));
        max_abs = std::max(max_abs, std::abs(v));
    }
    if (max_im > 1e-8 * max_abs && max_im > 1e-300)
        throw SymmetryError("coefficients violate Hermitian symmetry (imaginary physical samples)");

    std::vector<double> out(f.size());
    for (size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
    return out;
}

// Forward transform with the 1/n^2 normalization matching to_physical.
inline SpectralScalar to_spectral(const Grid& g, const std::vector<double>& samples) {
    if (samples.size() != static_cast<size_t>(g.size()))
        throw DimensionError("sample array size does not match grid");
    std::vector<Complex> buf(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) buf[i] = Complex(samples[i], 0.0);
    SpectralScalar out(g);
    detail::execute(g.n, FFTW_FORWARD, buf.data(), out.data());
    const double scale = 1.0 / (static_cast<double>(g.n) * g.n);
    for (size_t i = 0; i < out.size(); ++i) out.data()[i] *= scale;
    return out;
}

}  // namespace bsq
