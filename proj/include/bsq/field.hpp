#pragma once

#include <complex>
#include <vector>

#include "bsq/grid.hpp"

namespace bsq {

using Complex = std::complex<double>;

// Real scalar field on the torus, stored as complex Fourier coefficients
// c(k) with f(x) = sum_k c(k) exp(i k.x).  Real-valuedness is the Hermitian
// symmetry c(-k) = conj(c(k)).
class SpectralScalar {
  public:
    SpectralScalar() = default;
    explicit SpectralScalar(Grid g) : grid_(g), c_(static_cast<size_t>(g.size())) {}

    const Grid& grid() const { return grid_; }
    int n() const { return grid_.n; }

    Complex* data() { return c_.data(); }
    const Complex* data() const { return c_.data(); }
    size_t size() const { return c_.size(); }

    Complex& at(int i1, int i2) { return c_[static_cast<size_t>(grid_.flat(i1, i2))]; }
    const Complex& at(int i1, int i2) const { return c_[static_cast<size_t>(grid_.flat(i1, i2))]; }

    // Frequency-indexed access, k in [-n/2, n/2-1].
    Complex& coeff(int k1, int k2) { return at(grid_.index_of(k1), grid_.index_of(k2)); }
    const Complex& coeff(int k1, int k2) const { return at(grid_.index_of(k1), grid_.index_of(k2)); }

    double mean() const { return c_.empty() ? 0.0 : c_[0].real(); }

    SpectralScalar& operator+=(const SpectralScalar& o) {
        check_same_grid(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    SpectralScalar& operator-=(const SpectralScalar& o) {
        check_same_grid(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    SpectralScalar& operator*=(double a) {
        for (auto& v : c_) v *= a;
        return *this;
    }

    friend SpectralScalar operator+(SpectralScalar a, const SpectralScalar& b) { return a += b; }
    friend SpectralScalar operator-(SpectralScalar a, const SpectralScalar& b) { return a -= b; }
    friend SpectralScalar operator*(double a, SpectralScalar f) { return f *= a; }
    friend SpectralScalar operator*(SpectralScalar f, double a) { return f *= a; }

    void check_same_grid(const SpectralScalar& o) const {
        if (!(grid_ == o.grid_)) throw DimensionError("fields live on different grids");
    }

  private:
    Grid grid_;
    std::vector<Complex> c_;
};

// Two-component real vector field (velocity, buoyancy force, ...).
struct SpectralVector {
    SpectralScalar x, y;

    SpectralVector() = default;
    explicit SpectralVector(Grid g) : x(g), y(g) {}
    SpectralVector(SpectralScalar fx, SpectralScalar fy) : x(std::move(fx)), y(std::move(fy)) {
        x.check_same_grid(y);
    }

    const Grid& grid() const { return x.grid(); }
    int n() const { return x.n(); }

    SpectralVector& operator+=(const SpectralVector& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    SpectralVector& operator-=(const SpectralVector& o) {
        x -= o.x;
        y -= o.y;
        return *this;
    }
    SpectralVector& operator*=(double a) {
        x *= a;
        y *= a;
        return *this;
    }

    friend SpectralVector operator+(SpectralVector a, const SpectralVector& b) { return a += b; }
    friend SpectralVector operator-(SpectralVector a, const SpectralVector& b) { return a -= b; }
    friend SpectralVector operator*(double a, SpectralVector v) { return v *= a; }
    friend SpectralVector operator*(SpectralVector v, double a) { return v *= a; }
};

// ---- coefficient-space inner products ----------------------------------
//
// Plancherel on the 2pi-torus: (f, g)_{L^2} = (2pi)^2 sum_k f(k) conj(g(k)).

inline double l2_inner(const SpectralScalar& f, const SpectralScalar& g) {
    f.check_same_grid(g);
    double s = 0.0;
    const Complex* a = f.data();
    const Complex* b = g.data();
    for (size_t i = 0; i < f.size(); ++i) s += (a[i] * std::conj(b[i])).real();
    return kTwoPi * kTwoPi * s;
}

inline double l2_inner(const SpectralVector& u, const SpectralVector& v) {
    return l2_inner(u.x, v.x) + l2_inner(u.y, v.y);
}

inline double l2_norm(const SpectralScalar& f) { return std::sqrt(std::max(0.0, l2_inner(f, f))); }
inline double l2_norm(const SpectralVector& u) { return std::sqrt(std::max(0.0, l2_inner(u, u))); }

// ---- structural checks ---------------------------------------------------

inline double max_abs_coeff(const SpectralScalar& f) {
    double m = 0.0;
    for (size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f.data()[i]));
    return m;
}

// Largest |c(-k) - conj(c(k))| over all modes (0 for a real-valued field).
inline double hermitian_defect(const SpectralScalar& f) {
    const Grid& g = f.grid();
    double d = 0.0;
    for (int i1 = 0; i1 < g.n; ++i1) {
        int m1 = (g.n - i1) % g.n;
        for (int i2 = 0; i2 < g.n; ++i2) {
            int m2 = (g.n - i2) % g.n;
            d = std::max(d, std::abs(f.at(m1, m2) - std::conj(f.at(i1, i2))));
        }
    }
    return d;
}

// max_k |k.u(k)| / max_k |u(k)| -- spectral divergence, relative.
inline double divergence_ratio(const SpectralVector& u) {
    const Grid& g = u.grid();
    double div = 0.0, mag = 0.0;
    for (int i1 = 0; i1 < g.n; ++i1) {
        double k1 = g.freq(i1);
        for (int i2 = 0; i2 < g.n; ++i2) {
            double k2 = g.freq(i2);
            Complex d = k1 * u.x.at(i1, i2) + k2 * u.y.at(i1, i2);
            div = std::max(div, std::abs(d));
            mag = std::max({mag, std::abs(u.x.at(i1, i2)), std::abs(u.y.at(i1, i2))});
        }
    }
    return mag > 0.0 ? div / mag : 0.0;
}

inline bool all_finite(const SpectralScalar& f) {
    for (size_t i = 0; i < f.size(); ++i) {
        const Complex& v = f.data()[i];
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

inline bool all_finite(const SpectralVector& u) { return all_finite(u.x) && all_finite(u.y); }

}  // namespace bsq
