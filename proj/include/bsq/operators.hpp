#pragma once

#include "bsq/fft.hpp"

namespace bsq {

// ---- dealiasing -----------------------------------------------------------

inline void dealias_inplace(SpectralScalar& f) {
    const Grid& g = f.grid();
    for (int i1 = 0; i1 < g.n; ++i1) {
        int k1 = g.freq(i1);
        for (int i2 = 0; i2 < g.n; ++i2) {
            if (!g.dealias_keep(k1, g.freq(i2))) f.at(i1, i2) = Complex(0.0, 0.0);
        }
    }
}

inline void dealias_inplace(SpectralVector& u) {
    dealias_inplace(u.x);
    dealias_inplace(u.y);
}

inline SpectralScalar dealias(SpectralScalar f) {
    dealias_inplace(f);
    return f;
}

inline SpectralVector dealias(SpectralVector u) {
    dealias_inplace(u);
    return u;
}

// Optional explicit Galerkin cutoff: zero all |k|_inf > m modes.
inline void truncate_inplace(SpectralScalar& f, int m) {
    const Grid& g = f.grid();
    for (int i1 = 0; i1 < g.n; ++i1) {
        int k1 = std::abs(g.freq(i1));
        for (int i2 = 0; i2 < g.n; ++i2) {
            if (std::max(k1, std::abs(g.freq(i2))) > m) f.at(i1, i2) = Complex(0.0, 0.0);
        }
    }
}

// ---- spectral derivatives -------------------------------------------------

// d/dx_axis as the multiplier i*k_axis, axis in {1, 2}.
inline SpectralScalar derivative(const SpectralScalar& f, int axis) {
    if (axis != 1 && axis != 2) throw DimensionError("derivative axis must be 1 or 2");
    const Grid& g = f.grid();
    SpectralScalar out(g);
    for (int i1 = 0; i1 < g.n; ++i1) {
        double k1 = g.freq(i1);
        for (int i2 = 0; i2 < g.n; ++i2) {
            double k = (axis == 1) ? k1 : g.freq(i2);
            out.at(i1, i2) = Complex(0.0, k) * f.at(i1, i2);
        }
    }
    return out;
}

inline SpectralVector gradient(const SpectralScalar& f) {
    return SpectralVector(derivative(f, 1), derivative(f, 2));
}

// Laplace(f): the multiplier -|k|^2.
inline SpectralScalar laplacian(const SpectralScalar& f) {
    const Grid& g = f.grid();
    SpectralScalar out(g);
    for (int i1 = 0; i1 < g.n; ++i1) {
        double k1 = g.freq(i1);
        for (int i2 = 0; i2 < g.n; ++i2) {
            double k2 = g.freq(i2);
            out.at(i1, i2) = -(k1 * k1 + k2 * k2) * f.at(i1, i2);
        }
    }
    return out;
}

inline SpectralVector laplacian(const SpectralVector& u) {
    return SpectralVector(laplacian(u.x), laplacian(u.y));
}

// ---- Leray projection -----------------------------------------------------

// P = I - k k^T / |k|^2 on each k != 0; the mean mode passes through
// unchanged (constants are both curl- and divergence-free on the torus).
inline SpectralVector leray_project(const SpectralVector& v) {
    const Grid& g = v.grid();
    SpectralVector out(g);
    for (int i1 = 0; i1 < g.n; ++i1) {
        double k1 = g.freq(i1);
        for (int i2 = 0; i2 < g.n; ++i2) {
            double k2 = g.freq(i2);
            Complex vx = v.x.at(i1, i2), vy = v.y.at(i1, i2);
            double ksq = k1 * k1 + k2 * k2;
            if (ksq == 0.0) {
                out.x.at(i1, i2) = vx;
                out.y.at(i1, i2) = vy;
            } else {
                Complex kdotv = (k1 * vx + k2 * vy) / ksq;
                out.x.at(i1, i2) = vx - k1 * kdotv;
                out.y.at(i1, i2) = vy - k2 * kdotv;
            }
        }
    }
    return out;
}

// ---- fractional Laplacian and Stokes powers -------------------------------

namespace detail {

inline void check_mean_free_for_negative_power(const SpectralScalar& f, double s) {
    if (s < 0.0 && std::abs(f.data()[0]) > 1e-12 * std::max(1e-300, max_abs_coeff(f)))
        throw SingularMultiplierError("negative-order multiplier on a field with nonzero mean");
}

}  // namespace detail

// Lambda^s = |k|^s; the zero mode is kept for s >= 0 and requires a
// mean-zero field for s < 0.
inline SpectralScalar fractional_laplacian(const SpectralScalar& f, double s) {
    detail::check_mean_free_for_negative_power(f, s);
    const Grid& g = f.grid();
    SpectralScalar out(g);
    for (int i1 = 0; i1 < g.n; ++i1) {
        double k1 = g.freq(i1);
        for (int i2 = 0; i2 < g.n; ++i2) {
            double k2 = g.freq(i2);
            double ksq = k1 * k1 + k2 * k2;
            if (ksq == 0.0)
                out.at(i1, i2) = (s < 0.0) ? Complex(0.0, 0.0) : f.at(i1, i2);
            else
                out.at(i1, i2) = std::pow(ksq, 0.5 * s) * f.at(i1, i2);
        }
    }
    return out;
}

inline SpectralVector fractional_laplacian(const SpectralVector& u, double s) {
    return SpectralVector(fractional_laplacian(u.x, s), fractional_laplacian(u.y, s));
}

// A^power with A = -P Laplace: Leray projection followed by the diagonal
// multiplier |k|^{2*power}.  A and its powers commute with P on the torus.
inline SpectralVector stokes_apply(const SpectralVector& u, double power) {
    SpectralVector p = leray_project(u);
    detail::check_mean_free_for_negative_power(p.x, power);
    detail::check_mean_free_for_negative_power(p.y, power);
    const Grid& g = u.grid();
    for (int i1 = 0; i1 < g.n; ++i1) {
        double k1 = g.freq(i1);
        for (int i2 = 0; i2 < g.n; ++i2) {
            double k2 = g.freq(i2);
            double ksq = k1 * k1 + k2 * k2;
            if (ksq == 0.0) {
                if (power < 0.0) {
                    p.x.at(i1, i2) = Complex(0.0, 0.0);
                    p.y.at(i1, i2) = Complex(0.0, 0.0);
                }
            } else {
                double mult = std::pow(ksq, power);
                p.x.at(i1, i2) *= mult;
                p.y.at(i1, i2) *= mult;
            }
        }
    }
    return p;
}

// ---- pseudo-spectral products ---------------------------------------------
//
// Products of 2/3-truncated fields, multiplied on the n x n grid and
// re-truncated, are exactly alias-free: the aliased images of |k| <= 2n/3
// land outside the mask.

inline SpectralScalar dealiased_product(const SpectralScalar& a, const SpectralScalar& b) {
    a.check_same_grid(b);
    std::vector<double> pa = to_physical(dealias(a));
    std::vector<double> pb = to_physical(dealias(b));
    for (size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
    SpectralScalar out = to_spectral(a.grid(), pa);
    dealias_inplace(out);
    return out;
}

namespace detail {

// u . grad(f) from physical velocity samples; f is truncated before
// differentiation and the result is truncated.
inline SpectralScalar convect_from_physical(const Grid& g, const std::vector<double>& ux,
                                            const std::vector<double>& uy,
                                            const SpectralScalar& f_masked) {
    std::vector<double> g1 = to_physical(derivative(f_masked, 1));
    std::vector<double> g2 = to_physical(derivative(f_masked, 2));
    for (size_t i = 0; i < g1.size(); ++i) g1[i] = ux[i] * g1[i] + uy[i] * g2[i];
    SpectralScalar out = to_spectral(g, g1);
    dealias_inplace(out);
    return out;
}

}  // namespace detail

// u . grad(f) for a scalar f, dealiased.
inline SpectralScalar convective_derivative(const SpectralVector& u, const SpectralScalar& f) {
    u.x.check_same_grid(f);
    SpectralVector um = dealias(u);
    std::vector<double> ux = to_physical(um.x);
    std::vector<double> uy = to_physical(um.y);
    return detail::convect_from_physical(u.grid(), ux, uy, dealias(f));
}

// a . grad(b) for vector fields, componentwise, dealiased, unprojected.
inline SpectralVector convective_derivative(const SpectralVector& a, const SpectralVector& b) {
    a.x.check_same_grid(b.x);
    SpectralVector am = dealias(a);
    std::vector<double> ax = to_physical(am.x);
    std::vector<double> ay = to_physical(am.y);
    SpectralVector bm = dealias(b);
    return SpectralVector(detail::convect_from_physical(a.grid(), ax, ay, bm.x),
                          detail::convect_from_physical(a.grid(), ax, ay, bm.y));
}

}  // namespace bsq
