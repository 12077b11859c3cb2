#pragma once

#include <functional>
#include <memory>

#include "bsq/operators.hpp"

namespace bsq {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double wrap_2pi(double x) {
    double w = std::fmod(x, kTwoPi);
    return w < 0.0 ? w + kTwoPi : w;
}

// Smallest-magnitude representative of x modulo 2pi.
inline double wrap_pm_pi(double x) {
    double w = wrap_2pi(x);
    return w > 0.5 * kTwoPi ? w - kTwoPi : w;
}

// Lagrangian flow map eta(x, t): seeds are the initial positions, positions
// the current images, both in [0, 2pi)^2.
struct FlowMap {
    std::vector<Vec2> seeds;
    std::vector<Vec2> positions;
    double t = 0.0;
};

inline FlowMap lattice_flow_map(int m) {
    FlowMap fm;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            fm.seeds.push_back({kTwoPi * i / m, kTwoPi * j / m});
    fm.positions = fm.seeds;
    return fm;
}

inline FlowMap flow_map_from_points(std::vector<Vec2> pts) {
    FlowMap fm;
    fm.seeds = std::move(pts);
    fm.positions = fm.seeds;
    return fm;
}

// ---- off-grid evaluation -------------------------------------------------

enum class EvalMethod {
    oversampled,  // 4x zero-padded transform + bicubic interpolation (fast path)
    direct        // full Fourier summation, exact to rounding (oracle path)
};

namespace detail {

// Zero-pad onto a finer grid.  Nyquist rows are split half/half onto +-n/2
// of the fine grid so real-valuedness is preserved for arbitrary input.
inline SpectralScalar zero_pad(const SpectralScalar& f, int factor) {
    const Grid& g = f.grid();
    Grid big(g.n * factor);
    SpectralScalar out(big);
    const int half = g.n / 2;
    for (int k1 = -half; k1 < half; ++k1) {
        for (int k2 = -half; k2 < half; ++k2) {
            Complex c = f.coeff(k1, k2);
            if (c == Complex(0.0, 0.0)) continue;
            bool ny1 = (k1 == -half), ny2 = (k2 == -half);
            double w = (ny1 ? 0.5 : 1.0) * (ny2 ? 0.5 : 1.0);
            for (int s1 = 0; s1 < (ny1 ? 2 : 1); ++s1) {
                int kk1 = ny1 ? (s1 == 0 ? -half : half) : k1;
                for (int s2 = 0; s2 < (ny2 ? 2 : 1); ++s2) {
                    int kk2 = ny2 ? (s2 == 0 ? -half : half) : k2;
                    out.coeff(kk1, kk2) += w * c;
                }
            }
        }
    }
    return out;
}

// Catmull-Rom weights for offset xi in [0,1).
inline void catmull_rom_weights(double xi, double w[4]) {
    w[0] = 0.5 * xi * ((2.0 - xi) * xi - 1.0);
    w[1] = 0.5 * (xi * xi * (3.0 * xi - 5.0) + 2.0);
    w[2] = 0.5 * xi * ((4.0 - 3.0 * xi) * xi + 1.0);
    w[3] = 0.5 * xi * xi * (xi - 1.0);
}

}  // namespace detail

// Periodic bicubic interpolant over the 4x oversampled sample grid.
class PeriodicInterpolant {
  public:
    explicit PeriodicInterpolant(const SpectralScalar& f, int oversample = 4)
        : n_(f.n() * oversample), samples_(to_physical(detail::zero_pad(f, oversample))) {}

    double operator()(double x, double y) const {
        double gx = wrap_2pi(x) * n_ / kTwoPi;
        double gy = wrap_2pi(y) * n_ / kTwoPi;
        int ix = static_cast<int>(gx), iy = static_cast<int>(gy);
        if (ix >= n_) ix -= n_;  // wrap_2pi can round to exactly 2pi
        if (iy >= n_) iy -= n_;
        double wx[4], wy[4];
        detail::catmull_rom_weights(gx - ix, wx);
        detail::catmull_rom_weights(gy - iy, wy);
        double v = 0.0;
        for (int a = 0; a < 4; ++a) {
            int i1 = (ix + a - 1 + n_) % n_;
            double row = 0.0;
            for (int b = 0; b < 4; ++b) {
                int i2 = (iy + b - 1 + n_) % n_;
                row += wy[b] * samples_[static_cast<size_t>(i1) * n_ + i2];
            }
            v += wx[a] * row;
        }
        return v;
    }

  private:
    int n_;
    std::vector<double> samples_;
};

namespace detail {

inline double direct_eval(const SpectralScalar& f, double x, double y) {
    const Grid& g = f.grid();
    double v = 0.0;
    for (int i1 = 0; i1 < g.n; ++i1) {
        double k1 = g.freq(i1);
        for (int i2 = 0; i2 < g.n; ++i2) {
            const Complex& c = f.at(i1, i2);
            if (c == Complex(0.0, 0.0)) continue;
            double phase = k1 * x + g.freq(i2) * y;
            v += c.real() * std::cos(phase) - c.imag() * std::sin(phase);
        }
    }
    return v;
}

}  // namespace detail

inline std::vector<double> scalar_at(const SpectralScalar& f, const std::vector<Vec2>& points,
                                     EvalMethod method = EvalMethod::oversampled) {
    std::vector<double> out;
    out.reserve(points.size());
    if (method == EvalMethod::direct) {
        for (const Vec2& p : points) out.push_back(detail::direct_eval(f, p.x, p.y));
    } else {
        PeriodicInterpolant interp(f);
        for (const Vec2& p : points) out.push_back(interp(p.x, p.y));
    }
    return out;
}

inline std::vector<Vec2> velocity_at(const SpectralVector& u, const std::vector<Vec2>& points,
                                     EvalMethod method = EvalMethod::oversampled) {
    std::vector<Vec2> out(points.size());
    std::vector<double> vx = scalar_at(u.x, points, method);
    std::vector<double> vy = scalar_at(u.y, points, method);
    for (size_t i = 0; i < points.size(); ++i) out[i] = {vx[i], vy[i]};
    return out;
}

// Supplies the velocity field at requested times; returns nullptr for times
// it cannot serve.
using VelocityProvider = std::function<std::shared_ptr<const SpectralVector>(double)>;

inline VelocityProvider frozen_velocity_provider(SpectralVector u) {
    auto held = std::make_shared<const SpectralVector>(std::move(u));
    return [held](double) { return held; };
}

// Classical RK4 advance of every seed through the provided velocity field.
inline FlowMap advance_flowmap(const FlowMap& fm, const VelocityProvider& provider, double dt) {
    auto fetch = [&](double t) {
        std::shared_ptr<const SpectralVector> u = provider(t);
        if (!u) throw MissingVelocityError("velocity provider has no field at t = " + std::to_string(t));
        return u;
    };
    std::shared_ptr<const SpectralVector> u0 = fetch(fm.t);
    std::shared_ptr<const SpectralVector> uh = fetch(fm.t + 0.5 * dt);
    std::shared_ptr<const SpectralVector> u1 = fetch(fm.t + dt);

    PeriodicInterpolant f0x(u0->x), f0y(u0->y);
    PeriodicInterpolant fhx(uh->x), fhy(uh->y);
    PeriodicInterpolant f1x(u1->x), f1y(u1->y);

    FlowMap out = fm;
    out.t = fm.t + dt;
    for (size_t i = 0; i < fm.positions.size(); ++i) {
        const Vec2 p = fm.positions[i];
        Vec2 k1{f0x(p.x, p.y), f0y(p.x, p.y)};
        Vec2 q{p.x + 0.5 * dt * k1.x, p.y + 0.5 * dt * k1.y};
        Vec2 k2{fhx(q.x, q.y), fhy(q.x, q.y)};
        q = {p.x + 0.5 * dt * k2.x, p.y + 0.5 * dt * k2.y};
        Vec2 k3{fhx(q.x, q.y), fhy(q.x, q.y)};
        q = {p.x + dt * k3.x, p.y + dt * k3.y};
        Vec2 k4{f1x(q.x, q.y), f1y(q.x, q.y)};
        out.positions[i] = {
            wrap_2pi(p.x + dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x)),
            wrap_2pi(p.y + dt / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y))};
    }
    return out;
}

// max over seeds of |rho(eta(x,t), t) - rho_0(x)|: the density should be
// exactly transported along characteristics.
inline double transport_error(const FlowMap& fm, const SpectralScalar& rho_t, double t_of_rho,
                              const SpectralScalar& rho_0) {
    if (std::abs(fm.t - t_of_rho) > 1e-9 * std::max(1.0, std::abs(fm.t)))
        throw ConsistencyError("flow-map time does not match the density snapshot time");
    PeriodicInterpolant now(rho_t), initial(rho_0);
    double worst = 0.0;
    for (size_t i = 0; i < fm.seeds.size(); ++i) {
        double a = now(fm.positions[i].x, fm.positions[i].y);
        double b = initial(fm.seeds[i].x, fm.seeds[i].y);
        worst = std::max(worst, std::abs(a - b));
    }
    return worst;
}

// Determinant of the finite-difference Jacobian of eta over an m x m seed
// lattice (area preservation: det = 1 for incompressible flow).
inline std::vector<double> jacobian_determinants(const FlowMap& fm, int m) {
    if (static_cast<size_t>(m) * m != fm.positions.size())
        throw DimensionError("flow map does not hold an m x m seed lattice");
    const double h = kTwoPi / m;
    auto pos = [&](int i, int j) -> const Vec2& {
        return fm.positions[static_cast<size_t>(((i + m) % m)) * m + ((j + m) % m)];
    };
    std::vector<double> dets;
    dets.reserve(fm.positions.size());
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            // displacement differences, nearest periodic image; the identity
            // part contributes 2h along the differencing axis
            double j11 = (wrap_pm_pi(pos(i + 1, j).x - pos(i - 1, j).x - 2.0 * h) + 2.0 * h) / (2.0 * h);
            double j21 = wrap_pm_pi(pos(i + 1, j).y - pos(i - 1, j).y) / (2.0 * h);
            double j12 = wrap_pm_pi(pos(i, j + 1).x - pos(i, j - 1).x) / (2.0 * h);
            double j22 = (wrap_pm_pi(pos(i, j + 1).y - pos(i, j - 1).y - 2.0 * h) + 2.0 * h) / (2.0 * h);
            dets.push_back(j11 * j22 - j12 * j21);
        }
    }
    return dets;
}

}  // namespace bsq
