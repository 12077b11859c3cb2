#pragma once

#include <atomic>
#include <cstdio>

#include "bsq/norms.hpp"

namespace bsq {

// State of the viscous, non-diffusive Boussinesq system on the torus:
//
//   u_t - nu*Laplace(u) + u.grad(u) + grad(p) = rho e_2
//   rho_t + u.grad(rho) = 0,  div u = 0
//
// with the pressure eliminated by the Leray projection.  The velocity is
// divergence-free with zero mean; the density mean is a constant of motion.
struct SimState {
    double t = 0.0;
    SpectralVector u;
    SpectralScalar rho;
    double nu = 1.0;

    SimState() = default;
    SimState(double time, SpectralVector vel, SpectralScalar dens, double visc)
        : t(time), u(std::move(vel)), rho(std::move(dens)), nu(visc) {
        u.x.check_same_grid(rho);
        if (!(nu > 0.0)) throw DimensionError("viscosity must be positive");
    }

    const Grid& grid() const { return rho.grid(); }
};

// ---- right-hand-side pieces -------------------------------------------------

// P((rho - mean rho) e_2): the solenoidal part of the buoyancy force.  The
// fluctuation keeps the mean velocity from being accelerated, which on the
// torus has no boundary to stop it.
inline SpectralVector buoyancy_term(const SpectralScalar& rho) {
    SpectralScalar fluct = rho;
    fluct.data()[0] = Complex(0.0, 0.0);
    return leray_project(SpectralVector(SpectralScalar(rho.grid()), std::move(fluct)));
}

// u.grad(rho), dealiased.  Skew-symmetric against rho after truncation, so
// all L^p norms of the transported density are conserved.
inline SpectralScalar advect_scalar(const SpectralVector& u, const SpectralScalar& rho) {
    if (!(u.grid() == rho.grid())) throw DimensionError("velocity and density grids differ");
    SpectralScalar out = convective_derivative(u, rho);
    out.data()[0] = Complex(0.0, 0.0);  // exact for divergence-free u
    return out;
}

// P(u.grad(u)), dealiased; energy-neutral against u.
inline SpectralVector advect_velocity(const SpectralVector& u) {
    SpectralVector adv = leray_project(convective_derivative(u, u));
    adv.x.data()[0] = Complex(0.0, 0.0);
    adv.y.data()[0] = Complex(0.0, 0.0);
    return adv;
}

namespace detail {

// One evaluation of the non-stiff terms, sharing the physical velocity
// between both advections.  max_speed is the grid sup of |u|, used for the
// CFL advisory.
struct NonlinearEval {
    SpectralVector du;
    SpectralScalar drho;
    double max_speed = 0.0;
};

inline NonlinearEval nonlinear_terms(const SpectralVector& u, const SpectralScalar& rho) {
    const Grid& g = u.grid();
    SpectralVector um = dealias(u);
    std::vector<double> ux = to_physical(um.x);
    std::vector<double> uy = to_physical(um.y);

    double vmax = 0.0;
    for (size_t i = 0; i < ux.size(); ++i)
        vmax = std::max(vmax, ux[i] * ux[i] + uy[i] * uy[i]);

    NonlinearEval ev;
    ev.max_speed = std::sqrt(vmax);

    SpectralVector adv_u(convect_from_physical(g, ux, uy, um.x),
                         convect_from_physical(g, ux, uy, um.y));
    ev.du = leray_project(adv_u);
    ev.du *= -1.0;
    ev.du += buoyancy_term(rho);
    ev.du.x.data()[0] = Complex(0.0, 0.0);
    ev.du.y.data()[0] = Complex(0.0, 0.0);

    ev.drho = convect_from_physical(g, ux, uy, dealias(rho));
    ev.drho *= -1.0;
    ev.drho.data()[0] = Complex(0.0, 0.0);
    return ev;
}

// exp(-nu |k|^2 dt) per mode.
inline std::vector<double> viscous_factor(const Grid& g, double nu, double dt) {
    std::vector<double> e(static_cast<size_t>(g.size()));
    for (int i1 = 0; i1 < g.n; ++i1) {
        double k1 = g.freq(i1);
        for (int i2 = 0; i2 < g.n; ++i2) {
            double k2 = g.freq(i2);
            e[static_cast<size_t>(g.flat(i1, i2))] = std::exp(-nu * (k1 * k1 + k2 * k2) * dt);
        }
    }
    return e;
}

inline void scale_modes(SpectralVector& u, const std::vector<double>& e) {
    for (size_t i = 0; i < u.x.size(); ++i) {
        u.x.data()[i] *= e[i];
        u.y.data()[i] *= e[i];
    }
}

inline std::atomic<bool> cfl_warned{false};

}  // namespace detail

// Galerkin right-hand side: du = -nu*A u - P(u.grad u) + P(rho' e_2),
// drho = -u.grad(rho).
struct RhsValue {
    SpectralVector du;
    SpectralScalar drho;
};

inline RhsValue rhs(const SimState& state) {
    detail::NonlinearEval ev = detail::nonlinear_terms(state.u, state.rho);
    SpectralVector visc = stokes_apply(state.u, 1.0);
    visc *= -state.nu;
    ev.du += visc;
    ev.du.x.data()[0] = Complex(0.0, 0.0);
    ev.du.y.data()[0] = Complex(0.0, 0.0);
    return {std::move(ev.du), std::move(ev.drho)};
}

// Advisory CFL number dt * max|u| * n / (2 pi).
inline double advisory_cfl(const SimState& state, double dt) {
    SpectralVector um = dealias(state.u);
    std::vector<double> ux = to_physical(um.x);
    std::vector<double> uy = to_physical(um.y);
    double vmax = 0.0;
    for (size_t i = 0; i < ux.size(); ++i)
        vmax = std::max(vmax, std::sqrt(ux[i] * ux[i] + uy[i] * uy[i]));
    return dt * vmax * state.grid().n / kTwoPi;
}

// Integrating-factor RK4 step: the viscous multiplier exp(-nu|k|^2 dt) is
// applied exactly, the advection and buoyancy terms advance by classical
// RK4 in the integrating-factor variables.  An optional Galerkin cutoff m
// zeroes all |k|_inf > m modes of the result.
inline SimState step(const SimState& state, double dt, int galerkin_cutoff = 0) {
    if (!(dt != 0.0) || !std::isfinite(dt)) throw DimensionError("time step must be nonzero and finite");
    const Grid& g = state.grid();
    const double h = dt;

    std::vector<double> e_half = detail::viscous_factor(g, state.nu, 0.5 * h);
    std::vector<double> e_full(e_half.size());
    for (size_t i = 0; i < e_half.size(); ++i) e_full[i] = e_half[i] * e_half[i];

    // Stage 1.
    detail::NonlinearEval n1 = detail::nonlinear_terms(state.u, state.rho);
    double cfl = std::abs(h) * n1.max_speed * g.n / kTwoPi;
    if (cfl > 0.5 && !detail::cfl_warned.exchange(true)) {
        std::fprintf(stderr, "bsq: warning: CFL advisory exceeded (dt*max|u|*n/2pi = %.3f > 0.5) at t = %.6g\n",
                     cfl, state.t);
    }

    // Stage 2: u evaluated at t + h/2 in the decayed frame.
    SpectralVector s2u = state.u + (0.5 * h) * n1.du;
    detail::scale_modes(s2u, e_half);
    SpectralScalar s2r = state.rho + (0.5 * h) * n1.drho;
    detail::NonlinearEval n2 = detail::nonlinear_terms(s2u, s2r);

    // Stage 3.
    SpectralVector s3u = state.u;
    detail::scale_modes(s3u, e_half);
    s3u += (0.5 * h) * n2.du;
    SpectralScalar s3r = state.rho + (0.5 * h) * n2.drho;
    detail::NonlinearEval n3 = detail::nonlinear_terms(s3u, s3r);

    // Stage 4.
    SpectralVector s4u = state.u;
    detail::scale_modes(s4u, e_full);
    SpectralVector k3 = n3.du;
    detail::scale_modes(k3, e_half);
    s4u += h * k3;
    SpectralScalar s4r = state.rho + h * n3.drho;
    detail::NonlinearEval n4 = detail::nonlinear_terms(s4u, s4r);

    // Combination.
    SpectralVector unew = state.u;
    detail::scale_modes(unew, e_full);
    SpectralVector acc = n1.du;
    detail::scale_modes(acc, e_full);
    SpectralVector mid = n2.du + n3.du;
    detail::scale_modes(mid, e_half);
    acc += 2.0 * mid;
    acc += n4.du;
    unew += (h / 6.0) * acc;
    unew.x.data()[0] = Complex(0.0, 0.0);
    unew.y.data()[0] = Complex(0.0, 0.0);

    SpectralScalar rnew = state.rho;
    SpectralScalar racc = n1.drho + n4.drho;
    racc += 2.0 * (n2.drho + n3.drho);
    rnew += (h / 6.0) * racc;

    if (galerkin_cutoff > 0) {
        truncate_inplace(unew.x, galerkin_cutoff);
        truncate_inplace(unew.y, galerkin_cutoff);
        truncate_inplace(rnew, galerkin_cutoff);
    }

    if (!all_finite(unew) || !all_finite(rnew)) throw BlowUpError(state.t);
    return SimState(state.t + h, std::move(unew), std::move(rnew), state.nu);
}

// |dE/dt + nu*avg||grad u||^2 - avg<rho, u_2>| across one step, the discrete
// form of the identity (1/2) d/dt ||u||^2 + nu ||grad u||^2 = (rho, u.e2).
inline double energy_balance_residual(const SimState& before, const SimState& after) {
    double dt = after.t - before.t;
    auto grad_sq = [](const SpectralVector& u) {
        double s = 0.0;
        for (const SpectralScalar* c : {&u.x, &u.y}) {
            SpectralScalar gx = derivative(*c, 1);
            SpectralScalar gy = derivative(*c, 2);
            s += l2_inner(gx, gx) + l2_inner(gy, gy);
        }
        return s;
    };
    double e0 = 0.5 * l2_inner(before.u, before.u);
    double e1 = 0.5 * l2_inner(after.u, after.u);
    double diss = 0.5 * (grad_sq(before.u) + grad_sq(after.u));
    double forcing = 0.5 * (l2_inner(before.rho, before.u.y) + l2_inner(after.rho, after.u.y));
    return std::abs((e1 - e0) / dt + before.nu * diss - forcing);
}

// ---- compatibility-condition recursion ---------------------------------------

// Time derivatives of (u, rho) at the state's time, by Leibniz recursion on
// the projected system:
//
//   d_t^{j+1} u   = -nu A d_t^j u - sum_i C(j,i) P(d_t^i u . grad d_t^{j-i} u)
//                   + P((d_t^j rho)' e_2)
//   d_t^{j+1} rho = -sum_i C(j,i) d_t^i u . grad d_t^{j-i} rho
struct TimeDerivatives {
    int order = 0;
    std::vector<SpectralVector> u;    // d_t^j u, j = 0..order
    std::vector<SpectralScalar> rho;  // d_t^j rho
    std::vector<double> u_h1;         // H^1 norm per order (finite = in V)
    std::vector<double> rho_l2;       // L^2 norm per order
};

inline TimeDerivatives taylor_time_derivatives(const SimState& state, int order) {
    if (order < 0 || order > 4)
        throw UnsupportedOrderError("time-derivative recursion supports orders 0..4");

    static const int binom[5][5] = {
        {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};

    TimeDerivatives out;
    out.order = order;
    out.u.push_back(dealias(state.u));
    out.rho.push_back(dealias(state.rho));

    for (int j = 0; j < order; ++j) {
        SpectralVector du = stokes_apply(out.u[static_cast<size_t>(j)], 1.0);
        du *= -state.nu;
        for (int i = 0; i <= j; ++i) {
            SpectralVector adv = leray_project(convective_derivative(
                out.u[static_cast<size_t>(i)], out.u[static_cast<size_t>(j - i)]));
            adv *= -static_cast<double>(binom[j][i]);
            du += adv;
        }
        du += buoyancy_term(out.rho[static_cast<size_t>(j)]);
        du.x.data()[0] = Complex(0.0, 0.0);
        du.y.data()[0] = Complex(0.0, 0.0);

        SpectralScalar drho(state.grid());
        for (int i = 0; i <= j; ++i) {
            SpectralScalar adv = convective_derivative(out.u[static_cast<size_t>(i)],
                                                       out.rho[static_cast<size_t>(j - i)]);
            adv *= -static_cast<double>(binom[j][i]);
            drho += adv;
        }
        drho.data()[0] = Complex(0.0, 0.0);

        out.u.push_back(std::move(du));
        out.rho.push_back(std::move(drho));
    }

    for (int j = 0; j <= order; ++j) {
        out.u_h1.push_back(norm(out.u[static_cast<size_t>(j)], NormSpec::sobolev(1.0)));
        out.rho_l2.push_back(l2_norm(out.rho[static_cast<size_t>(j)]));
    }
    return out;
}

}  // namespace bsq
