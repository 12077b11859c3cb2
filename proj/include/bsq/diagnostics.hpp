#pragma once

#include "bsq/dynamics.hpp"

namespace bsq {

// Regularity exponents the norm ledger is evaluated at.
struct MonitorParams {
    double s_u = 1.0;
    double s_rho = 1.0;
    double epsilon = 1.0;  // W^{2,2+epsilon} exponent
};

// One time-stamped row of every monitored norm and balance residual.
struct DiagnosticsRecord {
    double t = 0.0;
    double kinetic_energy = 0.0;    // (1/2)||u||_{L^2}^2
    double grad_u_l2 = 0.0;         // ||grad u||_{L^2}
    double grad_u_inf = 0.0;        // ||grad u||_{L^inf}
    double au_minus_buoy_l2 = 0.0;  // ||A u - P(rho e_2)||_{L^2}
    double au_minus_buoy_h1 = 0.0;  // same in H^1 (the V-norm surrogate)
    double buoy_solenoidal = 0.0;   // ||P(rho e_2)||_{L^2}
    double q_residual = 0.0;        // ||Q(u.grad u)||_{L^2} = ||Q(grad p - rho e_2)||
    double rho_l1 = 0.0;
    double rho_l2 = 0.0;
    double rho_l4 = 0.0;
    double rho_linf = 0.0;
    double rho_h1 = 0.0;  // ||grad rho||_{L^2}
    double rho_h2 = 0.0;  // ||D^2 rho||_{L^2}
    double u_hs = 0.0;    // ||u||_{H^{s_u}}
    double rho_hs = 0.0;  // ||rho||_{H^{s_rho}}
    double u_w2p = 0.0;   // ||u||_{W^{2,2+epsilon}}
    double a_t = 0.0;     // ||u||_{W^{1,inf}} + ||u||_{W^{2,2+epsilon}}
    double b_t = 0.0;     // ||grad rho_0||_{L^2} * ||u||_{W^{2,2+epsilon}}
};

namespace detail {

inline double h1_seminorm(const SpectralVector& u) {
    double s = 0.0;
    for (const SpectralScalar* c : {&u.x, &u.y}) {
        SpectralScalar gx = derivative(*c, 1);
        SpectralScalar gy = derivative(*c, 2);
        s += l2_inner(gx, gx) + l2_inner(gy, gy);
    }
    return std::sqrt(std::max(0.0, s));
}

inline double h1_seminorm(const SpectralScalar& f) {
    SpectralScalar gx = derivative(f, 1);
    SpectralScalar gy = derivative(f, 2);
    return std::sqrt(std::max(0.0, l2_inner(gx, gx) + l2_inner(gy, gy)));
}

inline double h2_seminorm(const SpectralScalar& f) {
    double s = 0.0;
    for (const SpectralScalar& d : detail::second_derivatives(f)) s += l2_inner(d, d);
    return std::sqrt(std::max(0.0, s));
}

// P(rho e_2) with the mean mode passed through, the literal Leray image.
inline SpectralVector solenoidal_buoyancy(const SpectralScalar& rho) {
    return leray_project(SpectralVector(SpectralScalar(rho.grid()), rho));
}

}  // namespace detail

inline DiagnosticsRecord snapshot(const SimState& state, const MonitorParams& params,
                                  double grad_rho0_l2) {
    DiagnosticsRecord r;
    r.t = state.t;
    r.kinetic_energy = 0.5 * l2_inner(state.u, state.u);
    r.grad_u_l2 = detail::h1_seminorm(state.u);
    r.grad_u_inf = gradient_linf_norm(state.u);

    SpectralVector au = stokes_apply(state.u, 1.0);
    SpectralVector residual = au - buoyancy_term(state.rho);
    r.au_minus_buoy_l2 = l2_norm(residual);
    r.au_minus_buoy_h1 = norm(residual, NormSpec::sobolev(1.0));
    r.buoy_solenoidal = l2_norm(detail::solenoidal_buoyancy(state.rho));
    r.q_residual = l2_norm(q_project(convective_derivative(state.u, state.u)));

    r.rho_l1 = norm(state.rho, NormSpec::lebesgue(1.0));
    r.rho_l2 = norm(state.rho, NormSpec::lebesgue(2.0));
    r.rho_l4 = norm(state.rho, NormSpec::lebesgue(4.0));
    r.rho_linf = norm(state.rho, NormSpec::lebesgue(NormSpec::inf()));
    r.rho_h1 = detail::h1_seminorm(state.rho);
    r.rho_h2 = detail::h2_seminorm(state.rho);

    r.u_hs = norm(state.u, NormSpec::sobolev(params.s_u));
    r.rho_hs = norm(state.rho, NormSpec::sobolev(params.s_rho));
    r.u_w2p = norm(state.u, NormSpec::w2p(2.0 + params.epsilon));
    r.a_t = norm(state.u, NormSpec::w1inf()) + r.u_w2p;
    r.b_t = grad_rho0_l2 * r.u_w2p;
    return r;
}

// Standalone form: uses the state's own density gradient for b_t (exact at
// t = 0, where grad rho = grad rho_0).
inline DiagnosticsRecord snapshot(const SimState& state, const MonitorParams& params) {
    return snapshot(state, params, detail::h1_seminorm(state.rho));
}

// ---- conservation of the transported density ---------------------------------

struct ConservationReport {
    double drift_l1 = 0.0;
    double drift_l2 = 0.0;
    double drift_l4 = 0.0;
    double drift_linf = 0.0;
};

inline ConservationReport conservation_report(const std::vector<DiagnosticsRecord>& series) {
    if (series.empty()) throw EmptyInputError("conservation report needs at least one record");
    auto drift = [&](double DiagnosticsRecord::*field) {
        double base = series.front().*field;
        if (base == 0.0) return 0.0;
        double worst = 0.0;
        for (const DiagnosticsRecord& r : series)
            worst = std::max(worst, std::abs(r.*field - base) / base);
        return worst;
    };
    ConservationReport rep;
    rep.drift_l1 = drift(&DiagnosticsRecord::rho_l1);
    rep.drift_l2 = drift(&DiagnosticsRecord::rho_l2);
    rep.drift_l4 = drift(&DiagnosticsRecord::rho_l4);
    rep.drift_linf = drift(&DiagnosticsRecord::rho_linf);
    return rep;
}

// ---- Gronwall envelope for ||D^2 rho|| ----------------------------------------
//
// Fits the minimal C with  d/dt rho_h2 <= C (a_t rho_h2 + b_t)  at every
// interior sample, checks the fit is stable under halving the snapshot
// cadence, and verifies the integrated envelope
// rho_h2(t) <= (rho_h2(0) + C int b) exp(C int a).

struct GronwallReport {
    double fitted_c = 0.0;
    double fitted_c_coarse = 0.0;  // refit on every other record
    bool envelope_ok = false;
    bool cadence_stable = false;
    bool passed = false;
};

namespace detail {

inline double fit_gronwall_constant(const std::vector<DiagnosticsRecord>& s) {
    double c = 0.0;
    for (size_t i = 1; i + 1 < s.size(); ++i) {
        double dt = s[i + 1].t - s[i - 1].t;
        if (!(dt > 0.0)) throw OrderingError("diagnostics series must advance in time");
        double rate = (s[i + 1].rho_h2 - s[i - 1].rho_h2) / dt;
        if (rate <= 0.0) continue;
        double denom = s[i].a_t * s[i].rho_h2 + s[i].b_t;
        if (denom <= 0.0) return std::numeric_limits<double>::infinity();
        c = std::max(c, rate / denom);
    }
    return c;
}

}  // namespace detail

inline GronwallReport gronwall_check(const std::vector<DiagnosticsRecord>& series) {
    if (series.size() < 3)
        throw InsufficientDataError("gronwall check needs at least three records");

    GronwallReport rep;
    rep.fitted_c = detail::fit_gronwall_constant(series);

    std::vector<DiagnosticsRecord> coarse;
    for (size_t i = 0; i < series.size(); i += 2) coarse.push_back(series[i]);
    rep.fitted_c_coarse = coarse.size() >= 3 ? detail::fit_gronwall_constant(coarse) : rep.fitted_c;

    const double c = rep.fitted_c;
    bool finite = std::isfinite(c) && std::isfinite(rep.fitted_c_coarse);
    rep.cadence_stable = finite && rep.fitted_c_coarse <= 2.0 * c + 1e-12 &&
                         c <= 2.0 * rep.fitted_c_coarse + 1e-12;

    rep.envelope_ok = finite;
    if (finite) {
        double int_a = 0.0, int_b = 0.0;
        double h0 = series.front().rho_h2;
        for (size_t i = 1; i < series.size() && rep.envelope_ok; ++i) {
            double dt = series[i].t - series[i - 1].t;
            int_a += 0.5 * dt * (series[i - 1].a_t + series[i].a_t);
            int_b += 0.5 * dt * (series[i - 1].b_t + series[i].b_t);
            double envelope = (h0 + c * int_b) * std::exp(c * int_a);
            if (series[i].rho_h2 > envelope * (1.0 + 1e-9) + 1e-12) rep.envelope_ok = false;
        }
    }
    rep.passed = finite && rep.cadence_stable && rep.envelope_ok;
    return rep;
}

// ---- steady-state equivalence -------------------------------------------------

struct SteadyStateVerdict {
    double rho_cauchy_l2 = 0.0;          // max pairwise L^2 distance of late densities
    double buoy_solenoidal_final = 0.0;  // ||P(rho e_2)||_{L^2} at the last state
    double norm_preservation_gap = 0.0;  // | ||(I-P)(rho e_2)|| - ||rho_0|| |
    bool converged = false;
    double au_l2_final = 0.0;        // ||A u||_{L^2} at the last state
    double pressure_gap_final = 0.0; // ||grad p - rho_bar e_2||_{L^2} via the momentum equation
};

inline SteadyStateVerdict steady_state_equivalence(const std::vector<DiagnosticsRecord>& series,
                                                   const std::vector<SimState>& late_states,
                                                   double rho_cauchy_threshold = 1e-3,
                                                   double buoy_threshold = 1e-3) {
    if (late_states.size() < 2)
        throw InsufficientDataError("steady-state verdict needs at least two late states");
    if (series.empty()) throw InsufficientDataError("steady-state verdict needs the diagnostics series");

    SteadyStateVerdict v;
    for (size_t i = 0; i < late_states.size(); ++i)
        for (size_t j = i + 1; j < late_states.size(); ++j)
            v.rho_cauchy_l2 =
                std::max(v.rho_cauchy_l2, l2_norm(late_states[i].rho - late_states[j].rho));

    const SimState& last = late_states.back();
    SpectralVector buoy = detail::solenoidal_buoyancy(last.rho);
    v.buoy_solenoidal_final = l2_norm(buoy);

    double rho0_l2 = series.front().rho_l2;
    SpectralVector rho_e2(SpectralScalar(last.grid()), last.rho);
    v.norm_preservation_gap = std::abs(l2_norm(rho_e2 - buoy) - rho0_l2);

    double scale = rho0_l2 > 0.0 ? rho0_l2 : 1.0;
    v.converged = v.rho_cauchy_l2 < rho_cauchy_threshold * scale &&
                  v.buoy_solenoidal_final < buoy_threshold * scale;

    v.au_l2_final = l2_norm(stokes_apply(last.u, 1.0));

    // grad p - rho_bar e_2 = -u_t + nu Laplace(u) - u.grad(u), with rho_bar
    // the last density and u_t from the projected system.
    RhsValue f = rhs(last);
    SpectralVector gap = f.du;
    gap *= -1.0;
    gap += last.nu * laplacian(last.u);
    gap -= convective_derivative(last.u, last.u);
    v.pressure_gap_final = l2_norm(gap);
    return v;
}

}  // namespace bsq
