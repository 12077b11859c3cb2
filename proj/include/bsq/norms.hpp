#pragma once

#include <limits>
#include <utility>

#include "bsq/operators.hpp"

namespace bsq {

// ---- norm specifications --------------------------------------------------

struct NormSpec {
    enum class Kind { Sobolev, Lebesgue, W1Inf, W2P };

    Kind kind = Kind::Lebesgue;
    double s = 0.0;  // Sobolev order
    double p = 2.0;  // Lebesgue exponent, may be +inf

    static NormSpec sobolev(double s) { return {Kind::Sobolev, s, 2.0}; }
    static NormSpec lebesgue(double p) {
        if (!(p >= 1.0)) throw InvalidSpecError("Lebesgue exponent must satisfy p >= 1");
        return {Kind::Lebesgue, 0.0, p};
    }
    static NormSpec w1inf() { return {Kind::W1Inf, 0.0, inf()}; }
    static NormSpec w2p(double p) {
        if (!(p >= 1.0)) throw InvalidSpecError("Sobolev-Lebesgue exponent must satisfy p >= 1");
        return {Kind::W2P, 0.0, p};
    }

    static double inf() { return std::numeric_limits<double>::infinity(); }
};

namespace detail {

// Pointwise Euclidean magnitude of a list of component fields.
inline std::vector<double> magnitude_samples(const std::vector<const SpectralScalar*>& comps) {
    std::vector<double> mag;
    for (const SpectralScalar* c : comps) {
        std::vector<double> s = to_physical(*c);
        if (mag.empty()) {
            mag.assign(s.size(), 0.0);
        }
        for (size_t i = 0; i < s.size(); ++i) mag[i] += s[i] * s[i];
    }
    for (double& v : mag) v = std::sqrt(v);
    return mag;
}

// ((2pi/n)^2 sum |f|^p)^{1/p}, or the grid sup for p = inf.
inline double lp_quadrature(const std::vector<double>& mag, int n, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : mag) m = std::max(m, v);
        return m;
    }
    double sum = 0.0;
    for (double v : mag) sum += std::pow(v, p);
    double cell = (kTwoPi / n) * (kTwoPi / n);
    return std::pow(cell * sum, 1.0 / p);
}

inline double lp_of(const std::vector<const SpectralScalar*>& comps, int n, double p) {
    return lp_quadrature(magnitude_samples(comps), n, p);
}

inline double sobolev_sq(const SpectralScalar& f, double s) {
    const Grid& g = f.grid();
    double sum = 0.0;
    for (int i1 = 0; i1 < g.n; ++i1) {
        double k1 = g.freq(i1);
        for (int i2 = 0; i2 < g.n; ++i2) {
            double k2 = g.freq(i2);
            double w = std::pow(1.0 + k1 * k1 + k2 * k2, s);
            sum += w * std::norm(f.at(i1, i2));
        }
    }
    return kTwoPi * kTwoPi * sum;
}

inline std::vector<SpectralScalar> first_derivatives(const SpectralScalar& f) {
    std::vector<SpectralScalar> d;
    d.push_back(derivative(f, 1));
    d.push_back(derivative(f, 2));
    return d;
}

// Full second-derivative tensor; the mixed entry appears twice so the
// Frobenius magnitude matches the Hessian matrix norm.
inline std::vector<SpectralScalar> second_derivatives(const SpectralScalar& f) {
    SpectralScalar fx = derivative(f, 1);
    SpectralScalar fy = derivative(f, 2);
    std::vector<SpectralScalar> d;
    d.push_back(derivative(fx, 1));
    d.push_back(derivative(fx, 2));
    d.push_back(derivative(fy, 1));
    d.push_back(derivative(fy, 2));
    return d;
}

inline std::vector<const SpectralScalar*> ptrs(const std::vector<SpectralScalar>& v) {
    std::vector<const SpectralScalar*> p;
    for (const auto& f : v) p.push_back(&f);
    return p;
}

}  // namespace detail

// ---- L^infinity helpers (grid sup) -----------------------------------------

inline double linf_norm(const SpectralScalar& f) {
    return detail::lp_of({&f}, f.n(), NormSpec::inf());
}

inline double linf_norm(const SpectralVector& u) {
    return detail::lp_of({&u.x, &u.y}, u.n(), NormSpec::inf());
}

// sup of the Frobenius magnitude of the Jacobian.
inline double gradient_linf_norm(const SpectralVector& u) {
    std::vector<SpectralScalar> d;
    for (const SpectralScalar* c : {&u.x, &u.y}) {
        d.push_back(derivative(*c, 1));
        d.push_back(derivative(*c, 2));
    }
    return detail::lp_of(detail::ptrs(d), u.n(), NormSpec::inf());
}

inline double gradient_linf_norm(const SpectralScalar& f) {
    return detail::lp_of(detail::ptrs(detail::first_derivatives(f)), f.n(), NormSpec::inf());
}

// ---- the norm evaluator -----------------------------------------------------

inline double norm(const SpectralScalar& f, const NormSpec& spec) {
    switch (spec.kind) {
        case NormSpec::Kind::Sobolev:
            return std::sqrt(detail::sobolev_sq(f, spec.s));
        case NormSpec::Kind::Lebesgue:
            if (!(spec.p >= 1.0)) throw InvalidSpecError("Lebesgue exponent must satisfy p >= 1");
            return detail::lp_of({&f}, f.n(), spec.p);
        case NormSpec::Kind::W1Inf:
            return linf_norm(f) + gradient_linf_norm(f);
        case NormSpec::Kind::W2P: {
            if (!(spec.p >= 1.0)) throw InvalidSpecError("Sobolev-Lebesgue exponent must satisfy p >= 1");
            double l0 = detail::lp_of({&f}, f.n(), spec.p);
            double l1 = detail::lp_of(detail::ptrs(detail::first_derivatives(f)), f.n(), spec.p);
            double l2 = detail::lp_of(detail::ptrs(detail::second_derivatives(f)), f.n(), spec.p);
            return l0 + l1 + l2;
        }
    }
    throw InvalidSpecError("unknown norm kind");
}

inline double norm(const SpectralVector& u, const NormSpec& spec) {
    switch (spec.kind) {
        case NormSpec::Kind::Sobolev: {
            double sq = detail::sobolev_sq(u.x, spec.s) + detail::sobolev_sq(u.y, spec.s);
            return std::sqrt(sq);
        }
        case NormSpec::Kind::Lebesgue:
            if (!(spec.p >= 1.0)) throw InvalidSpecError("Lebesgue exponent must satisfy p >= 1");
            return detail::lp_of({&u.x, &u.y}, u.n(), spec.p);
        case NormSpec::Kind::W1Inf:
            return linf_norm(u) + gradient_linf_norm(u);
        case NormSpec::Kind::W2P: {
            if (!(spec.p >= 1.0)) throw InvalidSpecError("Sobolev-Lebesgue exponent must satisfy p >= 1");
            double l0 = detail::lp_of({&u.x, &u.y}, u.n(), spec.p);
            std::vector<SpectralScalar> d1, d2;
            for (const SpectralScalar* c : {&u.x, &u.y}) {
                auto g1 = detail::first_derivatives(*c);
                d1.insert(d1.end(), std::make_move_iterator(g1.begin()), std::make_move_iterator(g1.end()));
                auto g2 = detail::second_derivatives(*c);
                d2.insert(d2.end(), std::make_move_iterator(g2.begin()), std::make_move_iterator(g2.end()));
            }
            return l0 + detail::lp_of(detail::ptrs(d1), u.n(), spec.p) +
                   detail::lp_of(detail::ptrs(d2), u.n(), spec.p);
        }
    }
    throw InvalidSpecError("unknown norm kind");
}

// ---- Q projection -----------------------------------------------------------
//
// Qf = grad(psi) with Laplace(psi) = div f and psi pinned by zero mean; on
// the torus this is the curl-free part k (k.f)/|k|^2, the complement of the
// Leray projection on mean-zero fields.
inline SpectralVector q_project(const SpectralVector& f) {
    const Grid& g = f.grid();
    SpectralVector out(g);
    for (int i1 = 0; i1 < g.n; ++i1) {
        double k1 = g.freq(i1);
        for (int i2 = 0; i2 < g.n; ++i2) {
            double k2 = g.freq(i2);
            double ksq = k1 * k1 + k2 * k2;
            if (ksq == 0.0) {
                out.x.at(i1, i2) = Complex(0.0, 0.0);
                out.y.at(i1, i2) = Complex(0.0, 0.0);
            } else {
                Complex kdotf = (k1 * f.x.at(i1, i2) + k2 * f.y.at(i1, i2)) / ksq;
                out.x.at(i1, i2) = k1 * kdotf;
                out.y.at(i1, i2) = k2 * kdotf;
            }
        }
    }
    return out;
}

// ---- Kato-Ponce commutator residual ----------------------------------------

struct CommutatorReport {
    double residual_norm = 0.0;  // || Lambda^s(u.grad rho) - u.grad(Lambda^s rho) ||_{L^2}
    double bound_value = 0.0;    // the s-range product-of-norms majorant
    double ratio = 0.0;          // residual / bound (0 when bound vanishes)
};

inline CommutatorReport commutator_residual(const SpectralVector& u, const SpectralScalar& rho,
                                            double s) {
    if (!(s > 0.0 && s < 2.0) || s == 1.0)
        throw UnsupportedExponentError("commutator exponent must lie in (0,2) \\ {1}");

    SpectralScalar adv = convective_derivative(u, rho);
    SpectralScalar lhs = fractional_laplacian(adv, s);
    SpectralScalar rho_s = fractional_laplacian(dealias(rho), s);
    SpectralScalar rhs = convective_derivative(u, rho_s);

    CommutatorReport rep;
    rep.residual_norm = l2_norm(lhs - rhs);
    if (s < 1.0) {
        rep.bound_value = gradient_linf_norm(u) * l2_norm(rho_s) +
                          norm(u, NormSpec::sobolev(2.0)) * norm(rho, NormSpec::sobolev(s));
    } else {
        rep.bound_value =
            norm(u, NormSpec::sobolev(s + 1.0)) * norm(rho, NormSpec::sobolev(s));
    }
    rep.ratio = rep.bound_value > 0.0 ? rep.residual_norm / rep.bound_value : 0.0;
    return rep;
}

// ---- mixed space-time norms --------------------------------------------------
//
// (int value(t)^q dt)^{1/q} by trapezoidal quadrature over time samples.
inline double mixed_time_norm(const std::vector<std::pair<double, double>>& samples, double q) {
    if (!(q >= 1.0)) throw InvalidSpecError("time exponent must satisfy q >= 1");
    for (size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].first < samples[i - 1].first)
            throw OrderingError("time samples must be nondecreasing");
    }
    double integral = 0.0;
    for (size_t i = 1; i < samples.size(); ++i) {
        double dt = samples[i].first - samples[i - 1].first;
        double a = std::pow(samples[i - 1].second, q);
        double b = std::pow(samples[i].second, q);
        integral += 0.5 * dt * (a + b);
    }
    return std::pow(integral, 1.0 / q);
}

}  // namespace bsq
