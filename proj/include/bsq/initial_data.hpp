#pragma once

#include <cstdint>

#include "bsq/operators.hpp"
#include "bsq/norms.hpp"

namespace bsq {

namespace detail {

// splitmix64; phases depend on (seed, k) only, so refining the grid keeps
// the shared modes identical.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline double unit_double(uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline double mode_phase(uint64_t seed, int k1, int k2, uint64_t salt) {
    uint64_t h = mix64(seed ^ mix64(static_cast<uint64_t>(static_cast<int64_t>(k1)) ^
                                    mix64(static_cast<uint64_t>(static_cast<int64_t>(k2)) ^ salt)));
    return kTwoPi * unit_double(h);
}

}  // namespace detail

// Random mean-zero field "just inside" H^s: coefficient magnitude
// |k|^{-(s+1.01)} with seeded phases, Hermitian-symmetrized, supported on
// the dealias mask.  The shell sum sum_k |k|^{2 sigma} |c|^2 converges iff
// sigma < s + 0.01, so H^sigma norms stabilize under grid refinement for
// sigma < s and keep growing for sigma > s.
inline SpectralScalar synthesize_scalar(const Grid& g, double s, uint64_t seed,
                                        uint64_t salt = 0) {
    if (!(s > 0.0)) throw InvalidExponentError("synthesis regularity exponent must be positive");
    SpectralScalar f(g);
    const double decay = s + 1.01;
    for (int k1 = -g.n / 2; k1 < g.n / 2; ++k1) {
        for (int k2 = -g.n / 2; k2 < g.n / 2; ++k2) {
            if (!g.dealias_keep(k1, k2)) continue;
            // fill the half-space, mirror the conjugate
            if (k1 < 0 || (k1 == 0 && k2 <= 0)) continue;
            double mag = std::pow(std::sqrt(static_cast<double>(k1) * k1 +
                                            static_cast<double>(k2) * k2),
                                  -decay);
            double phase = detail::mode_phase(seed, k1, k2, salt);
            Complex c = mag * Complex(std::cos(phase), std::sin(phase));
            f.coeff(k1, k2) = c;
            f.coeff(-k1, -k2) = std::conj(c);
        }
    }
    return f;
}

inline SpectralVector synthesize_divfree_vector(const Grid& g, double s, uint64_t seed) {
    SpectralVector v(synthesize_scalar(g, s, seed, 0x517cc1b727220a95ULL),
                     synthesize_scalar(g, s, seed, 0x2545f4914f6cdd1dULL));
    return leray_project(v);
}

inline SpectralScalar synthesize_field(const Grid& g, double s, uint64_t seed) {
    return synthesize_scalar(g, s, seed);
}

inline SpectralVector synthesize_field_vector(const Grid& g, double s, uint64_t seed) {
    return synthesize_divfree_vector(g, s, seed);
}

// Taylor-Green vortex (sin x1 cos x2, -cos x1 sin x2): divergence-free,
// Stokes eigenfield with |k|^2 = 2, self-advection a pure gradient.
inline SpectralVector taylor_green_velocity(const Grid& g, double amplitude = 1.0) {
    SpectralVector u(g);
    const Complex iq(0.0, 0.25 * amplitude);
    // sin x1 cos x2 = (1/2)[sin(x1+x2) + sin(x1-x2)]
    u.x.coeff(1, 1) = -iq;
    u.x.coeff(-1, -1) = iq;
    u.x.coeff(1, -1) = -iq;
    u.x.coeff(-1, 1) = iq;
    // -cos x1 sin x2 = -(1/2)[sin(x1+x2) - sin(x1-x2)]
    u.y.coeff(1, 1) = iq;
    u.y.coeff(-1, -1) = -iq;
    u.y.coeff(1, -1) = -iq;
    u.y.coeff(-1, 1) = iq;
    return u;
}

// Stratified density amplitude*sin(x2); with u = 0 this is an exact steady
// state (the buoyancy is a pure gradient, balanced by pressure).
inline SpectralScalar stratified_density(const Grid& g, double amplitude = 1.0) {
    SpectralScalar rho(g);
    rho.coeff(0, 1) = Complex(0.0, -0.5 * amplitude);
    rho.coeff(0, -1) = Complex(0.0, 0.5 * amplitude);
    return rho;
}

inline SpectralScalar scaled_to_norm(SpectralScalar f, const NormSpec& spec, double target) {
    double cur = norm(f, spec);
    if (cur > 0.0) f *= target / cur;
    return f;
}

inline SpectralVector scaled_to_norm(SpectralVector v, const NormSpec& spec, double target) {
    double cur = norm(v, spec);
    if (cur > 0.0) v *= target / cur;
    return v;
}

}  // namespace bsq
