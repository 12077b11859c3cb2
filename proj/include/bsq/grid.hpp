#pragma once

#include <cmath>
#include <cstdlib>

#include "bsq/errors.hpp"

namespace bsq {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Uniform n x n grid on the 2pi-periodic torus.
//
// Physical nodes:  x_j = 2*pi*j/n, j = 0..n-1 per axis.
// Wavevectors:     k in [-n/2, n/2-1] per axis, stored in the usual FFT
//                  order (0, 1, ..., n/2-1, -n/2, ..., -1), row-major over
//                  (k1, k2).
struct Grid {
    int n = 0;

    Grid() = default;
    explicit Grid(int modes) : n(modes) {
        if (n < 8 || n % 2 != 0) throw DimensionError("grid size must be an even integer >= 8");
    }

    int size() const { return n * n; }

    // Storage index -> integer frequency.
    int freq(int i) const { return i < n / 2 ? i : i - n; }

    // Integer frequency -> storage index.
    int index_of(int k) const { return k >= 0 ? k : k + n; }

    int flat(int i1, int i2) const { return i1 * n + i2; }

    double node(int j) const { return kTwoPi * j / n; }

    // 2/3-rule mask: a mode survives nonlinear products iff |k1|,|k2| <= n/3.
    bool dealias_keep(int k1, int k2) const {
        return 3 * std::abs(k1) <= n && 3 * std::abs(k2) <= n;
    }

    bool operator==(const Grid&) const = default;
};

}  // namespace bsq
