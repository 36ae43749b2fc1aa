#pragma once

// Random generators and independent oracles shared by the test binaries.
// Oracles here never call into the library's ratio/coefficient code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "conegeom/cone_core.hpp"
#include "conegeom/matrix_analysis.hpp"

namespace conegeom::testing {

using Rng = std::mt19937_64;

/// One entry drawn from a mix of uniform [0,1] and log-uniform
/// [1e-6, 1e6] magnitudes; zero with probability `zero_prob`.
inline double mixed_entry(Rng& rng, double zero_prob) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(rng) < zero_prob)
        return 0.0;
    if (u(rng) < 0.5)
        return u(rng);
    std::uniform_real_distribution<double> e(-6.0, 6.0);
    return std::pow(10.0, e(rng));
}

inline std::vector<double> random_entries(Rng& rng, std::size_t dim, double zero_prob) {
    std::vector<double> v(dim);
    do {
        for (auto& x : v)
            x = mixed_entry(rng, zero_prob);
    } while (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; }));
    return v;
}

inline ConeVector random_cone_vector(Rng& rng, std::size_t dim, double zero_prob = 0.2) {
    return ConeVector(random_entries(rng, dim, zero_prob));
}

inline std::vector<double> positive_entries(Rng& rng, std::size_t dim, double lo = 0.1, double hi = 10.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(dim);
    for (auto& x : v)
        x = u(rng);
    return v;
}

inline NonnegativeMatrix random_positive_matrix(Rng& rng, std::size_t d, double lo = 0.1, double hi = 10.0) {
    return {d, positive_entries(rng, d * d, lo, hi)};
}

/// Random matrix with a random zero pattern and no zero column.
inline NonnegativeMatrix random_cone_preserving(Rng& rng, std::size_t d, double zero_prob) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> mag(0.1, 10.0);
    std::vector<double> data(d * d);
    for (std::size_t j = 0; j < d; ++j) {
        bool any = false;
        while (!any) {
            for (std::size_t i = 0; i < d; ++i) {
                data[i * d + j] = u(rng) < zero_prob ? 0.0 : mag(rng);
                any = any || data[i * d + j] > 0.0;
            }
        }
    }
    return {d, std::move(data)};
}

/// Matrix whose nonzero positions are the set bits of `mask` (row-major).
inline NonnegativeMatrix pattern_matrix(Rng& rng, std::size_t d, unsigned mask) {
    std::uniform_real_distribution<double> mag(0.1, 10.0);
    std::vector<double> data(d * d, 0.0);
    for (std::size_t k = 0; k < d * d; ++k)
        if (mask & (1u << k))
            data[k] = mag(rng);
    return {d, std::move(data)};
}

// ---- oracles -------------------------------------------------------------

/// sup{b >= 0 : b f <= g} by bisection on the defining inequality.
inline double aleph_by_bisection(const std::vector<double>& f, const std::vector<double>& g) {
    auto feasible = [&](double b) {
        for (std::size_t i = 0; i < f.size(); ++i)
            if (b * f[i] > g[i])
                return false;
        return true;
    };
    double lo = 0.0, hi = 1.0;
    while (feasible(hi))
        hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

/// d(f,g) for 2-vectors from the cross-ratio of the coordinates.
inline double distance_2d(double f1, double f2, double g1, double g2) {
    const double a = f1 * g2, b = f2 * g1;
    return a + b == 0.0 ? 0.0 : std::abs(a - b) / (a + b);
}

/// c(M) <- pattern: c < 1 iff every zero entry sits in an all-zero row.
/// Used as the combinatorial route against the metric one.
inline bool strict_by_pattern(const NonnegativeMatrix& m) {
    for (std::size_t i = 0; i < m.dim(); ++i) {
        bool row_zero = true, has_zero = false;
        for (std::size_t j = 0; j < m.dim(); ++j) {
            row_zero = row_zero && m(i, j) == 0.0;
            has_zero = has_zero || m(i, j) == 0.0;
        }
        if (has_zero && !row_zero)
            return false;
    }
    return true;
}

inline std::vector<double> matvec(const NonnegativeMatrix& m, const std::vector<double>& f) {
    std::vector<double> out(m.dim(), 0.0);
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            out[i] += m(i, j) * f[j];
    return out;
}

} // namespace conegeom::testing
