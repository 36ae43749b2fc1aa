#pragma once

// Ratio functionals on the positive cone of R^n and the two projective
// metrics built from them: the bounded pseudo-Hilbert metric d = (1-m)/(1+m)
// and the Hilbert metric d_H = |log m|.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conegeom/error.hpp"

namespace conegeom {

/// Comparison thresholds shared by every module.
///
/// `zero_tol`: an entry with |value| <= zero_tol counts as zero. The default
/// keeps the exact zero pattern of the input.
/// `ray_tol`: entrywise absolute tolerance when comparing normalized rays.
struct Tolerances {
    double zero_tol = 0.0;
    double ray_tol = 1e-12;
};

/// A nonzero vector with nonnegative entries.
///
/// Entries in [-zero_tol, 0) are clamped to 0 on construction; anything more
/// negative, non-finite, or an all-zero vector is rejected.
class ConeVector {
public:
    ConeVector(std::initializer_list<double> entries) : ConeVector(std::vector<double>(entries)) {}

    explicit ConeVector(std::vector<double> entries, double zero_tol = 0.0) : entries_(std::move(entries)) {
        if (entries_.empty())
            throw Error(ErrorCode::invalid_vector, "cone vector must have at least one entry");
        bool any_positive = false;
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            double& v = entries_[i];
            if (!std::isfinite(v))
                throw Error(ErrorCode::invalid_vector, "cone vector entry is not finite", "index " + std::to_string(i));
            if (v < 0.0) {
                if (v < -zero_tol)
                    throw Error(ErrorCode::invalid_vector, "cone vector entry is negative", "index " + std::to_string(i));
                v = 0.0;
            }
            if (v > zero_tol)
                any_positive = true;
        }
        if (!any_positive)
            throw Error(ErrorCode::invalid_vector, "cone vector is identically zero");
    }

    std::size_t size() const noexcept { return entries_.size(); }
    double operator[](std::size_t i) const noexcept { return entries_[i]; }
    std::span<const double> entries() const noexcept { return entries_; }
    const std::vector<double>& to_vector() const noexcept { return entries_; }

    friend bool operator==(const ConeVector&, const ConeVector&) = default;

private:
    std::vector<double> entries_;
};

/// Canonical representative of a ray: the cone vector scaled to sup-norm 1.
/// Only `normalize` constructs one.
class ProjectivePoint {
public:
    std::size_t size() const noexcept { return rep_.size(); }
    double operator[](std::size_t i) const noexcept { return rep_[i]; }
    std::span<const double> entries() const noexcept { return rep_.entries(); }
    const ConeVector& representative() const noexcept { return rep_; }

    friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;

private:
    explicit ProjectivePoint(ConeVector rep) : rep_(std::move(rep)) {}
    friend ProjectivePoint normalize(const ConeVector& f);

    ConeVector rep_;
};

/// aleph(f,g), aleph(g,f) and their product m(f,g).
struct RatioPair {
    double aleph_fg;
    double aleph_gf;
    double m;
};

namespace detail {

inline void check_same_size(std::size_t a, std::size_t b) {
    if (a != b)
        throw Error(ErrorCode::dimension_mismatch,
                    "dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

// min over {x : f(x) > zero_tol} of g(x)/f(x); entries of g at or below
// zero_tol count as exact zeros. Returns +inf if f has empty support.
inline double aleph_span(std::span<const double> f, std::span<const double> g, double zero_tol) noexcept {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (f[x] <= zero_tol)
            continue;
        const double gx = g[x] <= zero_tol ? 0.0 : g[x];
        best = std::min(best, gx / f[x]);
    }
    return best;
}

// Both ratios in a single pass. m is clamped to [0, 1]: the bound holds
// exactly, rounding can push proportional pairs a few ulps above 1.
inline RatioPair ratio_span(std::span<const double> f, std::span<const double> g, double zero_tol) noexcept {
    double fg = std::numeric_limits<double>::infinity();
    double gf = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < f.size(); ++x) {
        const double fx = f[x] <= zero_tol ? 0.0 : f[x];
        const double gx = g[x] <= zero_tol ? 0.0 : g[x];
        if (fx > 0.0)
            fg = std::min(fg, gx / fx);
        if (gx > 0.0)
            gf = std::min(gf, fx / gx);
    }
    return {fg, gf, std::min(1.0, fg * gf)};
}

inline double phi_unchecked(double s) noexcept { return (1.0 - s) / (1.0 + s); }

inline double pseudo_distance_span(std::span<const double> f, std::span<const double> g, double zero_tol) noexcept {
    return phi_unchecked(ratio_span(f, g, zero_tol).m);
}

inline void require_support(std::span<const double> f, double zero_tol) {
    for (double v : f)
        if (v > zero_tol)
            return;
    throw Error(ErrorCode::invalid_vector, "cone vector has no entry above zero_tol");
}

} // namespace detail

/// Largest b >= 0 with b*f <= g, i.e. the minimum of g(x)/f(x) over the
/// support of f. Zero iff g vanishes somewhere f does not.
inline double aleph(const ConeVector& f, const ConeVector& g, const Tolerances& tol = {}) {
    detail::check_same_size(f.size(), g.size());
    detail::require_support(f.entries(), tol.zero_tol);
    return detail::aleph_span(f.entries(), g.entries(), tol.zero_tol);
}

inline RatioPair m_ratio(const ConeVector& f, const ConeVector& g, const Tolerances& tol = {}) {
    detail::check_same_size(f.size(), g.size());
    detail::require_support(f.entries(), tol.zero_tol);
    detail::require_support(g.entries(), tol.zero_tol);
    return detail::ratio_span(f.entries(), g.entries(), tol.zero_tol);
}

inline ProjectivePoint normalize(const ConeVector& f) {
    const double top = *std::max_element(f.entries().begin(), f.entries().end());
    std::vector<double> rep(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        rep[i] = f[i] == top ? 1.0 : f[i] / top;
    return ProjectivePoint(ConeVector(std::move(rep)));
}

/// Entrywise comparison of canonical representatives.
inline bool same_ray(const ProjectivePoint& p, const ProjectivePoint& q, const Tolerances& tol = {}) {
    detail::check_same_size(p.size(), q.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        if (std::abs(p[i] - q[i]) > tol.ray_tol)
            return false;
    return true;
}

/// s -> (1-s)/(1+s) on [0,1]; strictly decreasing, phi(st) <= phi(s)+phi(t).
inline double phi(double s) {
    if (!(s >= 0.0 && s <= 1.0))
        throw Error(ErrorCode::out_of_domain, "phi is defined on [0,1]");
    return detail::phi_unchecked(s);
}

/// A -> phi(A^-2), an increasing bijection [1,inf) -> [0,1).
inline double psi(double a) {
    if (!(a >= 1.0))
        throw Error(ErrorCode::out_of_domain, "psi is defined on [1,inf)");
    if (std::isinf(a))
        return 1.0;
    const double s = 1.0 / (a * a);
    return detail::phi_unchecked(s);
}

inline double psi_inverse(double c) {
    if (!(c >= 0.0 && c < 1.0))
        throw Error(ErrorCode::out_of_domain, "psi_inverse is defined on [0,1)");
    return std::sqrt((1.0 + c) / (1.0 - c));
}

/// Bounded projective distance phi(m(f,g)); lies in [0,1].
inline double pseudo_distance(const ConeVector& f, const ConeVector& g, const Tolerances& tol = {}) {
    return phi(m_ratio(f, g, tol).m);
}

inline double pseudo_distance(const ProjectivePoint& p, const ProjectivePoint& q, const Tolerances& tol = {}) {
    return pseudo_distance(p.representative(), q.representative(), tol);
}

/// |log m(f,g)|; +infinity when m = 0 (rays separated by the boundary).
inline double hilbert_distance(const ConeVector& f, const ConeVector& g, const Tolerances& tol = {}) {
    const double m = m_ratio(f, g, tol).m;
    if (m == 0.0)
        return std::numeric_limits<double>::infinity();
    return std::abs(std::log(m));
}

inline double hilbert_distance(const ProjectivePoint& p, const ProjectivePoint& q, const Tolerances& tol = {}) {
    return hilbert_distance(p.representative(), q.representative(), tol);
}

/// Distance between two rays of a 2D cone section given by their
/// coordinates (f1,f2), (g1,g2) in the basis of the section's endpoints.
/// Uses 0/0 = 0, which only arises for two rays on the same edge.
inline double segment_distance(double f1, double f2, double g1, double g2) {
    for (double v : {f1, f2, g1, g2})
        if (!(v >= 0.0) || !std::isfinite(v))
            throw Error(ErrorCode::out_of_domain, "segment coordinates must be finite and nonnegative");
    if ((f1 == 0.0 && f2 == 0.0) || (g1 == 0.0 && g2 == 0.0))
        throw Error(ErrorCode::invalid_vector, "segment coordinate pair is zero");
    const double a = f1 * g2;
    const double b = f2 * g1;
    if (a + b == 0.0)
        return 0.0;
    return std::abs(a - b) / (a + b);
}

} // namespace conegeom
