#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "conegeom/cone_core.hpp"
#include "conegeom/error.hpp"
#include "conegeom/matrix_analysis.hpp"

namespace conegeom {

struct PerronResult {
    ProjectivePoint eigenvector;
    double eigenvalue_lower = 0.0;
    double eigenvalue_upper = std::numeric_limits<double>::infinity();
    std::size_t iterations = 0;
    /// d between the last two iterates.
    double final_step_distance = 1.0;
    /// Bound on d(eigenvector, fixed point); present iff c(M) < 1 was computed.
    std::optional<double> error_bound;
    /// c(M) if it was computed (dimension within `PerronOptions::coefficient_max_dim`).
    std::optional<double> contraction;
    bool converged = false;
};

struct PerronOptions {
    double tol = 1e-12;
    std::size_t max_iter = 10000;
    /// c(M) is computed upfront only up to this dimension.
    std::size_t coefficient_max_dim = 512;
    ContractionOptions contraction{};
    /// Called with every iterate, starting with normalize(f0).
    std::function<void(const ProjectivePoint&)> observer;
};

/// Collatz-Wielandt bracket (min_x (Mf)(x)/f(x), max_x (Mf)(x)/f(x)) for a
/// strictly positive f; it contains the Perron eigenvalue.
inline std::pair<double, double> collatz_wielandt(const NonnegativeMatrix& m, const ConeVector& f,
                                                  const Tolerances& tol = {}) {
    detail::check_same_size(m.dim(), f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] <= tol.zero_tol)
            throw Error(ErrorCode::invalid_vector, "Collatz-Wielandt bounds need a strictly positive vector",
                        "index " + std::to_string(i));
    const ConeVector mf = apply(m, f, tol);
    const double lower = aleph(f, mf, tol);
    const double inv_upper = aleph(mf, f, tol);
    return {lower, 1.0 / inv_upper};
}

/// Projective power iteration p <- normalize(M p) stopped on the bounded
/// metric: d(p_n, p_{n+1}) <= tol.
///
/// When c = c(M) < 1 the limit p* exists and, by the triangle inequality and
/// the geometric series of the Lipschitz bound,
///   d(p_{n+1}, p*) <= c / (1 - c) * d(p_n, p_{n+1}),
/// which is reported as `error_bound` for the returned (last) iterate.
inline PerronResult perron_iterate(const NonnegativeMatrix& m, const ConeVector& f0, const PerronOptions& opts = {}) {
    detail::check_same_size(m.dim(), f0.size());
    detail::require_cone_preserving(m, opts.contraction.tol);
    if (!(opts.tol > 0.0))
        throw Error(ErrorCode::bad_argument, "tolerance must be positive");
    const Tolerances& tol = opts.contraction.tol;

    std::optional<double> c;
    if (m.dim() <= opts.coefficient_max_dim)
        c = contraction_coeff(m, opts.contraction).c;

    ProjectivePoint p = normalize(f0);
    if (opts.observer)
        opts.observer(p);
    double step = 1.0;
    std::size_t it = 0;
    bool converged = false;
    while (it < opts.max_iter) {
        ProjectivePoint next = normalize(apply(m, p.representative(), tol));
        step = pseudo_distance(p, next, tol);
        p = std::move(next);
        ++it;
        if (opts.observer)
            opts.observer(p);
        if (step <= opts.tol) {
            converged = true;
            break;
        }
    }

    const ConeVector mp = apply(m, p.representative(), tol);
    const double inv_upper = aleph(mp, p.representative(), tol);
    const double final_step = it == 0 ? 0.0 : step;
    std::optional<double> bound;
    if (c && *c < 1.0)
        bound = *c / (1.0 - *c) * final_step;
    PerronResult result{
        .eigenvector = p,
        .eigenvalue_lower = aleph(p.representative(), mp, tol),
        .eigenvalue_upper = inv_upper == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / inv_upper,
        .iterations = it,
        .final_step_distance = final_step,
        .error_bound = bound,
        .contraction = c,
        .converged = converged,
    };
    return result;
}

/// Product of the contraction coefficients, an upper bound for c(M_1 ... M_n).
inline double product_contraction_bound(std::span<const NonnegativeMatrix> ms, const ContractionOptions& opts = {}) {
    if (ms.empty())
        throw Error(ErrorCode::bad_argument, "empty matrix sequence");
    double bound = 1.0;
    for (const auto& m : ms) {
        detail::check_same_size(ms.front().dim(), m.dim());
        bound *= contraction_coeff(m, opts).c;
    }
    return bound;
}

} // namespace conegeom
