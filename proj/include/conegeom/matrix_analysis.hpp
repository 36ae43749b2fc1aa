#pragma once

// Projective action of nonnegative square matrices on rays: cone
// preservation, the contraction coefficient c(M) (by column pairs and by the
// O(d^4) minor formula), zero-pattern tests for uniform positivity, sandwich
// certificates and A*(M) = psi^-1(c(M)).
//
// The action is f -> Mf (columns are the images of basis rays). Pattern
// conditions are stated in that orientation: M preserves the cone iff no
// column is zero, and contracts strictly iff every zero entry sits in an
// all-zero row.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "conegeom/cone_core.hpp"
#include "conegeom/error.hpp"

namespace conegeom {

/// Dense d x d matrix with nonnegative entries, row-major.
class NonnegativeMatrix {
public:
    NonnegativeMatrix(std::initializer_list<std::initializer_list<double>> rows)
        : NonnegativeMatrix(std::vector<std::vector<double>>(rows.begin(), rows.end())) {}

    explicit NonnegativeMatrix(const std::vector<std::vector<double>>& rows) : dim_(rows.size()) {
        if (dim_ == 0)
            throw Error(ErrorCode::invalid_matrix, "matrix must have at least one row");
        data_.reserve(dim_ * dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (rows[i].size() != dim_)
                throw Error(ErrorCode::invalid_matrix,
                            "matrix must be square: row " + std::to_string(i) + " has " +
                                std::to_string(rows[i].size()) + " entries, expected " + std::to_string(dim_),
                            "row " + std::to_string(i));
            data_.insert(data_.end(), rows[i].begin(), rows[i].end());
        }
        validate();
    }

    NonnegativeMatrix(std::size_t dim, std::vector<double> row_major) : dim_(dim), data_(std::move(row_major)) {
        if (dim_ == 0 || data_.size() != dim_ * dim_)
            throw Error(ErrorCode::invalid_matrix, "row-major data does not match dimension");
        validate();
    }

    static NonnegativeMatrix identity(std::size_t dim) {
        std::vector<double> data(dim * dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i)
            data[i * dim + i] = 1.0;
        return {dim, std::move(data)};
    }

    std::size_t dim() const noexcept { return dim_; }
    double operator()(std::size_t row, std::size_t col) const noexcept { return data_[row * dim_ + col]; }
    std::span<const double> row_major() const noexcept { return data_; }

    std::vector<double> column(std::size_t col) const {
        std::vector<double> out(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            out[i] = (*this)(i, col);
        return out;
    }

    std::vector<std::vector<double>> rows() const {
        std::vector<std::vector<double>> out(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            out[i].assign(data_.begin() + static_cast<std::ptrdiff_t>(i * dim_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim_));
        return out;
    }

    NonnegativeMatrix transpose() const {
        std::vector<double> t(dim_ * dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                t[j * dim_ + i] = data_[i * dim_ + j];
        return {dim_, std::move(t)};
    }

    friend bool operator==(const NonnegativeMatrix&, const NonnegativeMatrix&) = default;

private:
    void validate() const {
        for (std::size_t k = 0; k < data_.size(); ++k) {
            const double v = data_[k];
            if (!std::isfinite(v) || v < 0.0)
                throw Error(ErrorCode::invalid_matrix, "matrix entries must be finite and nonnegative",
                            "(" + std::to_string(k / dim_) + ", " + std::to_string(k % dim_) + ")");
        }
    }

    std::size_t dim_;
    std::vector<double> data_;
};

inline NonnegativeMatrix multiply(const NonnegativeMatrix& a, const NonnegativeMatrix& b) {
    detail::check_same_size(a.dim(), b.dim());
    const std::size_t n = a.dim();
    std::vector<double> out(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                out[i * n + j] += aik * b(k, j);
        }
    return {n, std::move(out)};
}

enum class CoefficientMethod { definitional, closed_form };

inline std::string_view to_string(CoefficientMethod m) {
    return m == CoefficientMethod::definitional ? "definitional" : "closed_form";
}

struct ContractionReport {
    double c = 0.0;
    bool is_strict = true;
    std::optional<double> a_star;
    /// Lexicographically smallest column pair attaining c.
    std::pair<std::size_t, std::size_t> witness{0, 0};
    CoefficientMethod method = CoefficientMethod::definitional;
};

struct ContractionOptions {
    Tolerances tol{};
    /// Worker threads for the column-pair scan. The result does not depend
    /// on this value.
    unsigned threads = 1;
};

/// h, b and A with A^-1 b(j) h <= M e_j <= A b(j) h for every basis vector.
struct UniformPositivityCertificate {
    std::vector<double> h;
    std::vector<double> b;
    double A = 1.0;
    std::size_t reference_row = 0;
    std::size_t reference_col = 0;
};

inline bool is_zero(double v, const Tolerances& tol) noexcept { return v <= tol.zero_tol; }

/// Index of the first column with no entry above zero_tol, if any.
inline std::optional<std::size_t> first_zero_column(const NonnegativeMatrix& m, const Tolerances& tol = {}) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
        bool nonzero = false;
        for (std::size_t i = 0; i < m.dim() && !nonzero; ++i)
            nonzero = !is_zero(m(i, j), tol);
        if (!nonzero)
            return j;
    }
    return std::nullopt;
}

inline bool is_cone_preserving(const NonnegativeMatrix& m, const Tolerances& tol = {}) {
    return !first_zero_column(m, tol).has_value();
}

namespace detail {

inline void require_cone_preserving(const NonnegativeMatrix& m, const Tolerances& tol) {
    if (auto col = first_zero_column(m, tol))
        throw Error(ErrorCode::not_cone_preserving,
                    "matrix is not cone-preserving: column " + std::to_string(*col) + " is zero",
                    "column " + std::to_string(*col));
}

inline std::vector<bool> zero_rows(const NonnegativeMatrix& m, const Tolerances& tol) {
    std::vector<bool> out(m.dim(), true);
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim() && out[i]; ++j)
            out[i] = is_zero(m(i, j), tol);
    return out;
}

inline std::vector<bool> zero_cols(const NonnegativeMatrix& m, const Tolerances& tol) {
    std::vector<bool> out(m.dim(), true);
    for (std::size_t j = 0; j < m.dim(); ++j)
        for (std::size_t i = 0; i < m.dim() && out[j]; ++i)
            out[j] = is_zero(m(i, j), tol);
    return out;
}

struct PairBest {
    double c = -1.0;
    std::size_t i = 0;
    std::size_t j = 0;

    // Larger c wins; ties go to the lexicographically smaller pair.
    void offer(double value, std::size_t a, std::size_t b) noexcept {
        if (value > c || (value == c && std::pair(a, b) < std::pair(i, j))) {
            c = value;
            i = a;
            j = b;
        }
    }
};

} // namespace detail

inline ConeVector apply(const NonnegativeMatrix& m, const ConeVector& f, const Tolerances& tol = {}) {
    detail::check_same_size(m.dim(), f.size());
    const std::size_t n = m.dim();
    std::vector<double> out(n, 0.0);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            acc += m(i, j) * f[j];
        out[i] = acc;
        any = any || acc > tol.zero_tol;
    }
    if (!any)
        throw Error(ErrorCode::not_cone_preserving, "image of the vector is zero");
    return ConeVector(std::move(out), tol.zero_tol);
}

/// c(M) as the largest pseudo-distance between images of two basis rays.
///
/// O(d^3). The pair scan is split across `opts.threads` workers; each pair's
/// value is computed by the same code regardless of the split and the
/// reduction is order independent, so c and the witness are bitwise stable.
inline ContractionReport contraction_coeff(const NonnegativeMatrix& m, const ContractionOptions& opts = {}) {
    detail::require_cone_preserving(m, opts.tol);
    const std::size_t n = m.dim();
    const NonnegativeMatrix cols = m.transpose(); // row k of `cols` is column k of m
    const std::span<const double> data = cols.row_major();
    auto column = [&](std::size_t k) { return data.subspan(k * n, n); };

    const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(n)));
    std::vector<detail::PairBest> partial(workers);
    auto scan = [&](unsigned w) {
        detail::PairBest best;
        best.offer(0.0, 0, 0);
        for (std::size_t i = w; i < n; i += workers) {
            const auto ci = column(i);
            for (std::size_t j = i + 1; j < n; ++j)
                best.offer(detail::pseudo_distance_span(ci, column(j), opts.tol.zero_tol), i, j);
        }
        partial[w] = best;
    };
    if (workers == 1) {
        scan(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(scan, w);
    }

    detail::PairBest best = partial.front();
    for (const auto& p : partial)
        best.offer(p.c, p.i, p.j);

    ContractionReport report;
    report.c = best.c;
    report.witness = {best.i, best.j};
    report.is_strict = best.c < 1.0;
    if (report.is_strict)
        report.a_star = psi_inverse(best.c);
    report.method = CoefficientMethod::definitional;
    return report;
}

/// Closed-form c(M): max over (i,j,k,l) of
/// |M_ki M_lj - M_kj M_li| / (M_ki M_lj + M_kj M_li).
///
/// Only defined here for strictly positive M; with zeros the 0/0 = 1
/// convention disagrees with the definitional coefficient (e.g. a matrix
/// with one nonzero row maps every ray to the same ray). O(d^4).
inline double contraction_coeff_formula(const NonnegativeMatrix& m, const Tolerances& tol = {}) {
    const std::size_t n = m.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (is_zero(m(i, j), tol))
                throw Error(ErrorCode::not_strictly_positive,
                            "closed-form coefficient requires a strictly positive matrix",
                            "(" + std::to_string(i) + ", " + std::to_string(j) + ")");
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    const double p = m(k, i) * m(l, j);
                    const double q = m(k, j) * m(l, i);
                    best = std::max(best, std::abs(p - q) / (p + q));
                }
    return best;
}

/// True iff every zero entry lies in an all-zero row or an all-zero column.
inline bool is_uniformly_positive(const NonnegativeMatrix& m, const Tolerances& tol = {}) {
    const auto zr = detail::zero_rows(m, tol);
    const auto zc = detail::zero_cols(m, tol);
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            if (is_zero(m(i, j), tol) && !zr[i] && !zc[j])
                return false;
    return true;
}

/// Pattern test for c(M) < 1 under column action: every zero entry lies in
/// an all-zero row.
inline bool is_strictly_contracting(const NonnegativeMatrix& m, const Tolerances& tol = {}) {
    detail::require_cone_preserving(m, tol);
    const auto zr = detail::zero_rows(m, tol);
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            if (is_zero(m(i, j), tol) && !zr[i])
                return false;
    return true;
}

/// Checks A^-1 b(j) h <= M e_j <= A b(j) h entrywise with relative slack.
inline bool certificate_holds(const NonnegativeMatrix& m, const UniformPositivityCertificate& cert,
                              double rel_tol = 1e-9) {
    const std::size_t n = m.dim();
    if (cert.h.size() != n || cert.b.size() != n || !(cert.A >= 1.0))
        return false;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const double base = cert.b[j] * cert.h[i];
            const double lo = base / cert.A;
            const double hi = base * cert.A;
            const double v = m(i, j);
            if (v < lo * (1.0 - rel_tol) || v > hi * (1.0 + rel_tol))
                return false;
        }
    return true;
}

/// Sandwich certificate built from one reference row i0 and column j0 (the
/// position of the largest entry, first in row-major order on ties):
/// h(i) = M(i, j0), b(j) proportional to M(i0, j). b is then scaled by the
/// constant that balances the upper and lower ratio bounds, which makes A
/// scale invariant: A = sqrt(max r / min r) with r = M_ij / (h_i b_j) over
/// the nonzero entries.
inline UniformPositivityCertificate uniform_positivity_certificate(const NonnegativeMatrix& m,
                                                                   const Tolerances& tol = {}) {
    detail::require_cone_preserving(m, tol);
    if (!is_uniformly_positive(m, tol))
        throw Error(ErrorCode::not_uniformly_positive,
                    "matrix is not uniformly positive: a zero entry lies outside the zero rows/columns");
    const std::size_t n = m.dim();
    std::size_t i0 = 0, j0 = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (m(i, j) > m(i0, j0)) {
                i0 = i;
                j0 = j;
            }

    UniformPositivityCertificate cert;
    cert.reference_row = i0;
    cert.reference_col = j0;
    cert.h.resize(n);
    cert.b.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        cert.h[i] = is_zero(m(i, j0), tol) ? 0.0 : m(i, j0);
    for (std::size_t j = 0; j < n; ++j)
        cert.b[j] = is_zero(m(i0, j), tol) ? 0.0 : m(i0, j);

    double rmax = 0.0;
    double rmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (is_zero(m(i, j), tol))
                continue;
            const double r = m(i, j) / (cert.h[i] * cert.b[j]);
            rmax = std::max(rmax, r);
            rmin = std::min(rmin, r);
        }
    const double scale = std::sqrt(rmax * rmin);
    for (double& bj : cert.b)
        bj *= scale;
    cert.A = std::max(1.0, std::sqrt(rmax / rmin));

    if (!certificate_holds(m, cert))
        throw Error(ErrorCode::not_uniformly_positive, "constructed certificate failed validation");
    return cert;
}

/// psi^-1(c(M)), the sandwich constant reached by building h and b from
/// the contraction itself. Requires c(M) < 1.
///
/// This is an upper bound for the infimum A* of valid constants, not A*
/// itself: any valid A gives c(M) <= psi(A^2), so A* lies in
/// [sqrt(a_star), a_star]. [[2,1],[1,2]] has a_star = 2 but is sandwiched
/// with A = sqrt(2) by h = (1,1), b(f) = sqrt(2)(f_1 + f_2).
inline double a_star(const NonnegativeMatrix& m, const ContractionOptions& opts = {}) {
    const auto report = contraction_coeff(m, opts);
    if (!report.is_strict)
        throw Error(ErrorCode::not_uniformly_positive, "c(M) = 1: matrix is not uniformly positive");
    return *report.a_star;
}

} // namespace conegeom
