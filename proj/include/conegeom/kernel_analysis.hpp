#pragma once

// Positive integral operators f -> int K(x,y) f(y) dy on [0,1], sampled on a
// quadrature grid. The grid is treated as the resolution scale: factorization
// certificates A^-1 g1(x) g2(y) <= K(x,y) <= A g1(x) g2(y) are built and
// checked at the grid points only.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "conegeom/cone_core.hpp"
#include "conegeom/error.hpp"
#include "conegeom/matrix_analysis.hpp"

namespace conegeom {

enum class QuadratureRule { midpoint, trapezoid };

/// Sampled kernel: values[k][j] = K(nodes[k], nodes[j]).
class KernelGrid {
public:
    KernelGrid(std::vector<double> nodes, std::vector<double> weights, std::vector<std::vector<double>> values)
        : nodes_(std::move(nodes)), weights_(std::move(weights)), values_(std::move(values)) {
        validate();
    }

    /// Samples `kernel` on an n-point rule over [0,1]. The trapezoid rule is
    /// the default: its nodes include the endpoints, where the supremum
    /// defining c is often attained.
    static KernelGrid sample(std::size_t n, const std::function<double(double, double)>& kernel,
                             QuadratureRule rule = QuadratureRule::trapezoid) {
        if (n == 0 || (rule == QuadratureRule::trapezoid && n < 2))
            throw Error(ErrorCode::invalid_grid, "too few quadrature nodes for the rule");
        std::vector<double> nodes(n), weights(n);
        if (rule == QuadratureRule::midpoint) {
            for (std::size_t k = 0; k < n; ++k) {
                nodes[k] = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
                weights[k] = 1.0 / static_cast<double>(n);
            }
        } else {
            const double h = 1.0 / static_cast<double>(n - 1);
            for (std::size_t k = 0; k < n; ++k) {
                nodes[k] = static_cast<double>(k) * h;
                weights[k] = (k == 0 || k + 1 == n) ? h / 2.0 : h;
            }
            nodes.back() = 1.0;
        }
        std::vector<std::vector<double>> values(n, std::vector<double>(n));
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j)
                values[k][j] = kernel(nodes[k], nodes[j]);
        return {std::move(nodes), std::move(weights), std::move(values)};
    }

    std::size_t size() const noexcept { return nodes_.size(); }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    const std::vector<std::vector<double>>& values() const noexcept { return values_; }
    double operator()(std::size_t k, std::size_t j) const noexcept { return values_[k][j]; }

    KernelGrid with_weights(std::vector<double> weights) const { return {nodes_, std::move(weights), values_}; }

private:
    void validate() const {
        const std::size_t n = nodes_.size();
        if (n == 0)
            throw Error(ErrorCode::invalid_grid, "kernel grid has no nodes");
        if (weights_.size() != n || values_.size() != n)
            throw Error(ErrorCode::invalid_grid, "nodes, weights and values disagree in size");
        for (std::size_t k = 0; k < n; ++k) {
            if (!(nodes_[k] >= 0.0 && nodes_[k] <= 1.0))
                throw Error(ErrorCode::invalid_grid, "nodes must lie in [0,1]", "node " + std::to_string(k));
            if (k > 0 && !(nodes_[k] > nodes_[k - 1]))
                throw Error(ErrorCode::invalid_grid, "nodes must be strictly increasing", "node " + std::to_string(k));
            if (!(weights_[k] > 0.0) || !std::isfinite(weights_[k]))
                throw Error(ErrorCode::invalid_grid, "weights must be positive", "weight " + std::to_string(k));
            if (values_[k].size() != n)
                throw Error(ErrorCode::invalid_grid, "values must be an n x n grid", "row " + std::to_string(k));
            for (std::size_t j = 0; j < n; ++j)
                if (!std::isfinite(values_[k][j]) || values_[k][j] < 0.0)
                    throw Error(ErrorCode::invalid_grid, "kernel values must be finite and nonnegative",
                                "(" + std::to_string(k) + ", " + std::to_string(j) + ")");
        }
        for (std::size_t j = 0; j < n; ++j) {
            bool positive = false;
            for (std::size_t k = 0; k < n && !positive; ++k)
                positive = values_[k][j] > 0.0;
            if (!positive)
                throw Error(ErrorCode::invalid_grid, "kernel column is identically zero", "column " + std::to_string(j));
        }
    }

    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<std::vector<double>> values_;
};

/// g1, g2, A with A^-1 g1(x) g2(y) <= K(x,y) <= A g1(x) g2(y) on the grid.
struct FactorizationCertificate {
    std::vector<double> g1;
    std::vector<double> g2;
    double A = 1.0;
    std::size_t reference_row = 0;
    std::size_t reference_col = 0;
};

/// psi(A) and psi(A^2) for a grid certificate together with c_grid.
/// A sandwich with constant A only forces m >= A^-4 between images, so the
/// guaranteed bound is c_grid <= psi(A^2); c_grid <= psi(A) is typical but
/// can fail.
struct CertificateRelation {
    double psi_of_A;
    double psi_of_A_squared;
    double c_grid;
};

/// Quadrature matrix of the operator: entries K(x_k, y_j) * w_j.
inline NonnegativeMatrix discretize(const KernelGrid& grid) {
    const std::size_t n = grid.size();
    std::vector<double> data(n * n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
            data[k * n + j] = grid(k, j) * grid.weights()[j];
    return {n, std::move(data)};
}

/// The value grid itself as a matrix (unit weights).
inline NonnegativeMatrix value_matrix(const KernelGrid& grid) {
    return NonnegativeMatrix(grid.values());
}

inline bool factorization_holds(const KernelGrid& grid, const FactorizationCertificate& cert, double rel_tol = 1e-9) {
    const std::size_t n = grid.size();
    if (cert.g1.size() != n || cert.g2.size() != n || !(cert.A >= 1.0))
        return false;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) {
            const double base = cert.g1[k] * cert.g2[j];
            const double v = grid(k, j);
            if (v < base / cert.A * (1.0 - rel_tol) || v > base * cert.A * (1.0 + rel_tol))
                return false;
        }
    return true;
}

/// Builds g1(x) = K(x, y0), g2(y) = K(x0, y) / K(x0, y0) at the grid maximum
/// (x0, y0) (first in row-major order on ties) and the smallest A for that
/// pair. Throws pattern_failure, naming the offending grid point, when a zero
/// value lies outside the all-zero rows and columns.
inline FactorizationCertificate factorization_certificate(const KernelGrid& grid, const Tolerances& tol = {}) {
    const std::size_t n = grid.size();
    std::vector<bool> zero_row(n, true), zero_col(n, true);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
            if (!is_zero(grid(k, j), tol)) {
                zero_row[k] = false;
                zero_col[j] = false;
            }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
            if (is_zero(grid(k, j), tol) && !zero_row[k] && !zero_col[j])
                throw Error(ErrorCode::pattern_failure, "kernel not uniformly factorizable at this resolution",
                            "row " + std::to_string(k) + ", column " + std::to_string(j));

    std::size_t k0 = 0, j0 = 0;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
            if (grid(k, j) > grid(k0, j0)) {
                k0 = k;
                j0 = j;
            }

    FactorizationCertificate cert;
    cert.reference_row = k0;
    cert.reference_col = j0;
    cert.g1.resize(n);
    cert.g2.resize(n);
    const double pivot = grid(k0, j0);
    for (std::size_t k = 0; k < n; ++k)
        cert.g1[k] = is_zero(grid(k, j0), tol) ? 0.0 : grid(k, j0);
    for (std::size_t j = 0; j < n; ++j)
        cert.g2[j] = is_zero(grid(k0, j), tol) ? 0.0 : grid(k0, j) / pivot;

    double a = 1.0;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) {
            if (is_zero(grid(k, j), tol))
                continue;
            const double ratio = grid(k, j) / (cert.g1[k] * cert.g2[j]);
            a = std::max({a, ratio, 1.0 / ratio});
        }
    cert.A = a;
    if (!factorization_holds(grid, cert))
        throw Error(ErrorCode::pattern_failure, "constructed factorization failed validation");
    return cert;
}

/// Grid estimate of c(M_K): the definitional coefficient of the quadrature
/// matrix.
inline ContractionReport kernel_contraction_estimate(const KernelGrid& grid, const ContractionOptions& opts = {}) {
    return contraction_coeff(discretize(grid), opts);
}

/// Relates the grid certificate to the grid coefficient. Throws if
/// c_grid > psi(A^2), which no valid certificate allows.
inline CertificateRelation relate_certificate_to_coefficient(const KernelGrid& grid, const ContractionOptions& opts = {}) {
    const auto cert = factorization_certificate(grid, opts.tol);
    const double bound = psi(cert.A * cert.A);
    const double c = kernel_contraction_estimate(grid, opts).c;
    if (c > bound + 1e-10)
        throw Error(ErrorCode::out_of_domain,
                    "grid coefficient exceeds psi(A^2): " + std::to_string(c) + " > " + std::to_string(bound));
    return {psi(cert.A), bound, c};
}

/// Named kernel families on [0,1]^2.
///
///   constant    K = 1
///   separable   K = (1 + x) * exp(-y)
///   poly1xy     K = 1 + x y
///   gaussian    K = exp(-(x - y)^2 / sigma)       (param: sigma > 0, default 0.5)
inline std::function<double(double, double)> builtin_kernel(std::string_view name, double sigma = 0.5) {
    if (name == "constant")
        return [](double, double) { return 1.0; };
    if (name == "separable")
        return [](double x, double y) { return (1.0 + x) * std::exp(-y); };
    if (name == "poly1xy")
        return [](double x, double y) { return 1.0 + x * y; };
    if (name == "gaussian") {
        if (!(sigma > 0.0))
            throw Error(ErrorCode::bad_argument, "gaussian kernel needs sigma > 0");
        return [sigma](double x, double y) { return std::exp(-(x - y) * (x - y) / sigma); };
    }
    throw Error(ErrorCode::bad_argument, "unknown builtin kernel '" + std::string(name) + "'");
}

} // namespace conegeom
