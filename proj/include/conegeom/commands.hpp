#pragma once

// Report builders behind the `conetool` subcommands. Each returns the JSON
// object printed on standard output:
//   {"command": ..., "inputs": {...}, "results": {...}, "warnings": [...]}
// Failures surface as conegeom::Error; `error_object` renders one.

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "conegeom/cone_core.hpp"
#include "conegeom/error.hpp"
#include "conegeom/kernel_analysis.hpp"
#include "conegeom/matrix_analysis.hpp"
#include "conegeom/power_iteration.hpp"

namespace conegeom::commands {

using nlohmann::json;

/// JSON has no infinity literal; +inf is written as the string "inf".
inline json number(double v) {
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v;
}

inline json optional_number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

inline json make_report(const std::string& command, json inputs, json results, const std::vector<std::string>& warnings) {
    return json{{"command", command},
                {"inputs", std::move(inputs)},
                {"results", std::move(results)},
                {"warnings", warnings}};
}

inline json error_object(const Error& e) {
    return json{{"error", {{"code", to_string(e.code())}, {"message", e.what()}, {"location", e.location()}}}};
}

inline json dist(const std::vector<double>& f_entries, const std::vector<double>& g_entries, const Tolerances& tol,
                 json inputs = json::object()) {
    const ConeVector f(f_entries, tol.zero_tol);
    const ConeVector g(g_entries, tol.zero_tol);
    const RatioPair r = m_ratio(f, g, tol);
    json results{{"d", pseudo_distance(f, g, tol)},
                 {"d_H", number(hilbert_distance(f, g, tol))},
                 {"m", r.m},
                 {"aleph_fg", r.aleph_fg},
                 {"aleph_gf", r.aleph_gf}};
    return make_report("dist", std::move(inputs), std::move(results), {});
}

namespace detail {

struct FormulaScan {
    double c = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
};

// Closed-form scan that also records the first column pair (i, j) attaining
// the maximum in (i, j, k, l) order.
inline FormulaScan formula_scan(const NonnegativeMatrix& m, const Tolerances& tol) {
    FormulaScan best;
    best.c = contraction_coeff_formula(m, tol);
    const std::size_t n = m.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    const double p = m(k, i) * m(l, j);
                    const double q = m(k, j) * m(l, i);
                    if (std::abs(p - q) / (p + q) == best.c) {
                        best.i = i;
                        best.j = j;
                        return best;
                    }
                }
    return best;
}

} // namespace detail

inline json coeff(const NonnegativeMatrix& m, bool formula, const ContractionOptions& opts,
                  json inputs = json::object()) {
    const auto start = std::chrono::steady_clock::now();
    ContractionReport report;
    if (formula) {
        conegeom::detail::require_cone_preserving(m, opts.tol);
        const auto scan = detail::formula_scan(m, opts.tol);
        report.c = scan.c;
        report.witness = {scan.i, scan.j};
        report.is_strict = scan.c < 1.0;
        if (report.is_strict)
            report.a_star = psi_inverse(scan.c);
        report.method = CoefficientMethod::closed_form;
    } else {
        report = contraction_coeff(m, opts);
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json results{{"c", report.c},
                 {"is_strict", report.is_strict},
                 {"a_star", optional_number(report.a_star)},
                 {"witness", {report.witness.first, report.witness.second}},
                 {"method", to_string(report.method)},
                 {"elapsed", elapsed}};
    return make_report("coeff", std::move(inputs), std::move(results), {});
}

inline json check(const NonnegativeMatrix& m, const Tolerances& tol, json inputs = json::object()) {
    std::vector<std::string> warnings;
    const bool preserving = is_cone_preserving(m, tol);
    const bool uniform = is_uniformly_positive(m, tol);
    json results{{"is_cone_preserving", preserving}, {"is_uniformly_positive", uniform}};
    if (preserving) {
        results["is_strictly_contracting"] = is_strictly_contracting(m, tol);
    } else {
        results["is_strictly_contracting"] = nullptr;
        warnings.push_back("matrix is not cone-preserving (column " + std::to_string(*first_zero_column(m, tol)) +
                           " is zero); contraction is undefined");
    }
    if (preserving && uniform) {
        const auto cert = uniform_positivity_certificate(m, tol);
        results["certificate"] = {{"h", cert.h},
                                  {"b", cert.b},
                                  {"A", cert.A},
                                  {"i0", cert.reference_row},
                                  {"j0", cert.reference_col}};
    } else {
        results["certificate"] = nullptr;
    }
    return make_report("check", std::move(inputs), std::move(results), warnings);
}

inline json perron(const NonnegativeMatrix& m, const std::optional<std::vector<double>>& start,
                   const PerronOptions& opts, json inputs = json::object()) {
    const auto& tol = opts.contraction.tol;
    const ConeVector f0 = start ? ConeVector(*start, tol.zero_tol) : ConeVector(std::vector<double>(m.dim(), 1.0));
    const PerronResult r = perron_iterate(m, f0, opts);

    std::vector<std::string> warnings;
    if (!r.converged)
        warnings.push_back("max-iter reached before the step tolerance");
    if (!r.contraction)
        warnings.push_back("dimension too large for the upfront contraction coefficient; no error bound");
    else if (*r.contraction >= 1.0)
        warnings.push_back("no contraction certificate (c = 1); no error bound");

    std::vector<double> vec(r.eigenvector.entries().begin(), r.eigenvector.entries().end());
    json results{{"eigenvector", vec},
                 {"eigenvalue_lower", number(r.eigenvalue_lower)},
                 {"eigenvalue_upper", number(r.eigenvalue_upper)},
                 {"iterations", r.iterations},
                 {"final_step_distance", r.final_step_distance},
                 {"error_bound", optional_number(r.error_bound)},
                 {"contraction", optional_number(r.contraction)},
                 {"converged", r.converged}};
    return make_report("perron", std::move(inputs), std::move(results), warnings);
}

inline json kernel(const KernelGrid& grid, const ContractionOptions& opts, json inputs = json::object()) {
    const auto report = kernel_contraction_estimate(grid, opts);
    const double c_values = contraction_coeff(value_matrix(grid), opts).c;
    const auto cert = factorization_certificate(grid, opts.tol);
    const auto relation = relate_certificate_to_coefficient(grid, opts);
    const double gap = std::abs(report.c - c_values);

    json results{{"n", grid.size()},
                 {"c_grid", report.c},
                 {"witness", {report.witness.first, report.witness.second}},
                 {"certificate",
                  {{"A", cert.A},
                   {"g1", cert.g1},
                   {"g2", cert.g2},
                   {"reference", {cert.reference_row, cert.reference_col}}}},
                 {"psi_of_A", relation.psi_of_A},
                 {"psi_of_A_squared", relation.psi_of_A_squared},
                 {"weight_invariance",
                  {{"c_weighted", report.c}, {"c_unweighted", c_values}, {"abs_diff", gap}, {"holds", gap <= 1e-12}}}};
    return make_report("kernel", std::move(inputs), std::move(results), {});
}

} // namespace conegeom::commands
