// conetool: command-line front-end for the conegeom library.
//
//   conetool [--zero-tol X] [--json-indent N] <dist|coeff|check|perron|kernel> ...
//
// The report goes to stdout as one JSON object (exit 0). Errors go to stderr
// as {"error": {"code", "message", "location"}} with a nonzero exit code.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "conegeom/commands.hpp"
#include "conegeom/io.hpp"

namespace {

using conegeom::Error;
using conegeom::ErrorCode;
using nlohmann::json;

struct Settings {
    double zero_tol = 0.0;
    int json_indent = 2;

    // dist
    std::vector<std::string> vectors;
    std::string dist_file;

    // coeff / check / perron
    std::string matrix_file;
    bool formula = false;
    unsigned threads = 1;
    double tol = 1e-12;
    std::size_t max_iter = 10000;
    std::string start;

    // kernel
    std::string kernel_file;
    std::string builtin;
    std::size_t n = 16;
    double sigma = 0.5;
    std::string rule = "trapezoid";
};

conegeom::Tolerances tolerances(const Settings& s) {
    if (!(s.zero_tol >= 0.0))
        throw Error(ErrorCode::bad_argument, "--zero-tol must be nonnegative");
    return {.zero_tol = s.zero_tol};
}

json run_dist(const Settings& s) {
    std::vector<double> f, g;
    json inputs{{"zero_tol", s.zero_tol}};
    if (!s.dist_file.empty()) {
        if (!s.vectors.empty())
            throw Error(ErrorCode::bad_argument, "give either --file or two vectors, not both");
        const auto rows = conegeom::io::read_rows(s.dist_file);
        if (rows.size() != 2)
            throw Error(ErrorCode::bad_argument, "dist file must contain exactly two rows", s.dist_file);
        f = rows[0];
        g = rows[1];
        inputs["file"] = s.dist_file;
    } else {
        if (s.vectors.size() != 2)
            throw Error(ErrorCode::bad_argument, "dist needs two vector literals, e.g. 1,2 2,1");
        f = conegeom::io::parse_vector_literal(s.vectors[0]);
        g = conegeom::io::parse_vector_literal(s.vectors[1]);
        inputs["f"] = f;
        inputs["g"] = g;
    }
    return conegeom::commands::dist(f, g, tolerances(s), std::move(inputs));
}

json run_coeff(const Settings& s) {
    const auto m = conegeom::io::read_matrix(s.matrix_file);
    conegeom::ContractionOptions opts{.tol = tolerances(s), .threads = s.threads};
    json inputs{{"file", s.matrix_file}, {"formula", s.formula}, {"zero_tol", s.zero_tol}, {"threads", s.threads}};
    return conegeom::commands::coeff(m, s.formula, opts, std::move(inputs));
}

json run_check(const Settings& s) {
    const auto m = conegeom::io::read_matrix(s.matrix_file);
    json inputs{{"file", s.matrix_file}, {"zero_tol", s.zero_tol}};
    return conegeom::commands::check(m, tolerances(s), std::move(inputs));
}

json run_perron(const Settings& s) {
    const auto m = conegeom::io::read_matrix(s.matrix_file);
    conegeom::PerronOptions opts;
    opts.tol = s.tol;
    opts.max_iter = s.max_iter;
    opts.contraction.tol = tolerances(s);
    std::optional<std::vector<double>> start;
    if (!s.start.empty())
        start = conegeom::io::parse_vector_literal(s.start);
    json inputs{{"file", s.matrix_file}, {"tol", s.tol}, {"max_iter", s.max_iter}, {"zero_tol", s.zero_tol}};
    inputs["start"] = start ? json(*start) : json(nullptr);
    return conegeom::commands::perron(m, start, opts, std::move(inputs));
}

json run_kernel(const Settings& s) {
    conegeom::ContractionOptions opts{.tol = tolerances(s)};
    json inputs{{"zero_tol", s.zero_tol}};
    if (!s.kernel_file.empty() == !s.builtin.empty())
        throw Error(ErrorCode::bad_argument, "give exactly one of --file or --builtin");
    if (!s.kernel_file.empty()) {
        inputs["file"] = s.kernel_file;
        try {
            const auto grid = conegeom::io::parse_kernel_grid(conegeom::io::read_file(s.kernel_file));
            return conegeom::commands::kernel(grid, opts, std::move(inputs));
        } catch (const Error& e) {
            throw Error(e.code(), e.what(), e.location().empty() ? s.kernel_file : s.kernel_file + ": " + e.location());
        }
    }
    if (s.rule != "midpoint" && s.rule != "trapezoid")
        throw Error(ErrorCode::bad_argument, "--rule must be midpoint or trapezoid");
    const auto rule = s.rule == "midpoint" ? conegeom::QuadratureRule::midpoint : conegeom::QuadratureRule::trapezoid;
    inputs["builtin"] = s.builtin;
    inputs["n"] = s.n;
    inputs["rule"] = s.rule;
    if (s.builtin == "gaussian")
        inputs["sigma"] = s.sigma;
    const auto grid = conegeom::KernelGrid::sample(s.n, conegeom::builtin_kernel(s.builtin, s.sigma), rule);
    return conegeom::commands::kernel(grid, opts, std::move(inputs));
}

} // namespace

int main(int argc, char** argv) {
    Settings s;
    CLI::App app{"Projective cone geometry: Hilbert metrics, contraction coefficients, Perron vectors"};
    app.require_subcommand(1);
    app.add_option("--zero-tol", s.zero_tol, "Entries with |v| <= zero-tol count as zero")->capture_default_str();
    app.add_option("--json-indent", s.json_indent, "Indentation of the JSON report (-1 for compact)")
        ->capture_default_str();

    auto* dist = app.add_subcommand("dist", "Distances between two rays");
    dist->add_option("vectors", s.vectors, "Two comma-separated vectors, e.g. 1,2 2,1");
    dist->add_option("--file", s.dist_file, "CSV/JSON file with exactly two rows");

    auto* coeff = app.add_subcommand("coeff", "Contraction coefficient c(M)");
    coeff->add_option("file", s.matrix_file, "Matrix file (CSV or JSON)")->required();
    coeff->add_flag("--formula", s.formula, "Use the O(d^4) closed form (strictly positive input only)");
    coeff->add_option("--threads", s.threads, "Worker threads for the pair scan")->capture_default_str();

    auto* check = app.add_subcommand("check", "Cone preservation, uniform positivity and certificate");
    check->add_option("file", s.matrix_file, "Matrix file (CSV or JSON)")->required();

    auto* perron = app.add_subcommand("perron", "Perron eigenvector by projective power iteration");
    perron->add_option("file", s.matrix_file, "Matrix file (CSV or JSON)")->required();
    perron->add_option("--tol", s.tol, "Stop when the step distance is at most tol")->capture_default_str();
    perron->add_option("--max-iter", s.max_iter, "Iteration limit")->capture_default_str();
    perron->add_option("--start", s.start, "Starting vector, default all ones");

    auto* kernel = app.add_subcommand("kernel", "Kernel operator on a quadrature grid");
    kernel->add_option("--file", s.kernel_file, "Kernel grid JSON {nodes, weights, values}");
    kernel->add_option("--builtin", s.builtin, "constant | separable | poly1xy | gaussian");
    kernel->add_option("--n", s.n, "Number of grid nodes")->capture_default_str();
    kernel->add_option("--sigma", s.sigma, "Gaussian width parameter")->capture_default_str();
    kernel->add_option("--rule", s.rule, "midpoint | trapezoid")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        json report;
        if (*dist)
            report = run_dist(s);
        else if (*coeff)
            report = run_coeff(s);
        else if (*check)
            report = run_check(s);
        else if (*perron)
            report = run_perron(s);
        else
            report = run_kernel(s);
        std::cout << report.dump(s.json_indent) << '\n';
        return 0;
    } catch (const Error& e) {
        std::cerr << conegeom::commands::error_object(e).dump() << '\n';
        return 1;
    }
}
