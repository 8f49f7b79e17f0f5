#ifndef ENDPOINT_LAB_HARNESS_HPP
#define ENDPOINT_LAB_HARNESS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include <endpoint_lab/bounded_approx.hpp>
#include <endpoint_lab/function_model.hpp>
#include <endpoint_lab/lemma.hpp>
#include <endpoint_lab/partition.hpp>
#include <endpoint_lab/rational.hpp>
#include <endpoint_lab/sums.hpp>

namespace endpoint_lab
{

struct gate {
    std::string name;
    bool passed = false;
    // The checked relation written out with exact rationals.
    std::string detail;
};

// What every experiment hands to the CLI: a JSON document plus a flat table.
struct experiment_report {
    std::string experiment;
    nlohmann::json inputs;
    nlohmann::json outputs;
    std::vector<gate> gates;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;

    bool all_passed() const;
    nlohmann::json to_json() const;
    std::string to_csv() const;
};

// ---- stitched lemma/corollary check on a uniform seed partition

struct theorem_report {
    rational epsilon;
    partition seed{std::vector<rational>{rational(0), rational(1)}};
    std::vector<lemma_certificate> upper_certificates;
    std::vector<lemma_certificate> lower_certificates;
    partition q_upper{std::vector<rational>{rational(0), rational(1)}};
    partition q_lower{std::vector<rational>{rational(0), rational(1)}};
    rational upper;        // U(f, Q^U)
    rational right_upper;  // R(f, Q^U, re)
    rational right_lower;  // R(f, Q^L, re)
    rational lower;        // L(f, Q^L)
    rational final_gap;
    rational bound;        // 4 epsilon
    // sum_k U(f|[x_{k-1}, x_k], Q_k^U)
    rational stitched_upper;

    bool gate_passed() const { return final_gap < bound; }
    bool stitching_ok() const { return stitched_upper == upper; }
};

theorem_report theorem_check(const function_model &f, const rational &epsilon, std::size_t n);

// ---- empirical probe of right-endpoint sums under a mesh bound

struct probe_row {
    rational mesh_bound;
    std::size_t family_size = 0;
    rational largest_mesh;
    rational min_sum;
    rational max_sum;

    rational spread() const { return max_sum - min_sum; }
};

// Deterministic family of partitions with mesh <= h: the uniform partition
// with ceil((b - a) / h) cells, and the uniform partition with twice as many
// cells whose interior points are shifted right by j/3 of a cell, j = 0, 1, 2.
std::vector<partition> probe_family(const rational &a, const rational &b, const rational &h);

std::vector<probe_row> right_endpoint_limit_probe(const function_model &f, const std::vector<rational> &mesh_schedule);

// ---- Dirichlet(1, 0) on [0, 1] under uniform right-endpoint sums

struct counterexample_row {
    std::size_t n = 0;
    rational right_sum;
    rational upper;
    rational lower;
};

std::vector<counterexample_row> regular_endpoint_counterexample(const std::vector<std::size_t> &n_values);

// ---- x^(-1/2) on (0, 1], 0 at 0

struct unbounded_sum_row {
    std::size_t n = 0;
    bounded_approx right_sum;
    bounded_approx residual;  // 2 - sum
};

struct unbounded_integral_row {
    rational c;
    bounded_approx integral;  // 2 - 2 sqrt(c)
    bounded_approx residual;  // |integral - 2| = 2 sqrt(c)
};

struct unbounded_report {
    rational error_budget;
    std::vector<unbounded_sum_row> sums;
    std::vector<unbounded_integral_row> integrals;
};

// Every reported value is within its error bound, and each sum's bound is at
// most error_budget.
unbounded_report unbounded_demo(const std::vector<rational> &c_values, const std::vector<std::size_t> &n_values,
                                const rational &error_budget);

// ---- psi-rule sums against a Darboux bracket

struct psi_row {
    std::size_t n = 0;
    rational sum;
    rational lower;  // L(f, P_n)
    rational upper;  // U(f, P_n)
    rational residual;  // sum - reference

    bool within_bracket() const { return lower <= sum && sum <= upper; }
};

struct psi_experiment_report {
    std::string rule;
    std::size_t reference_depth = 0;
    // Midpoint of the bracket [L, U] on 2^depth uniform cells.
    rational reference;
    rational reference_width;
    std::vector<psi_row> rows;
};

psi_experiment_report psi_experiment(const function_model &f, const sample_rule &rule,
                                     const std::vector<std::size_t> &n_values, std::size_t reference_depth);

// ---- JSON/CSV reports

experiment_report make_report(const function_model &f, const theorem_report &r, std::size_t n);
experiment_report make_report(const function_model &f, const std::vector<probe_row> &rows);
experiment_report make_report(const std::vector<counterexample_row> &rows);
experiment_report make_report(const unbounded_report &r);
experiment_report make_report(const function_model &f, const psi_experiment_report &r);

} // namespace endpoint_lab

#endif
