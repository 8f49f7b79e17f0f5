#ifndef ENDPOINT_LAB_LEMMA_HPP
#define ENDPOINT_LAB_LEMMA_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <endpoint_lab/function_model.hpp>
#include <endpoint_lab/partition.hpp>
#include <endpoint_lab/rational.hpp>

namespace endpoint_lab
{

inline constexpr int certificate_schema_version = 1;

// Index sets over 1..n (the cells of the seed partition).
struct index_classes {
    std::vector<std::size_t> constant;     // g(x_{k-1}) = g(x_k)
    std::vector<std::size_t> drop;         // g(x_{k-1}) > g(x_k)
    std::vector<std::size_t> run_end;      // drop \ {n}, k + 1 not a drop
    std::vector<std::size_t> run_end_attained;  // g(z_k) = g(x_k)
    std::vector<std::size_t> run_end_jump;      // g(z_k) > g(x_k)

    friend bool operator==(const index_classes &, const index_classes &) = default;
};

// Points picked in cell k. y for every drop index; z for run ends;
// u when the level at z is attained, v when g jumps at z.
struct chosen_points {
    std::size_t k = 0;
    rational y;
    std::optional<rational> z;
    std::optional<rational> u;
    std::optional<rational> v;

    friend bool operator==(const chosen_points &, const chosen_points &) = default;
};

// E_q = (sup(f, [q', q]) - f(q)) (q - q') with q' the predecessor of q in Q
// (q' = a for q = a). `group` is the lowest i with q in Q_i.
struct ledger_entry {
    rational q;
    rational q_prev;
    rational sup;
    rational value;
    rational gap;
    int group = 0;

    friend bool operator==(const ledger_entry &, const ledger_entry &) = default;
};

// Full transcript of one run of the partition construction.
struct lemma_certificate {
    int schema_version = certificate_schema_version;
    rational epsilon_public;
    rational epsilon_internal;
    rational range_bound;
    // Absent when range_bound = 0 (constant function short-circuit).
    std::optional<rational> delta1;
    std::optional<rational> delta2;
    std::optional<rational> delta;
    partition seed{std::vector<rational>{rational(0), rational(1)}};
    std::vector<rational> g_values;
    index_classes classes;
    std::vector<chosen_points> chosen;
    std::array<std::vector<rational>, 4> groups;
    partition q{std::vector<rational>{rational(0), rational(1)}};
    std::vector<ledger_entry> ledger;
    std::array<rational, 4> group_sums;
    rational total_gap;
    rational upper_sum;
    rational right_sum;

    friend bool operator==(const lemma_certificate &, const lemma_certificate &) = default;
};

struct lemma_result {
    partition q;
    lemma_certificate certificate;
};

// Partition Q of [a, b] with U(f, Q) - R(f, Q, right endpoints) < epsilon.
lemma_result construct_lemma_partition(const function_model &f, const rational &epsilon);

// Partition Q with R(f, Q, right endpoints) - L(f, Q) < epsilon, obtained by
// running the construction on -f. The certificate is for -f.
lemma_result construct_corollary_partition(const function_model &f, const rational &epsilon);

struct verification_report {
    bool gate_passed = false;
    // epsilon_internal = epsilon_public / 6
    bool internal_split_ok = false;
    rational total_gap;
    rational epsilon;
    rational upper_sum;
    rational right_sum;
    std::array<rational, 4> group_bounds;
    std::array<bool, 4> group_bound_ok{};

    bool all_passed() const;
};

// Recomputes every derived field of the certificate from f and compares
// exactly; throws certificate_corruption on the first mismatch or violated
// point constraint. The epsilon gate and group bounds are reported, not thrown.
verification_report verify_certificate(const function_model &f, const lemma_certificate &cert);

nlohmann::json certificate_to_json(const function_model &f, const lemma_certificate &cert);
// Returns the certificate; the function document embedded in it is ignored.
lemma_certificate certificate_from_json(const nlohmann::json &doc);

} // namespace endpoint_lab

#endif
