#ifndef LLLKIT_LLL_HPP
#define LLLKIT_LLL_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lllkit/util.hpp"

namespace lllkit::lll {

struct Variable {
    std::int32_t id = 0;
    std::int32_t domain_size = 2;
};

enum class EventKind { PathRepetition, BlockEquality, CustomTable, Opaque };

// A bad event: a class id in 1..r, a support, and a pure predicate of the
// restriction of an assignment to that support. Structured kinds carry the
// structure they were compiled from, which also enables exact probability
// computation beyond the enumeration cap.
struct BadEvent {
    std::int64_t id = 0;
    std::int32_t class_id = 1;                     // 1-based
    std::vector<std::int32_t> support;             // sorted, distinct
    EventKind kind = EventKind::Opaque;

    // PathRepetition: ordered path vertices (2i of them, class i)
    std::vector<std::int32_t> path;
    // BlockEquality: order-matched cell pairs; all cells distinct
    std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
    // CustomTable: truth bits over support assignments in mixed-radix order
    // (support sorted ascending, last support variable varies fastest)
    std::vector<std::uint8_t> table;
    // Opaque: arbitrary pure predicate of the full assignment
    std::function<bool(std::span<const std::int32_t>)> predicate;

    bool occurs(std::span<const std::int32_t> assignment) const;

    static BadEvent path_repetition(std::int64_t id, std::vector<std::int32_t> path_vertices);
    static BadEvent block_equality(std::int64_t id, std::int32_t class_id,
                                   std::vector<std::pair<std::int32_t, std::int32_t>> pairs);
    static BadEvent custom_table(std::int64_t id, std::int32_t class_id,
                                 std::vector<std::int32_t> support,
                                 std::vector<std::uint8_t> table);
    static BadEvent opaque(std::int64_t id, std::int32_t class_id,
                           std::vector<std::int32_t> support,
                           std::function<bool(std::span<const std::int32_t>)> predicate);
};

// Finite variables with uniform finite domains, plus bad events. The implied
// distribution is the uniform product over the domains.
struct ConstraintSystem {
    std::vector<Variable> variables;
    std::vector<BadEvent> events;
    std::int32_t num_classes = 0;

    void validate() const;
    // binds table-backed predicates to the variable domains; required before
    // evaluating custom_table events loaded from serialized form
    void finalize();
};

// The (p_i, a_i, delta_ij) data of a local-lemma certificate. Values are held
// in log space: at the scales this toolkit certifies (r up to 200), p_i and
// a_i underflow doubles while their logs stay comfortably representable.
struct LLLCertificate {
    std::int32_t r = 0;
    std::vector<double> log_p;                  // log p_i, p_i in (0,1]
    std::vector<double> log_a;                  // log a_i, a_i in [0,1); -inf allowed
    std::vector<std::vector<double>> delta;     // nonnegative; integral in intent

    static LLLCertificate from_linear(const std::vector<double>& p,
                                      const std::vector<double>& a,
                                      std::vector<std::vector<double>> delta);
    static LLLCertificate from_log(std::vector<double> log_p,
                                   std::vector<double> log_a,
                                   std::vector<std::vector<double>> delta);
    double p(std::int32_t i) const { return std::exp(log_p[static_cast<std::size_t>(i)]); }
    double a(std::int32_t i) const { return std::exp(log_a[static_cast<std::size_t>(i)]); }
    void validate() const;
};

constexpr double kMarginalSlack = 1e-12;

struct ClassSlack {
    std::int32_t class_id = 0;     // 1-based
    double slack = 0.0;            // rhs - lhs in log space; >= 0 passes
    bool marginal = false;         // |slack| < kMarginalSlack
};

struct CertificateReport {
    bool passes = true;
    std::vector<ClassSlack> classes;
};

// Checks log(p_i) <= log(a_i) + sum_j delta_ij * log(1 - a_j) per class.
CertificateReport check_certificate(const LLLCertificate& cert);

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

// Exact probability of the event under the uniform product distribution:
// (#satisfying support assignments) / (#all support assignments).
// Structured kinds (path_repetition, block_equality) are counted in closed
// form over their validated structure; other kinds enumerate and throw
// CapExceededError past the cap.
Rational event_probability(const BadEvent& event, const ConstraintSystem& system,
                           std::uint64_t cap = kDefaultEnumerationCap);

// Entry (i,j): max over events A of class i of the number of class-j events
// other than A whose support meets A's support.
std::vector<std::vector<std::int64_t>> dependency_degrees(const ConstraintSystem& system,
                                                          int threads = 1);

inline constexpr std::uint64_t kDefaultMaxRounds = 1000000;

struct SolveResult {
    enum class Status { Solved, RoundsExhausted };
    Status status = Status::Solved;
    std::vector<std::int32_t> assignment;
    std::uint64_t rounds = 0;
    std::int64_t violated_count = 0;   // still-violated events on failure

    bool ok() const { return status == Status::Solved; }
};

// Moser-Tardos resampling with a deterministic policy: initialize every
// variable uniformly, then repeatedly redraw the support of the violated
// event with the smallest id. The returned assignment is re-verified against
// every event before it is handed back.
SolveResult resample_solve(const ConstraintSystem& system, std::uint64_t seed,
                           std::uint64_t max_rounds = kDefaultMaxRounds,
                           int threads = 1);

} // namespace lllkit::lll

#endif
