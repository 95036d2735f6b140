#ifndef LLLKIT_SUBSHIFT_HPP
#define LLLKIT_SUBSHIFT_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "lllkit/groups.hpp"
#include "lllkit/lll.hpp"

namespace lllkit::subshift {

// Least C >= 2 with 16*C*x/(1-x) <= 1 for x = 2^(-C/2), x within the validity
// range of 2^(-2x) <= 1-x. Scans upward; the constant is small.
int min_block_constant();

// Blocks T_1..T_N with |T_n| = C*n and s_n T_n disjoint from T_n, where the
// separators s_n are the first N non-identity elements of the ambient patch
// (or explicit overrides). Block elements come from the ambient patch; their
// s_n-translates may leave it.
struct BlockFamily {
    std::shared_ptr<const groups::GroupFamily> family;
    std::int64_t C = 0;
    std::vector<std::vector<groups::Elem>> blocks;
    std::vector<groups::Elem> separators;

    std::int32_t N() const { return static_cast<std::int32_t>(blocks.size()); }
    // first n blocks
    BlockFamily truncated(std::int32_t n) const;
    void validate() const;
};

BlockFamily choose_blocks(const groups::GroupPatch& ambient, std::int64_t C, std::int32_t N,
                          std::optional<std::vector<groups::Elem>> separators = std::nullopt);

// Grows a ball until choose_blocks succeeds; returns the family and the
// radius that hosted it. Deterministic (+1 steps from start_radius).
struct BlocksInBall {
    BlockFamily blocks;
    int ambient_radius = 0;
};
BlocksInBall choose_blocks_in_ball(std::shared_ptr<const groups::GroupFamily> family,
                                   std::int64_t C, std::int32_t N, int start_radius,
                                   int max_radius = 64,
                                   std::size_t element_cap = groups::kDefaultBallCap);

// One constraint per (k, g) whose windows g*T_k and g*s_k*T_k both land in
// the patch; cells are order-matched via t -> s_k * t.
struct SubshiftConstraint {
    std::int32_t k = 0;                    // block index, 1-based
    groups::Elem g;
    std::vector<std::size_t> left;         // patch indices of g*T_k
    std::vector<std::size_t> right;        // patch indices of g*s_k*T_k
};

std::vector<SubshiftConstraint> build_constraints(const BlockFamily& blocks,
                                                  const groups::GroupPatch& patch);

// p_k = 2^-Ck, a_k = 2^-Ck/2, delta_kl = 4*C^2*l*k, classes 1..n.
lll::LLLCertificate build_subshift_certificate(std::int64_t C, std::int32_t n);

// Binary constraint system over the patch cells.
lll::ConstraintSystem compile_system(const std::vector<SubshiftConstraint>& constraints,
                                     std::size_t patch_size, std::int32_t num_classes);

struct PatchSolveResult {
    bool ok = false;
    groups::Configuration config;
    std::uint64_t rounds = 0;
    std::int64_t violated_count = 0;
    std::size_t constraint_count = 0;
};

// Solves the block constraints on the patch; requires the certificate for
// (C, N) to pass. The result is verified before being returned.
PatchSolveResult solve_patch(std::shared_ptr<const groups::GroupPatch> patch,
                             const BlockFamily& blocks, std::uint64_t seed,
                             std::uint64_t max_rounds = lll::kDefaultMaxRounds);

struct FreeVerifyResult {
    bool pass = true;
    std::optional<std::pair<std::int32_t, groups::Elem>> witness;   // (k, g)
    std::size_t checked = 0;
};

FreeVerifyResult verify_free_patch(const groups::Configuration& config, const BlockFamily& blocks);

struct PestovReport {
    enum class Status { Pass, Fail, StructuralFailure };
    Status status = Status::Pass;
    std::optional<groups::Elem> failing_h;
    std::vector<groups::Elem> untested;    // h whose window leaves the patch
    std::size_t tested = 0;

    bool pass() const { return status == Status::Pass; }
};

// Pestov 2-coloring condition at finite scale: for every h in h_ball whose
// cells all land in the configuration window, some a in A with a, ga both in
// A gives different colors at ha and hga. Untestable h are reported.
PestovReport verify_pestov(const groups::Configuration& config, const groups::Elem& g,
                           const std::vector<groups::Elem>& A, const groups::GroupPatch& h_ball);

} // namespace lllkit::subshift

#endif
