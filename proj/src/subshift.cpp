#include "lllkit/subshift.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace lllkit::subshift {

int min_block_constant() {
    for (int C = 2; C <= 64; ++C) {
        double x = std::exp2(-C / 2.0);
        if (x > 0.5) continue;   // outside the validity range of 2^(-2x) <= 1-x
        if (16.0 * C * x / (1.0 - x) <= 1.0) return C;
    }
    throw ValidationError("min_block_constant: no constant found below 64");
}

BlockFamily BlockFamily::truncated(std::int32_t n) const {
    if (n < 0 || n > N()) throw ValidationError("BlockFamily::truncated: bad n");
    BlockFamily out;
    out.family = family;
    out.C = C;
    out.blocks.assign(blocks.begin(), blocks.begin() + n);
    out.separators.assign(separators.begin(), separators.begin() + n);
    return out;
}

void BlockFamily::validate() const {
    if (static_cast<std::int32_t>(separators.size()) != N())
        throw ValidationError("BlockFamily: separator count must match block count");
    for (std::int32_t n = 1; n <= N(); ++n) {
        const auto& block = blocks[static_cast<std::size_t>(n - 1)];
        if (static_cast<std::int64_t>(block.size()) != C * n)
            throw ValidationError("BlockFamily: |T_" + std::to_string(n) + "| != C*n");
        std::set<groups::Elem> members(block.begin(), block.end());
        if (members.size() != block.size())
            throw ValidationError("BlockFamily: duplicate block element");
        const auto& s = separators[static_cast<std::size_t>(n - 1)];
        if (family->is_identity(s))
            throw ValidationError("BlockFamily: separator must not be the identity");
        for (const auto& t : block)
            if (members.count(family->mul(s, t)))
                throw ValidationError("BlockFamily: s_n T_n meets T_n");
    }
}

BlockFamily choose_blocks(const groups::GroupPatch& ambient, std::int64_t C, std::int32_t N,
                          std::optional<std::vector<groups::Elem>> separators) {
    if (C < 1 || N < 0) throw ValidationError("choose_blocks: need C >= 1, N >= 0");
    const auto& family = *ambient.family;

    BlockFamily out;
    out.family = ambient.family;
    out.C = C;
    if (separators) {
        if (static_cast<std::int32_t>(separators->size()) < N)
            throw ValidationError("choose_blocks: not enough separators supplied");
        out.separators.assign(separators->begin(), separators->begin() + N);
        for (const auto& s : out.separators)
            if (family.is_identity(s))
                throw ValidationError("choose_blocks: separator must not be the identity");
    } else {
        for (std::size_t i = 1; i < ambient.size() && static_cast<std::int32_t>(out.separators.size()) < N; ++i)
            out.separators.push_back(ambient.elements[i]);
        if (static_cast<std::int32_t>(out.separators.size()) < N)
            throw CapExceededError("choose_blocks: patch has fewer than N non-identity elements");
    }

    for (std::int32_t n = 1; n <= N; ++n) {
        const groups::Elem& s = out.separators[static_cast<std::size_t>(n - 1)];
        const std::int64_t want = C * n;
        std::vector<groups::Elem> block;
        std::set<groups::Elem> members, translated;   // T and s*T so far
        for (const auto& t : ambient.elements) {
            if (static_cast<std::int64_t>(block.size()) >= want) break;
            groups::Elem st = family.mul(s, t);
            if (translated.count(t)) continue;        // t in s*T
            if (members.count(st) || st == t) continue; // s*t would land in T u {t}
            block.push_back(t);
            members.insert(t);
            translated.insert(std::move(st));
        }
        if (static_cast<std::int64_t>(block.size()) < want)
            throw CapExceededError("choose_blocks: patch exhausted at |T_" + std::to_string(n) +
                                   "| = " + std::to_string(block.size()) + " of " + std::to_string(want));
        out.blocks.push_back(std::move(block));
    }
    out.validate();
    return out;
}

BlocksInBall choose_blocks_in_ball(std::shared_ptr<const groups::GroupFamily> family,
                                   std::int64_t C, std::int32_t N, int start_radius,
                                   int max_radius, std::size_t element_cap) {
    for (int r = std::max(start_radius, 1); r <= max_radius; ++r) {
        groups::GroupPatch ambient = groups::ball(family, r, element_cap);
        try {
            BlockFamily blocks = choose_blocks(ambient, C, N);
            return BlocksInBall{std::move(blocks), r};
        } catch (const CapExceededError&) {
            if (ambient.size() == static_cast<std::size_t>(family->kind() == groups::GroupFamily::Kind::Table
                                                               ? family->table_order()
                                                               : -1))
                throw;   // finite group exhausted; growing cannot help
        }
    }
    throw CapExceededError("choose_blocks_in_ball: no radius up to " + std::to_string(max_radius) +
                           " hosts the blocks");
}

std::vector<SubshiftConstraint> build_constraints(const BlockFamily& blocks,
                                                  const groups::GroupPatch& patch) {
    blocks.validate();
    const auto& family = *patch.family;
    std::vector<SubshiftConstraint> out;
    for (std::int32_t k = 1; k <= blocks.N(); ++k) {
        const auto& block = blocks.blocks[static_cast<std::size_t>(k - 1)];
        const auto& s = blocks.separators[static_cast<std::size_t>(k - 1)];
        // any valid g satisfies g * t0 in patch, so sweep the patch once
        groups::Elem t0_inv = family.inv(block[0]);
        std::set<groups::Elem> candidates;
        for (const auto& x : patch.elements) candidates.insert(family.mul(x, t0_inv));
        for (const auto& g : candidates) {
            SubshiftConstraint c;
            c.k = k;
            c.g = g;
            bool inside = true;
            for (const auto& t : block) {
                auto li = patch.index_of(family.mul(g, t));
                auto ri = patch.index_of(family.mul(g, family.mul(s, t)));
                if (!li || !ri) { inside = false; break; }
                c.left.push_back(*li);
                c.right.push_back(*ri);
            }
            if (inside) out.push_back(std::move(c));
        }
    }
    std::sort(out.begin(), out.end(), [](const SubshiftConstraint& a, const SubshiftConstraint& b) {
        if (a.k != b.k) return a.k < b.k;
        return a.g < b.g;
    });
    return out;
}

lll::LLLCertificate build_subshift_certificate(std::int64_t C, std::int32_t n) {
    if (C < 2 || n < 1) throw ValidationError("build_subshift_certificate: need C >= 2, n >= 1");
    const double ln2 = std::log(2.0);
    std::vector<double> log_p(static_cast<std::size_t>(n));
    std::vector<double> log_a(static_cast<std::size_t>(n));
    std::vector<std::vector<double>> delta(static_cast<std::size_t>(n),
                                           std::vector<double>(static_cast<std::size_t>(n)));
    for (std::int32_t k = 1; k <= n; ++k) {
        log_p[static_cast<std::size_t>(k - 1)] = -static_cast<double>(C) * k * ln2;
        log_a[static_cast<std::size_t>(k - 1)] = -static_cast<double>(C) * k * ln2 / 2.0;
        for (std::int32_t l = 1; l <= n; ++l)
            delta[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(l - 1)] =
                4.0 * static_cast<double>(C) * static_cast<double>(C) * l * k;
    }
    return lll::LLLCertificate::from_log(std::move(log_p), std::move(log_a), std::move(delta));
}

lll::ConstraintSystem compile_system(const std::vector<SubshiftConstraint>& constraints,
                                     std::size_t patch_size, std::int32_t num_classes) {
    lll::ConstraintSystem sys;
    sys.num_classes = num_classes;
    for (std::size_t v = 0; v < patch_size; ++v)
        sys.variables.push_back({static_cast<std::int32_t>(v), 2});
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        const auto& c = constraints[i];
        std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
        for (std::size_t t = 0; t < c.left.size(); ++t)
            pairs.emplace_back(static_cast<std::int32_t>(c.left[t]), static_cast<std::int32_t>(c.right[t]));
        lll::BadEvent e = lll::BadEvent::block_equality(static_cast<std::int64_t>(i), c.k, std::move(pairs));
        sys.events.push_back(std::move(e));
    }
    sys.validate();
    return sys;
}

PatchSolveResult solve_patch(std::shared_ptr<const groups::GroupPatch> patch,
                             const BlockFamily& blocks, std::uint64_t seed,
                             std::uint64_t max_rounds) {
    lll::CertificateReport cert = lll::check_certificate(build_subshift_certificate(blocks.C, std::max(blocks.N(), 1)));
    if (!cert.passes)
        throw ValidationError("solve_patch: certificate for (C=" + std::to_string(blocks.C) +
                              ", N=" + std::to_string(blocks.N()) + ") does not pass");

    std::vector<SubshiftConstraint> constraints = build_constraints(blocks, *patch);
    lll::ConstraintSystem sys = compile_system(constraints, patch->size(), std::max(blocks.N(), 1));
    lll::SolveResult solved = lll::resample_solve(sys, seed, max_rounds);

    PatchSolveResult result;
    result.rounds = solved.rounds;
    result.constraint_count = constraints.size();
    if (!solved.ok()) {
        result.violated_count = solved.violated_count;
        return result;
    }
    result.config = groups::Configuration::total(patch, 2, std::move(solved.assignment));
    FreeVerifyResult check = verify_free_patch(result.config, blocks);
    if (!check.pass)
        throw ValidationError("solve_patch: solver output failed verification");
    result.ok = true;
    return result;
}

FreeVerifyResult verify_free_patch(const groups::Configuration& config, const BlockFamily& blocks) {
    std::vector<SubshiftConstraint> constraints = build_constraints(blocks, *config.patch);
    FreeVerifyResult result;
    for (const auto& c : constraints) {
        bool window_defined = true;
        bool all_equal = true;
        for (std::size_t t = 0; t < c.left.size() && window_defined; ++t) {
            if (!config.defined[c.left[t]] || !config.defined[c.right[t]]) {
                window_defined = false;
                break;
            }
            if (config.values[c.left[t]] != config.values[c.right[t]]) { all_equal = false; break; }
        }
        if (!window_defined) continue;
        ++result.checked;
        if (all_equal) {
            result.pass = false;
            result.witness = std::make_pair(c.k, c.g);
            return result;
        }
    }
    return result;
}

PestovReport verify_pestov(const groups::Configuration& config, const groups::Elem& g,
                           const std::vector<groups::Elem>& A, const groups::GroupPatch& h_ball) {
    const auto& family = *config.patch->family;
    if (family.is_identity(g)) throw ValidationError("verify_pestov: g must differ from the identity");

    std::set<groups::Elem> a_set(A.begin(), A.end());
    std::vector<groups::Elem> core;   // A intersect g^-1 A
    for (const auto& a : A)
        if (a_set.count(family.mul(g, a))) core.push_back(a);

    PestovReport report;
    if (core.empty()) {
        report.status = PestovReport::Status::StructuralFailure;
        return report;
    }
    for (const auto& h : h_ball.elements) {
        bool tested = true;
        bool found = false;
        for (const auto& a : core) {
            auto ia = config.patch->index_of(family.mul(h, a));
            auto iga = config.patch->index_of(family.mul(h, family.mul(g, a)));
            if (!ia || !iga || !config.defined[*ia] || !config.defined[*iga]) {
                tested = false;
                break;
            }
            if (config.values[*ia] != config.values[*iga]) found = true;
        }
        if (!tested) {
            report.untested.push_back(h);
            continue;
        }
        ++report.tested;
        if (!found) {
            report.status = PestovReport::Status::Fail;
            report.failing_h = h;
            return report;
        }
    }
    return report;
}

} // namespace lllkit::subshift
