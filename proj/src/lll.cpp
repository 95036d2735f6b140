#include "lllkit/lll.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>

namespace lllkit::lll {

bool BadEvent::occurs(std::span<const std::int32_t> assignment) const {
    switch (kind) {
        case EventKind::PathRepetition: {
            std::size_t half = path.size() / 2;
            for (std::size_t t = 0; t < half; ++t)
                if (assignment[static_cast<std::size_t>(path[t])] !=
                    assignment[static_cast<std::size_t>(path[half + t])])
                    return false;
            return true;
        }
        case EventKind::BlockEquality: {
            for (auto [u, v] : pairs)
                if (assignment[static_cast<std::size_t>(u)] != assignment[static_cast<std::size_t>(v)])
                    return false;
            return true;
        }
        case EventKind::CustomTable: {
            // mixed-radix index; radix per variable filled in by the system
            // during occurs_with_domains; plain table lookup needs the
            // caller-provided radices, so fall through to predicate form.
            if (predicate) return predicate(assignment);
            throw ValidationError("custom_table event evaluated without bound domains");
        }
        case EventKind::Opaque:
            return predicate(assignment);
    }
    return false;
}

BadEvent BadEvent::path_repetition(std::int64_t id, std::vector<std::int32_t> path_vertices) {
    if (path_vertices.size() < 2 || path_vertices.size() % 2 != 0)
        throw ValidationError("path_repetition: path must have a positive even number of vertices");
    std::vector<std::int32_t> support = path_vertices;
    std::sort(support.begin(), support.end());
    if (std::adjacent_find(support.begin(), support.end()) != support.end())
        throw ValidationError("path_repetition: path vertices must be distinct");
    BadEvent e;
    e.id = id;
    e.class_id = static_cast<std::int32_t>(path_vertices.size() / 2);
    e.kind = EventKind::PathRepetition;
    e.support = std::move(support);
    e.path = std::move(path_vertices);
    return e;
}

BadEvent BadEvent::block_equality(std::int64_t id, std::int32_t class_id,
                                  std::vector<std::pair<std::int32_t, std::int32_t>> pairs) {
    if (pairs.empty()) throw ValidationError("block_equality: no cell pairs");
    std::vector<std::int32_t> support;
    for (auto [u, v] : pairs) {
        support.push_back(u);
        support.push_back(v);
    }
    std::sort(support.begin(), support.end());
    if (std::adjacent_find(support.begin(), support.end()) != support.end())
        throw ValidationError("block_equality: cells must be pairwise distinct");
    BadEvent e;
    e.id = id;
    e.class_id = class_id;
    e.kind = EventKind::BlockEquality;
    e.support = std::move(support);
    e.pairs = std::move(pairs);
    return e;
}

BadEvent BadEvent::custom_table(std::int64_t id, std::int32_t class_id,
                                std::vector<std::int32_t> support,
                                std::vector<std::uint8_t> table) {
    std::sort(support.begin(), support.end());
    if (support.empty() || std::adjacent_find(support.begin(), support.end()) != support.end())
        throw ValidationError("custom_table: support must be nonempty and distinct");
    BadEvent e;
    e.id = id;
    e.class_id = class_id;
    e.kind = EventKind::CustomTable;
    e.support = support;
    e.table = std::move(table);
    return e;
}

BadEvent BadEvent::opaque(std::int64_t id, std::int32_t class_id,
                          std::vector<std::int32_t> support,
                          std::function<bool(std::span<const std::int32_t>)> predicate) {
    std::sort(support.begin(), support.end());
    if (support.empty() || std::adjacent_find(support.begin(), support.end()) != support.end())
        throw ValidationError("opaque event: support must be nonempty and distinct");
    BadEvent e;
    e.id = id;
    e.class_id = class_id;
    e.kind = EventKind::Opaque;
    e.support = std::move(support);
    e.predicate = std::move(predicate);
    return e;
}

void ConstraintSystem::validate() const {
    const std::int32_t n = static_cast<std::int32_t>(variables.size());
    for (std::int32_t i = 0; i < n; ++i) {
        if (variables[static_cast<std::size_t>(i)].id != i)
            throw ValidationError("system: variable ids must be 0..n-1 in order");
        if (variables[static_cast<std::size_t>(i)].domain_size < 1)
            throw ValidationError("system: empty variable domain");
    }
    for (const auto& e : events) {
        if (e.support.empty()) throw ValidationError("system: event with empty support");
        for (std::int32_t v : e.support)
            if (v < 0 || v >= n) throw ValidationError("system: event support outside the variable set");
        if (e.class_id < 1 || e.class_id > num_classes)
            throw ValidationError("system: event class outside 1..r");
        if (e.kind == EventKind::CustomTable) {
            u128 total = 1;
            for (std::int32_t v : e.support)
                total = Rational::checked_mul(total, static_cast<u128>(variables[static_cast<std::size_t>(v)].domain_size));
            if (static_cast<u128>(e.table.size()) != total)
                throw ValidationError("system: custom_table size does not match the support domain product");
        }
    }
}

void ConstraintSystem::finalize() {
    for (auto& e : events) {
        if (e.kind != EventKind::CustomTable || e.predicate) continue;
        std::vector<std::pair<std::int32_t, std::uint64_t>> sup;
        for (std::int32_t v : e.support)
            sup.emplace_back(v, static_cast<std::uint64_t>(variables[static_cast<std::size_t>(v)].domain_size));
        e.predicate = [sup = std::move(sup), table = e.table](std::span<const std::int32_t> assignment) {
            std::uint64_t idx = 0;
            for (auto [v, dom] : sup)
                idx = idx * dom + static_cast<std::uint64_t>(assignment[static_cast<std::size_t>(v)]);
            return table[idx] != 0;
        };
    }
}

LLLCertificate LLLCertificate::from_linear(const std::vector<double>& p,
                                           const std::vector<double>& a,
                                           std::vector<std::vector<double>> delta) {
    LLLCertificate c;
    c.r = static_cast<std::int32_t>(p.size());
    for (double pi : p) {
        if (!(pi > 0.0) || pi > 1.0)
            throw ValidationError("certificate: p_i must lie in (0, 1]");
        c.log_p.push_back(std::log(pi));
    }
    for (double ai : a) {
        if (ai < 0.0 || ai >= 1.0)
            throw ValidationError("certificate: a_i must lie in [0, 1)");
        c.log_a.push_back(std::log(ai));   // -inf when a_i == 0
    }
    c.delta = std::move(delta);
    c.validate();
    return c;
}

LLLCertificate LLLCertificate::from_log(std::vector<double> log_p,
                                        std::vector<double> log_a,
                                        std::vector<std::vector<double>> delta) {
    LLLCertificate c;
    c.r = static_cast<std::int32_t>(log_p.size());
    c.log_p = std::move(log_p);
    c.log_a = std::move(log_a);
    c.delta = std::move(delta);
    c.validate();
    return c;
}

void LLLCertificate::validate() const {
    const std::size_t n = static_cast<std::size_t>(r);
    if (log_p.size() != n || log_a.size() != n || delta.size() != n)
        throw ValidationError("certificate: p, a, delta lengths must equal r");
    for (double lp : log_p) {
        if (std::isnan(lp) || lp > 0.0)
            throw ValidationError("certificate: p_i must lie in (0, 1]");
        if (std::isinf(lp))
            throw ValidationError("certificate: p_i = 0 is not a valid probability bound");
    }
    for (double la : log_a) {
        if (std::isnan(la) || la >= 0.0)
            throw ValidationError("certificate: a_i must lie in [0, 1)");
    }
    for (const auto& row : delta) {
        if (row.size() != n) throw ValidationError("certificate: delta must be r x r");
        for (double d : row)
            if (std::isnan(d) || d < 0.0)
                throw ValidationError("certificate: delta entries must be nonnegative");
    }
}

CertificateReport check_certificate(const LLLCertificate& cert) {
    cert.validate();
    CertificateReport report;
    const std::size_t n = static_cast<std::size_t>(cert.r);
    // per-class j term log(1 - a_j), with an exact-tail fallback once a_j
    // underflows: log1p(-a_j) == -a_j there, so the product delta * a_j is
    // reconstructed through logs instead of flushing to zero.
    std::vector<double> log1m_a(n);
    for (std::size_t j = 0; j < n; ++j) {
        double aj = std::exp(cert.log_a[j]);
        log1m_a[j] = aj > 0.0 ? std::log1p(-aj) : 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        double rhs = cert.log_a[i];
        for (std::size_t j = 0; j < n; ++j) {
            double d = cert.delta[i][j];
            if (d == 0.0) continue;
            if (log1m_a[j] != 0.0) {
                rhs += d * log1m_a[j];
            } else if (!std::isinf(cert.log_a[j])) {
                rhs -= std::exp(std::log(d) + cert.log_a[j]);
            }
        }
        double slack = rhs - cert.log_p[i];
        report.classes.push_back(ClassSlack{static_cast<std::int32_t>(i) + 1, slack,
                                            std::fabs(slack) < kMarginalSlack});
        if (!(slack >= 0.0)) report.passes = false;
    }
    return report;
}

namespace {

Rational enumerate_probability(const BadEvent& event, const ConstraintSystem& system,
                               std::uint64_t cap) {
    u128 total = 1;
    for (std::int32_t v : event.support) {
        total = Rational::checked_mul(total, static_cast<u128>(system.variables[static_cast<std::size_t>(v)].domain_size));
        if (total > static_cast<u128>(cap))
            throw CapExceededError("event_probability: support enumeration of " +
                                   Rational::u128_to_string(total) + "+ assignments exceeds cap " +
                                   std::to_string(cap));
    }
    std::vector<std::int32_t> assignment(system.variables.size(), 0);
    std::vector<std::size_t> radix_pos;
    for (std::int32_t v : event.support) radix_pos.push_back(static_cast<std::size_t>(v));

    std::uint64_t satisfying = 0;
    std::uint64_t total64 = static_cast<std::uint64_t>(total);
    const bool table_kind = event.kind == EventKind::CustomTable && !event.table.empty();
    for (std::uint64_t code = 0; code < total64; ++code) {
        std::uint64_t rest = code;
        for (std::size_t t = radix_pos.size(); t-- > 0;) {
            std::uint64_t dom = static_cast<std::uint64_t>(system.variables[radix_pos[t]].domain_size);
            assignment[radix_pos[t]] = static_cast<std::int32_t>(rest % dom);
            rest /= dom;
        }
        bool occ = table_kind ? event.table[code] != 0 : event.occurs(assignment);
        if (occ) ++satisfying;
    }
    return Rational(satisfying, total);
}

} // namespace

Rational event_probability(const BadEvent& event, const ConstraintSystem& system, std::uint64_t cap) {
    for (std::int32_t v : event.support)
        if (v < 0 || static_cast<std::size_t>(v) >= system.variables.size())
            throw ValidationError("event_probability: support outside the variable set");

    switch (event.kind) {
        case EventKind::PathRepetition: {
            // distinct vertices over a uniform alphabet: first half free,
            // second half forced
            std::int32_t dom = system.variables[static_cast<std::size_t>(event.path[0])].domain_size;
            for (std::int32_t v : event.path)
                if (system.variables[static_cast<std::size_t>(v)].domain_size != dom)
                    return enumerate_probability(event, system, cap);
            unsigned half = static_cast<unsigned>(event.path.size() / 2);
            u128 sat = Rational::checked_pow(static_cast<u128>(dom), half);
            u128 total = Rational::checked_mul(sat, sat);
            return Rational(sat, total);
        }
        case EventKind::BlockEquality: {
            // cells are pairwise distinct, so pairs are independent
            u128 sat = 1, total = 1;
            for (auto [u, v] : event.pairs) {
                u128 du = static_cast<u128>(system.variables[static_cast<std::size_t>(u)].domain_size);
                u128 dv = static_cast<u128>(system.variables[static_cast<std::size_t>(v)].domain_size);
                sat = Rational::checked_mul(sat, std::min(du, dv));
                total = Rational::checked_mul(total, Rational::checked_mul(du, dv));
            }
            return Rational(sat, total);
        }
        case EventKind::CustomTable:
        case EventKind::Opaque:
            return enumerate_probability(event, system, cap);
    }
    throw ValidationError("event_probability: unknown event kind");
}

std::vector<std::vector<std::int64_t>> dependency_degrees(const ConstraintSystem& system, int threads) {
    const std::size_t r = static_cast<std::size_t>(system.num_classes);
    const std::size_t m = system.events.size();
    std::vector<std::vector<std::int64_t>> result(r, std::vector<std::int64_t>(r, 0));
    if (m == 0) return result;

    std::vector<std::vector<std::int32_t>> events_at_var(system.variables.size());
    for (std::size_t e = 0; e < m; ++e)
        for (std::int32_t v : system.events[e].support)
            events_at_var[static_cast<std::size_t>(v)].push_back(static_cast<std::int32_t>(e));

    // per-event neighbor class counts; merged by entrywise max afterwards
    std::vector<std::vector<std::int64_t>> per_event(m);
    parallel_chunks(m, threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<std::int64_t> stamp(m, -1);
        for (std::size_t e = lo; e < hi; ++e) {
            std::vector<std::int64_t> counts(r, 0);
            for (std::int32_t v : system.events[e].support)
                for (std::int32_t o : events_at_var[static_cast<std::size_t>(v)]) {
                    if (static_cast<std::size_t>(o) == e) continue;
                    if (stamp[static_cast<std::size_t>(o)] == static_cast<std::int64_t>(e)) continue;
                    stamp[static_cast<std::size_t>(o)] = static_cast<std::int64_t>(e);
                    ++counts[static_cast<std::size_t>(system.events[static_cast<std::size_t>(o)].class_id - 1)];
                }
            per_event[e] = std::move(counts);
        }
    });
    for (std::size_t e = 0; e < m; ++e) {
        std::size_t i = static_cast<std::size_t>(system.events[e].class_id - 1);
        for (std::size_t j = 0; j < r; ++j)
            result[i][j] = std::max(result[i][j], per_event[e][j]);
    }
    return result;
}

SolveResult resample_solve(const ConstraintSystem& system, std::uint64_t seed,
                           std::uint64_t max_rounds, int threads) {
    system.validate();
    std::mt19937_64 rng(seed);
    std::vector<std::int32_t> assignment(system.variables.size());
    for (std::size_t v = 0; v < assignment.size(); ++v)
        assignment[v] = static_cast<std::int32_t>(
            uniform_below(rng, static_cast<std::uint64_t>(system.variables[v].domain_size)));

    SolveResult result;
    const std::size_t m = system.events.size();
    for (std::uint64_t round = 0; round < max_rounds; ++round) {
        std::size_t violated = m;
        for (std::size_t e = 0; e < m; ++e)
            if (system.events[e].occurs(assignment)) { violated = e; break; }
        if (violated == m) {
            // final verification sweep: every predicate, order-independent
            std::atomic<std::int64_t> bad{0};
            parallel_chunks(m, threads, [&](std::size_t lo, std::size_t hi) {
                std::int64_t local = 0;
                for (std::size_t e = lo; e < hi; ++e)
                    if (system.events[e].occurs(assignment)) ++local;
                bad += local;
            });
            if (bad.load() != 0)
                throw ValidationError("resample_solve: verification sweep disagrees with the scan");
            result.status = SolveResult::Status::Solved;
            result.assignment = std::move(assignment);
            result.rounds = round;
            return result;
        }
        for (std::int32_t v : system.events[violated].support)
            assignment[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(uniform_below(
                rng, static_cast<std::uint64_t>(system.variables[static_cast<std::size_t>(v)].domain_size)));
        result.rounds = round + 1;
    }
    std::int64_t still = 0;
    for (const auto& e : system.events)
        if (e.occurs(assignment)) ++still;
    result.status = SolveResult::Status::RoundsExhausted;
    result.assignment = std::move(assignment);
    result.violated_count = still;
    return result;
}

} // namespace lllkit::lll
