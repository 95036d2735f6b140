#include "lllkit/thue.hpp"

#include <algorithm>
#include <cmath>

namespace lllkit::thue {

double repetition_series(int terms) {
    double s = 0.0;
    for (int j = 1; j <= terms; ++j) s += j * std::pow(0.25, j);
    return s;
}

std::int64_t min_alphabet_bound(int d, std::optional<int> terms) {
    if (d < 1) throw ValidationError("min_alphabet_bound: d must be >= 1");
    double series = terms ? repetition_series(*terms) : 4.0 / 9.0;
    double bound = static_cast<double>(2 * d) * static_cast<double>(2 * d) * std::exp(8.0 * series);
    return static_cast<std::int64_t>(std::ceil(bound));
}

lll::LLLCertificate build_certificate(int d, std::int64_t C, std::int32_t r) {
    if (d < 1 || C < 2 || r < 1)
        throw ValidationError("build_certificate: need d >= 1, C >= 2, r >= 1");
    std::vector<double> log_p(static_cast<std::size_t>(r));
    std::vector<double> log_a(static_cast<std::size_t>(r));
    std::vector<std::vector<double>> delta(static_cast<std::size_t>(r),
                                           std::vector<double>(static_cast<std::size_t>(r)));
    const double logC = std::log(static_cast<double>(C));
    const double log2d = std::log(static_cast<double>(2 * d));
    const double logd = std::log(static_cast<double>(d));
    for (std::int32_t i = 1; i <= r; ++i) {
        log_p[static_cast<std::size_t>(i - 1)] = -i * logC;
        log_a[static_cast<std::size_t>(i - 1)] = -2.0 * i * log2d;
        for (std::int32_t j = 1; j <= r; ++j)
            delta[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                4.0 * i * j * std::exp(2.0 * j * logd);
    }
    return lll::LLLCertificate::from_log(std::move(log_p), std::move(log_a), std::move(delta));
}

namespace {

struct PathEnumerator {
    const Graph& g;
    std::int32_t max_vertices;
    const std::function<bool(const SimplePath&)>& visit;
    std::uint64_t cap;
    std::uint64_t emitted = 0;
    std::vector<std::int32_t> stack;
    std::vector<bool> used;
    bool stopped = false;

    bool emit() {
        if (emitted >= cap)
            throw CapExceededError("enumerate_simple_paths: more than " + std::to_string(cap) + " paths");
        ++emitted;
        SimplePath p{stack};
        if (!visit(p)) { stopped = true; return false; }
        return true;
    }

    void dfs(std::int32_t v) {
        stack.push_back(v);
        used[static_cast<std::size_t>(v)] = true;
        if (stack.size() >= 2 && stack.size() % 2 == 0 && stack.front() < stack.back())
            if (!emit()) { used[static_cast<std::size_t>(v)] = false; stack.pop_back(); return; }
        if (static_cast<std::int32_t>(stack.size()) < max_vertices) {
            for (std::int32_t w : g.adj[static_cast<std::size_t>(v)]) {
                if (used[static_cast<std::size_t>(w)]) continue;
                dfs(w);
                if (stopped) break;
            }
        }
        used[static_cast<std::size_t>(v)] = false;
        stack.pop_back();
    }
};

} // namespace

void enumerate_simple_paths(const Graph& g, std::int32_t max_vertices,
                            const std::function<bool(const SimplePath&)>& visit,
                            std::uint64_t cap) {
    if (max_vertices < 2) return;
    PathEnumerator e{g, max_vertices, visit, cap};
    e.used.assign(static_cast<std::size_t>(g.n), false);
    for (std::int32_t v = 0; v < g.n && !e.stopped; ++v) e.dfs(v);
}

std::vector<SimplePath> collect_simple_paths(const Graph& g, std::int32_t max_vertices,
                                             std::uint64_t cap) {
    std::vector<SimplePath> out;
    enumerate_simple_paths(g, max_vertices, [&](const SimplePath& p) {
        out.push_back(p);
        return true;
    }, cap);
    return out;
}

lll::ConstraintSystem compile_system(const ThueInstance& instance, std::uint64_t path_cap) {
    if (instance.alphabet < 1) throw ValidationError("compile_system: alphabet must be >= 1");
    lll::ConstraintSystem sys;
    sys.num_classes = instance.max_half_length;
    for (std::int32_t v = 0; v < instance.graph.n; ++v)
        sys.variables.push_back({v, static_cast<std::int32_t>(instance.alphabet)});

    std::vector<SimplePath> paths =
        collect_simple_paths(instance.graph, 2 * instance.max_half_length, path_cap);
    std::sort(paths.begin(), paths.end(), [](const SimplePath& a, const SimplePath& b) {
        if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
        return a.vertices < b.vertices;
    });
    for (std::size_t i = 0; i < paths.size(); ++i)
        sys.events.push_back(lll::BadEvent::path_repetition(static_cast<std::int64_t>(i),
                                                            std::move(paths[i].vertices)));
    sys.validate();
    return sys;
}

ColorResult nonrepetitive_color(const ThueInstance& instance, std::uint64_t seed,
                                std::uint64_t max_rounds) {
    lll::ConstraintSystem sys = compile_system(instance);
    lll::SolveResult solved = lll::resample_solve(sys, seed, max_rounds);

    ColorResult result;
    result.rounds = solved.rounds;
    result.certified =
        instance.alphabet >= min_alphabet_bound(instance.graph.max_degree() == 0 ? 1 : instance.graph.max_degree());
    if (!solved.ok()) {
        result.ok = false;
        result.violated_count = solved.violated_count;
        return result;
    }
    std::vector<std::int32_t> colors(solved.assignment.size());
    for (std::size_t v = 0; v < colors.size(); ++v) colors[v] = solved.assignment[v] + 1;
    result.colored = ColoredGraph{instance.graph, static_cast<std::int32_t>(instance.alphabet), std::move(colors)};
    VerifyResult check = verify_nonrepetitive(result.colored, instance.max_half_length);
    if (!check.pass)
        throw ValidationError("nonrepetitive_color: solver output failed verification");
    result.ok = true;
    return result;
}

VerifyResult verify_nonrepetitive(const ColoredGraph& colored, std::int32_t max_half_length,
                                  std::uint64_t path_cap) {
    VerifyResult result;
    enumerate_simple_paths(colored.graph, 2 * max_half_length, [&](const SimplePath& p) {
        if (p.is_repetitive_under(colored.colors)) {
            result.pass = false;
            result.witness = p;
            return false;
        }
        return true;
    }, path_cap);
    return result;
}

} // namespace lllkit::thue
