#ifndef LLLKIT_THUE_HPP
#define LLLKIT_THUE_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "lllkit/graph.hpp"
#include "lllkit/lll.hpp"

namespace lllkit::thue {

// Smallest alphabet size certified for max degree d:
// ceil((2d)^2 * exp(8 * sum_{j=1}^{terms} j/4^j)); terms = nullopt uses the
// closed form 4/9 of the full series.
std::int64_t min_alphabet_bound(int d, std::optional<int> terms = std::nullopt);

// partial sum of j/4^j (the series behind the bound)
double repetition_series(int terms);

// Certificate with p_i = C^-i, a_i = (2d)^-2i, delta_ij = 4*i*j*d^(2j),
// classes 1..r.
lll::LLLCertificate build_certificate(int d, std::int64_t C, std::int32_t r);

struct ThueInstance {
    Graph graph;
    std::int64_t alphabet = 0;
    std::int32_t max_half_length = 1;   // events cover paths of 2..2L vertices

    static std::int32_t default_half_length(std::int32_t n) {
        return std::max<std::int32_t>(1, std::min<std::int32_t>(n / 2, 12));
    }
};

inline constexpr std::uint64_t kDefaultPathCap = 10000000;

// Visits every simple path with an even number of vertices in {2, ..., max_vertices},
// each undirected path once (smaller endpoint first). Returning false stops
// the enumeration. Throws CapExceededError past `cap` emitted paths.
void enumerate_simple_paths(const Graph& g, std::int32_t max_vertices,
                            const std::function<bool(const SimplePath&)>& visit,
                            std::uint64_t cap = kDefaultPathCap);

std::vector<SimplePath> collect_simple_paths(const Graph& g, std::int32_t max_vertices,
                                             std::uint64_t cap = kDefaultPathCap);

// Repetition events of the instance compiled over alphabet-sized domains,
// sorted by (class, path sequence) so downstream solving is seed-deterministic.
lll::ConstraintSystem compile_system(const ThueInstance& instance,
                                     std::uint64_t path_cap = kDefaultPathCap);

struct ColorResult {
    bool ok = false;
    ColoredGraph colored;
    std::uint64_t rounds = 0;
    std::int64_t violated_count = 0;
    bool certified = false;   // alphabet met the derived bound
};

ColorResult nonrepetitive_color(const ThueInstance& instance, std::uint64_t seed,
                                std::uint64_t max_rounds = lll::kDefaultMaxRounds);

struct VerifyResult {
    bool pass = true;
    std::optional<SimplePath> witness;
};

// pass iff no simple path with 2n <= 2L vertices repeats its color sequence
VerifyResult verify_nonrepetitive(const ColoredGraph& colored, std::int32_t max_half_length,
                                  std::uint64_t path_cap = kDefaultPathCap);

} // namespace lllkit::thue

#endif
