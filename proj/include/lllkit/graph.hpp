#ifndef LLLKIT_GRAPH_HPP
#define LLLKIT_GRAPH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lllkit/groups.hpp"
#include "lllkit/util.hpp"

namespace lllkit {

// Finite simple undirected graph: sorted adjacency lists, no loops or
// parallel edges.
struct Graph {
    std::int32_t n = 0;
    std::vector<std::vector<std::int32_t>> adj;

    static Graph from_edges(std::int32_t n, const std::vector<std::pair<std::int32_t, std::int32_t>>& edges);
    static Graph path(std::int32_t n);
    static Graph cycle(std::int32_t n);
    // text file with one "u v" pair per line, 0-based; '#' starts a comment
    static Graph from_edge_list_file(const std::string& path);
    // Cayley graph of a patch (generator edges, loops dropped)
    static Graph from_patch(const groups::GroupPatch& patch);
    static Graph from_schreier(const groups::SchreierGraph& sg);

    std::int32_t max_degree() const;
    std::vector<std::pair<std::int32_t, std::int32_t>> edge_list() const;
    bool has_edge(std::int32_t u, std::int32_t v) const;
};

// Ordered vertex sequence, pairwise distinct, consecutive vertices adjacent.
struct SimplePath {
    std::vector<std::int32_t> vertices;

    bool is_simple_in(const Graph& g) const;
    // c(x_t) = c(x_{n+t}) for all t, where the path has 2n vertices
    bool is_repetitive_under(const std::vector<std::int32_t>& colors) const;
};

struct ColoredGraph {
    Graph graph;
    std::int32_t alphabet = 0;            // colors take values in 1..alphabet
    std::vector<std::int32_t> colors;     // one per vertex
};

std::string to_dot(const ColoredGraph& g);

} // namespace lllkit

#endif
