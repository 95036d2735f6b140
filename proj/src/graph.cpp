#include "lllkit/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace lllkit {

Graph Graph::from_edges(std::int32_t n, const std::vector<std::pair<std::int32_t, std::int32_t>>& edges) {
    if (n < 0) throw ValidationError("Graph: negative vertex count");
    Graph g;
    g.n = n;
    g.adj.assign(static_cast<std::size_t>(n), {});
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ValidationError("Graph: edge endpoint out of range");
        if (u == v) continue;
        g.adj[static_cast<std::size_t>(u)].push_back(v);
        g.adj[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nbrs : g.adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return g;
}

Graph Graph::path(std::int32_t n) {
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    for (std::int32_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return from_edges(n, edges);
}

Graph Graph::cycle(std::int32_t n) {
    if (n < 3) throw ValidationError("Graph::cycle: need at least 3 vertices");
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    for (std::int32_t i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return from_edges(n, edges);
}

Graph Graph::from_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open edge list file: " + path);
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    std::int32_t maxv = -1;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::int32_t u, v;
        if (!(ls >> u >> v)) continue;
        edges.emplace_back(u, v);
        maxv = std::max({maxv, u, v});
    }
    return from_edges(maxv + 1, edges);
}

Graph Graph::from_patch(const groups::GroupPatch& patch) {
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    for (std::size_t i = 0; i < patch.size(); ++i)
        for (std::int32_t j : patch.step[i])
            if (j >= 0 && j != static_cast<std::int32_t>(i))
                edges.emplace_back(static_cast<std::int32_t>(i), j);
    return from_edges(static_cast<std::int32_t>(patch.size()), edges);
}

Graph Graph::from_schreier(const groups::SchreierGraph& sg) {
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    for (std::size_t v = 0; v < sg.num_vertices(); ++v)
        for (std::int32_t w : sg.step[v])
            if (w != static_cast<std::int32_t>(v))
                edges.emplace_back(static_cast<std::int32_t>(v), w);
    return from_edges(static_cast<std::int32_t>(sg.num_vertices()), edges);
}

std::int32_t Graph::max_degree() const {
    std::int32_t d = 0;
    for (const auto& nbrs : adj) d = std::max(d, static_cast<std::int32_t>(nbrs.size()));
    return d;
}

std::vector<std::pair<std::int32_t, std::int32_t>> Graph::edge_list() const {
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    for (std::int32_t u = 0; u < n; ++u)
        for (std::int32_t v : adj[static_cast<std::size_t>(u)])
            if (u < v) edges.emplace_back(u, v);
    return edges;
}

bool Graph::has_edge(std::int32_t u, std::int32_t v) const {
    const auto& nbrs = adj[static_cast<std::size_t>(u)];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

bool SimplePath::is_simple_in(const Graph& g) const {
    if (vertices.empty()) return false;
    std::vector<std::int32_t> sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (std::int32_t v : vertices)
        if (v < 0 || v >= g.n) return false;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
        if (!g.has_edge(vertices[i], vertices[i + 1])) return false;
    return true;
}

bool SimplePath::is_repetitive_under(const std::vector<std::int32_t>& colors) const {
    if (vertices.size() % 2 != 0 || vertices.empty()) return false;
    std::size_t half = vertices.size() / 2;
    for (std::size_t t = 0; t < half; ++t)
        if (colors[static_cast<std::size_t>(vertices[t])] != colors[static_cast<std::size_t>(vertices[half + t])])
            return false;
    return true;
}

std::string to_dot(const ColoredGraph& g) {
    std::ostringstream os;
    os << "graph colored {\n";
    for (std::int32_t v = 0; v < g.graph.n; ++v)
        os << "  v" << v << " [label=\"" << g.colors[static_cast<std::size_t>(v)] << "\"];\n";
    for (auto [u, v] : g.graph.edge_list()) os << "  v" << u << " -- v" << v << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace lllkit
