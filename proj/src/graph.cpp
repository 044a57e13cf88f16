#include "segen/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "segen/errors.hpp"

namespace segen {

Graph Graph::from_edges(std::size_t node_count, std::vector<Edge> edges) {
    Graph g;
    std::set<Edge> dedup;
    for (auto [u, v] : edges) {
        if (u == v)
            throw DataError("self-loop on node " + std::to_string(u));
        if (u >= node_count || v >= node_count)
            throw DataError("edge endpoint out of range");
        if (u > v) std::swap(u, v);
        dedup.emplace(u, v);
    }
    g.edges_.assign(dedup.begin(), dedup.end());
    g.adjacency_.assign(node_count, {});
    for (const auto& [u, v] : g.edges_) {
        g.adjacency_[u].push_back(v);
        g.adjacency_[v].push_back(u);
    }
    for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

Graph Graph::load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open edge list: " + path);

    std::vector<Edge> edges;
    NodeId max_id = 0;
    bool any = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ls(line);
        long long u = -1, v = -1;
        std::string extra;
        if (!(ls >> u >> v) || (ls >> extra) || u < 0 || v < 0)
            throw DataError(path + ":" + std::to_string(lineno) +
                            ": expected two nonnegative node ids");
        if (u == v)
            throw DataError(path + ":" + std::to_string(lineno) +
                            ": self-loop on node " + std::to_string(u));
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
        max_id = std::max({max_id, static_cast<NodeId>(u), static_cast<NodeId>(v)});
        any = true;
    }
    if (!any) throw DataError(path + ": no edges found");

    Graph g = from_edges(static_cast<std::size_t>(max_id) + 1, std::move(edges));
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (g.degree(v) == 0)
            throw DataError(path + ": node ids are not dense, id " +
                            std::to_string(v) + " never appears");
    return g;
}

std::size_t Graph::degree(NodeId v) const {
    return adjacent(v).size();
}

const std::vector<NodeId>& Graph::adjacent(NodeId v) const {
    if (v >= adjacency_.size())
        throw std::out_of_range("node id " + std::to_string(v) + " out of range");
    return adjacency_[v];
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    const auto& nbrs = adjacent(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<NodeId> Graph::neighbors(NodeId v, int hops) const {
    if (hops == 1) return adjacent(v);
    if (hops != 2)
        throw std::invalid_argument("hops must be 1 or 2");
    std::set<NodeId> out;
    for (NodeId w : adjacent(v))
        for (NodeId u : adjacent(w))
            if (u != v && !has_edge(u, v)) out.insert(u);
    return {out.begin(), out.end()};
}

SubNetwork::SubNetwork(std::vector<NodeId> original_ids, std::vector<Edge> local_edges)
    : original_ids_(std::move(original_ids)), local_edges_(std::move(local_edges)) {
    const std::size_t k = original_ids_.size();
    for (auto& [a, b] : local_edges_) {
        if (a > b) std::swap(a, b);
        if (a == b || b >= k)
            throw std::invalid_argument("invalid local edge in sub-network");
    }
    std::sort(local_edges_.begin(), local_edges_.end());
    local_edges_.erase(std::unique(local_edges_.begin(), local_edges_.end()),
                       local_edges_.end());
    original_ids_.shrink_to_fit();
    local_edges_.shrink_to_fit();
}

bool SubNetwork::has_local_edge(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    Edge e{static_cast<NodeId>(i), static_cast<NodeId>(j)};
    return std::binary_search(local_edges_.begin(), local_edges_.end(), e);
}

std::vector<double> SubNetwork::adjacency_row(std::size_t i) const {
    if (i >= size())
        throw std::out_of_range("local index out of range");
    std::vector<double> row(size(), 0.0);
    for (const auto& [a, b] : local_edges_) {
        if (a == i) row[b] = 1.0;
        if (b == i) row[a] = 1.0;
    }
    return row;
}

std::size_t SubNetwork::memory_bytes() const {
    return sizeof(SubNetwork) + original_ids_.capacity() * sizeof(NodeId) +
           local_edges_.capacity() * sizeof(Edge);
}

SubNetwork induced_subgraph(const Graph& g, const std::vector<NodeId>& ids) {
    std::vector<NodeId> sorted(ids);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("duplicate node ids in induced_subgraph");

    std::vector<std::int64_t> local(g.node_count(), -1);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] >= g.node_count())
            throw std::out_of_range("node id out of range in induced_subgraph");
        local[ids[i]] = static_cast<std::int64_t>(i);
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (NodeId w : g.adjacent(ids[i])) {
            std::int64_t j = local[w];
            if (j > static_cast<std::int64_t>(i))
                edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
        }
    return SubNetwork(ids, std::move(edges));
}

}  // namespace segen
