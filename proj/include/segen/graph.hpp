#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace segen {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;  // stored with first < second

// Undirected simple graph with dense node ids 0..n-1. Immutable after
// construction; safe for shared reads.
class Graph {
public:
    Graph() = default;

    // Builds a graph from an edge list. Reversed and repeated pairs are
    // deduplicated; self-loops are rejected.
    static Graph from_edges(std::size_t node_count, std::vector<Edge> edges);

    // Parses a whitespace-separated "u v" edge-list file. Lines starting
    // with '#' and blank lines are skipped. n = 1 + max id seen; every id
    // in [0, n) must appear on some edge (dense ids required).
    static Graph load_edge_list(const std::string& path);

    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    std::size_t degree(NodeId v) const;
    const std::vector<NodeId>& adjacent(NodeId v) const;
    bool has_edge(NodeId u, NodeId v) const;

    // hops == 1: direct neighbors. hops == 2: nodes reachable through an
    // intermediate, excluding v itself and its direct neighbors.
    std::vector<NodeId> neighbors(NodeId v, int hops) const;

private:
    std::vector<Edge> edges_;                      // sorted, u < v
    std::vector<std::vector<NodeId>> adjacency_;   // sorted per node
};

// A k-node sub-network sampled from a parent graph, reindexed to local
// indices 0..k-1. Edges need not be the full induced set (edge sampling
// keeps only the drawn edges).
class SubNetwork {
public:
    SubNetwork() = default;
    SubNetwork(std::vector<NodeId> original_ids, std::vector<Edge> local_edges);

    std::size_t size() const { return original_ids_.size(); }
    const std::vector<NodeId>& original_ids() const { return original_ids_; }
    const std::vector<Edge>& local_edges() const { return local_edges_; }

    bool has_local_edge(std::size_t i, std::size_t j) const;

    // Row i of the local adjacency matrix as a 0/1 vector of length size().
    std::vector<double> adjacency_row(std::size_t i) const;

    // Heap bytes held by this sub-network (ids + edges), for the space
    // accounting checks.
    std::size_t memory_bytes() const;

private:
    std::vector<NodeId> original_ids_;
    std::vector<Edge> local_edges_;  // local indices, first < second
};

// Sub-network induced by `ids` (all parent edges with both endpoints in
// `ids`, reindexed). `ids` must be distinct and valid.
SubNetwork induced_subgraph(const Graph& g, const std::vector<NodeId>& ids);

}  // namespace segen
