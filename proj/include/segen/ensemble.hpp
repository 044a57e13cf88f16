#pragma once

#include <string>
#include <vector>

#include "segen/evolution.hpp"
#include "segen/graph.hpp"
#include "segen/sampler.hpp"

namespace segen {

// Per-node embedding table with a presence mask for never-sampled nodes.
struct EmbeddingTable {
    std::size_t dim = 0;
    std::vector<Vec> vectors;    // one slot per node id
    std::vector<char> present;

    std::size_t node_count() const { return vectors.size(); }
};

// Per-strategy fusion: for each node, average its encodings over all pool
// occurrences per unit model, then concatenate across the m models
// (dim = m * d). Nodes appearing in no sub-network are marked absent.
EmbeddingTable local_ensemble(const Generation& final_gen, const SamplePool& pool,
                              const Graph& graph);

// Single pass over absent nodes in ascending id order: mean of the
// originally-present neighbors, or uniform [0,1) random padding when no
// neighbor was present before the pass. Afterwards every node is present.
EmbeddingTable propagate_missing(const EmbeddingTable& table, const Graph& graph,
                                 Rng& rng);

// Equal-weight average across strategies. A node absent in every table maps
// to the zero vector.
EmbeddingTable global_ensemble(const std::vector<EmbeddingTable>& tables);

// CSV with header "node_id,dim_0,...,dim_{D-1}", floats at 9 significant digits.
void write_embeddings_csv(const EmbeddingTable& table, const std::string& path);
EmbeddingTable read_embeddings_csv(const std::string& path);

}  // namespace segen
