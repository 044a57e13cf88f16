#pragma once

#include <vector>

#include "segen/ensemble.hpp"
#include "segen/graph.hpp"
#include "segen/rng.hpp"

namespace segen {

struct RecoveryReport {
    std::size_t np_ratio = 1;
    double auc = 0.0;
    double prec_at_k = 0.0;
    std::size_t k_cutoff = 500;
};

struct ClusterReport {
    std::size_t c = 0;
    double density = 0.0;
    double silhouette = 0.0;
    std::vector<std::size_t> assignment;
};

// Negated squared euclidean distance; higher means more likely linked.
double link_score(const Vec& z_u, const Vec& z_v);

// Positives: all graph edges. Negatives: np_ratio * |E| distinct uniformly
// sampled non-adjacent pairs. AUC uses rank statistics with half credit for
// ties; Prec@k truncates the cutoff to the candidate count.
RecoveryReport network_recovery(const EmbeddingTable& table, const Graph& graph,
                                std::size_t np_ratio, std::size_t k_cutoff,
                                Rng& rng);

// Lloyd's algorithm with k-means++ seeding; max 300 iterations or centroid
// shift < 1e-6; empty clusters repaired by stealing the point farthest from
// its centroid.
std::vector<std::size_t> kmeans(const EmbeddingTable& table, std::size_t c,
                                Rng& rng);

// Fraction of graph edges with both endpoints in the same cluster.
double density(const std::vector<std::size_t>& assignment, const Graph& graph);

// Mean silhouette coefficient (euclidean); singleton-cluster nodes and
// a == b == 0 degeneracies contribute 0.
double silhouette(const std::vector<std::size_t>& assignment,
                  const EmbeddingTable& table);

ClusterReport community_detection(const EmbeddingTable& table, const Graph& graph,
                                  std::size_t c, Rng& rng);

}  // namespace segen
