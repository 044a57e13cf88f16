#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "segen/graph.hpp"
#include "segen/rng.hpp"

namespace segen {

enum class Strategy { BFS, DFS, HS, NS, ES };

const char* strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

struct SamplerConfig {
    Strategy strategy = Strategy::BFS;
    std::size_t k = 10;          // sub-network size
    std::size_t pool_size = 200;
    double hs_bfs_prob = 0.5;    // HS coin: probability of a BFS step
    std::uint64_t seed = 0;
};

struct SamplePool {
    Strategy strategy = Strategy::BFS;
    std::vector<SubNetwork> subnetworks;

    std::size_t size() const { return subnetworks.size(); }
    std::size_t memory_bytes() const;
};

struct BatchPlan {
    std::vector<std::vector<std::size_t>> batches;  // m lists of b pool indices
    std::vector<std::size_t> validation;            // v_size distinct indices
};

// Connected-expansion samplers. All pick a random seed node and grow until k
// distinct nodes are selected, restarting from a fresh random seed when the
// current component is exhausted. Result is the induced sub-network.
SubNetwork sample_bfs(const Graph& g, std::size_t k, Rng& rng);
SubNetwork sample_dfs(const Graph& g, std::size_t k, Rng& rng);
SubNetwork sample_hs(const Graph& g, std::size_t k, double hs_bfs_prob, Rng& rng);

// Degree-biased node sampling without replacement; falls back to uniform
// among the remaining nodes when all remaining degrees are zero.
SubNetwork sample_biased_node(const Graph& g, std::size_t k, Rng& rng);

// Degree-biased edge sampling without replacement; stops before the node
// count would exceed k. The sub-network keeps only the sampled edges.
SubNetwork sample_biased_edge(const Graph& g, std::size_t k, Rng& rng);

SubNetwork sample_one(const Graph& g, const SamplerConfig& cfg, Rng& rng);

// pool_size independent samples; sample i uses sub-stream (seed, strategy, i),
// so pools are reproducible bit-exact for a fixed seed.
SamplePool build_pool(const Graph& g, const SamplerConfig& cfg);

std::vector<std::size_t> draw_validation(std::size_t pool_size, std::size_t v_size,
                                         Rng& rng);
std::vector<std::vector<std::size_t>> draw_batches(std::size_t pool_size,
                                                   std::size_t m, std::size_t b,
                                                   Rng& rng);

// m batches of b indices drawn uniformly with replacement, plus a validation
// set of v_size indices drawn without replacement.
BatchPlan plan_batches(const SamplePool& pool, std::size_t m, std::size_t b,
                       std::size_t v_size, Rng& rng);

// Line-oriented debug dump: "ids: i1,i2,... ; edges: (a,b),(c,d),..." with
// local-index edge pairs, one sub-network per line.
std::string dump_pool(const SamplePool& pool);

}  // namespace segen
