#include "segen/sampler.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "segen/errors.hpp"

namespace segen {

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::BFS: return "bfs";
        case Strategy::DFS: return "dfs";
        case Strategy::HS: return "hs";
        case Strategy::NS: return "ns";
        case Strategy::ES: return "es";
    }
    return "?";
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "bfs") return Strategy::BFS;
    if (name == "dfs") return Strategy::DFS;
    if (name == "hs") return Strategy::HS;
    if (name == "ns") return Strategy::NS;
    if (name == "es") return Strategy::ES;
    throw ConfigError("unknown sampling strategy: " + name);
}

std::size_t SamplePool::memory_bytes() const {
    std::size_t total = sizeof(SamplePool);
    for (const auto& s : subnetworks) total += s.memory_bytes();
    return total;
}

namespace {

void check_k(const Graph& g, std::size_t k) {
    if (k < 1 || k > g.node_count())
        throw std::invalid_argument("sub-network size k must be in [1, n]");
}

NodeId random_unselected(const std::vector<char>& selected, std::size_t remaining,
                         Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, remaining - 1);
    std::size_t target = pick(rng);
    for (NodeId v = 0; v < selected.size(); ++v)
        if (!selected[v] && target-- == 0) return v;
    throw std::logic_error("no unselected node left");
}

std::vector<NodeId> shuffled_unselected_neighbors(const Graph& g, NodeId v,
                                                  const std::vector<char>& selected,
                                                  Rng& rng) {
    std::vector<NodeId> out;
    for (NodeId u : g.adjacent(v))
        if (!selected[u]) out.push_back(u);
    std::shuffle(out.begin(), out.end(), rng);
    return out;
}

}  // namespace

SubNetwork sample_bfs(const Graph& g, std::size_t k, Rng& rng) {
    check_k(g, k);
    std::vector<char> selected(g.node_count(), 0);
    std::vector<NodeId> order;
    std::deque<NodeId> queue;
    while (order.size() < k) {
        if (queue.empty()) {
            // component exhausted (or first seed): fresh random seed
            NodeId seed = random_unselected(selected, g.node_count() - order.size(), rng);
            selected[seed] = 1;
            order.push_back(seed);
            queue.push_back(seed);
            continue;
        }
        NodeId v = queue.front();
        queue.pop_front();
        for (NodeId u : shuffled_unselected_neighbors(g, v, selected, rng)) {
            if (order.size() == k) break;
            if (selected[u]) continue;
            selected[u] = 1;
            order.push_back(u);
            queue.push_back(u);
        }
    }
    return induced_subgraph(g, order);
}

SubNetwork sample_dfs(const Graph& g, std::size_t k, Rng& rng) {
    check_k(g, k);
    std::vector<char> selected(g.node_count(), 0);
    std::vector<NodeId> order;
    std::vector<NodeId> stack;
    while (order.size() < k) {
        if (stack.empty()) {
            stack.push_back(random_unselected(selected, g.node_count() - order.size(), rng));
        }
        NodeId v = stack.back();
        stack.pop_back();
        if (selected[v]) continue;
        selected[v] = 1;
        order.push_back(v);
        for (NodeId u : shuffled_unselected_neighbors(g, v, selected, rng))
            stack.push_back(u);
    }
    return induced_subgraph(g, order);
}

SubNetwork sample_hs(const Graph& g, std::size_t k, double hs_bfs_prob, Rng& rng) {
    check_k(g, k);
    if (hs_bfs_prob < 0.0 || hs_bfs_prob > 1.0)
        throw std::invalid_argument("hs_bfs_prob must be in [0, 1]");
    std::vector<char> selected(g.node_count(), 0);
    std::vector<NodeId> order;
    std::bernoulli_distribution coin(hs_bfs_prob);

    // BFS step: expand from the earliest selected node that still has
    // unselected neighbors. DFS step: expand from the latest such node.
    auto expand_from = [&](bool earliest) -> bool {
        for (std::size_t t = 0; t < order.size(); ++t) {
            NodeId v = earliest ? order[t] : order[order.size() - 1 - t];
            auto cands = shuffled_unselected_neighbors(g, v, selected, rng);
            if (!cands.empty()) {
                selected[cands.front()] = 1;
                order.push_back(cands.front());
                return true;
            }
        }
        return false;
    };

    while (order.size() < k) {
        if (order.empty() || !expand_from(/*earliest=*/coin(rng))) {
            // Note expand_from tries both directions implicitly: when no
            // selected node has an unselected neighbor, the component is
            // exhausted and a fresh seed is picked.
            NodeId seed = random_unselected(selected, g.node_count() - order.size(), rng);
            selected[seed] = 1;
            order.push_back(seed);
        }
    }
    return induced_subgraph(g, order);
}

SubNetwork sample_biased_node(const Graph& g, std::size_t k, Rng& rng) {
    check_k(g, k);
    std::vector<char> selected(g.node_count(), 0);
    std::vector<NodeId> order;
    while (order.size() < k) {
        double total = 0.0;
        for (NodeId v = 0; v < g.node_count(); ++v)
            if (!selected[v]) total += static_cast<double>(g.degree(v));
        NodeId pick;
        if (total == 0.0) {
            // remaining nodes are all isolated: uniform fallback
            pick = random_unselected(selected, g.node_count() - order.size(), rng);
        } else {
            std::uniform_real_distribution<double> unif(0.0, total);
            double target = unif(rng);
            pick = g.node_count() - 1;
            for (NodeId v = 0; v < g.node_count(); ++v) {
                if (selected[v]) continue;
                target -= static_cast<double>(g.degree(v));
                if (target <= 0.0) {
                    pick = v;
                    break;
                }
            }
        }
        selected[pick] = 1;
        order.push_back(pick);
    }
    return induced_subgraph(g, order);
}

SubNetwork sample_biased_edge(const Graph& g, std::size_t k, Rng& rng) {
    if (g.edge_count() == 0)
        throw std::invalid_argument("biased edge sampling requires at least one edge");
    if (k < 2 || k > g.node_count())
        throw std::invalid_argument("edge sampling needs k in [2, n]");

    const auto& edges = g.edges();
    std::vector<double> weight(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e)
        weight[e] = static_cast<double>(g.degree(edges[e].first) +
                                        g.degree(edges[e].second));
    std::vector<char> used(edges.size(), 0);
    double total = std::accumulate(weight.begin(), weight.end(), 0.0);

    std::vector<char> in_nodes(g.node_count(), 0);
    std::vector<NodeId> nodes;
    std::vector<Edge> picked;
    std::size_t remaining = edges.size();
    while (remaining > 0) {
        std::uniform_real_distribution<double> unif(0.0, total);
        double target = unif(rng);
        std::size_t e = 0;
        for (; e + 1 < edges.size(); ++e) {
            if (used[e]) continue;
            target -= weight[e];
            if (target <= 0.0) break;
        }
        while (used[e]) --e;

        auto [u, v] = edges[e];
        std::size_t added = (!in_nodes[u] ? 1u : 0u) + (!in_nodes[v] ? 1u : 0u);
        if (nodes.size() + added > k) break;  // overflowing edge is discarded
        used[e] = 1;
        total -= weight[e];
        --remaining;
        picked.push_back(edges[e]);
        for (NodeId w : {u, v})
            if (!in_nodes[w]) {
                in_nodes[w] = 1;
                nodes.push_back(w);
            }
    }

    std::vector<std::size_t> local(g.node_count());
    for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = i;
    std::vector<Edge> local_edges;
    local_edges.reserve(picked.size());
    for (const auto& [u, v] : picked)
        local_edges.emplace_back(static_cast<NodeId>(local[u]),
                                 static_cast<NodeId>(local[v]));
    return SubNetwork(std::move(nodes), std::move(local_edges));
}

SubNetwork sample_one(const Graph& g, const SamplerConfig& cfg, Rng& rng) {
    switch (cfg.strategy) {
        case Strategy::BFS: return sample_bfs(g, cfg.k, rng);
        case Strategy::DFS: return sample_dfs(g, cfg.k, rng);
        case Strategy::HS: return sample_hs(g, cfg.k, cfg.hs_bfs_prob, rng);
        case Strategy::NS: return sample_biased_node(g, cfg.k, rng);
        case Strategy::ES: return sample_biased_edge(g, cfg.k, rng);
    }
    throw std::logic_error("unreachable strategy");
}

SamplePool build_pool(const Graph& g, const SamplerConfig& cfg) {
    if (cfg.pool_size < 1)
        throw std::invalid_argument("pool_size must be >= 1");
    SamplePool pool;
    pool.strategy = cfg.strategy;
    pool.subnetworks.reserve(cfg.pool_size);
    for (std::size_t i = 0; i < cfg.pool_size; ++i) {
        Rng rng = substream(cfg.seed, static_cast<std::uint64_t>(cfg.strategy), i);
        pool.subnetworks.push_back(sample_one(g, cfg, rng));
    }
    return pool;
}

std::vector<std::size_t> draw_validation(std::size_t pool_size, std::size_t v_size,
                                         Rng& rng) {
    if (v_size < 1 || v_size > pool_size)
        throw std::invalid_argument("validation size must be in [1, pool_size]");
    std::vector<std::size_t> idx(pool_size);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < v_size; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, pool_size - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    idx.resize(v_size);
    return idx;
}

std::vector<std::vector<std::size_t>> draw_batches(std::size_t pool_size,
                                                   std::size_t m, std::size_t b,
                                                   Rng& rng) {
    if (b < 1 || b > pool_size)
        throw std::invalid_argument("batch size must be in [1, pool_size]");
    std::uniform_int_distribution<std::size_t> pick(0, pool_size - 1);
    std::vector<std::vector<std::size_t>> batches(m);
    for (auto& batch : batches) {
        batch.reserve(b);
        for (std::size_t j = 0; j < b; ++j) batch.push_back(pick(rng));
    }
    return batches;
}

BatchPlan plan_batches(const SamplePool& pool, std::size_t m, std::size_t b,
                       std::size_t v_size, Rng& rng) {
    BatchPlan plan;
    plan.batches = draw_batches(pool.size(), m, b, rng);
    plan.validation = draw_validation(pool.size(), v_size, rng);
    return plan;
}

std::string dump_pool(const SamplePool& pool) {
    std::ostringstream out;
    for (const auto& s : pool.subnetworks) {
        out << "ids: ";
        for (std::size_t i = 0; i < s.size(); ++i)
            out << (i ? "," : "") << s.original_ids()[i];
        out << " ; edges: ";
        const auto& edges = s.local_edges();
        for (std::size_t e = 0; e < edges.size(); ++e)
            out << (e ? "," : "") << '(' << edges[e].first << ',' << edges[e].second << ')';
        out << '\n';
    }
    return out.str();
}

}  // namespace segen
