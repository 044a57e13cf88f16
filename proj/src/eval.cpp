#include "segen/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "segen/errors.hpp"

namespace segen {

double link_score(const Vec& z_u, const Vec& z_v) {
    if (z_u.size() != z_v.size())
        throw std::invalid_argument("link_score: vector length mismatch");
    return -(z_u - z_v).squaredNorm();
}

namespace {

void require_complete(const EmbeddingTable& table, const Graph& graph) {
    if (table.node_count() != graph.node_count())
        throw std::invalid_argument("embedding table does not cover the graph");
    for (char p : table.present)
        if (!p) throw std::invalid_argument("embedding table has absent nodes");
}

// rank-statistic AUC with half credit for ties
double auc_from_scores(const std::vector<double>& pos, const std::vector<double>& neg) {
    std::vector<std::pair<double, int>> all;
    all.reserve(pos.size() + neg.size());
    for (double s : pos) all.emplace_back(s, 1);
    for (double s : neg) all.emplace_back(s, 0);
    std::sort(all.begin(), all.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    double pos_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < all.size()) {
        std::size_t j = i;
        while (j < all.size() && all[j].first == all[i].first) ++j;
        double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // ranks are 1-based
        for (std::size_t t = i; t < j; ++t)
            if (all[t].second) pos_rank_sum += avg_rank;
        i = j;
    }
    double p = static_cast<double>(pos.size());
    double n = static_cast<double>(neg.size());
    return (pos_rank_sum - p * (p + 1.0) / 2.0) / (p * n);
}

}  // namespace

RecoveryReport network_recovery(const EmbeddingTable& table, const Graph& graph,
                                std::size_t np_ratio, std::size_t k_cutoff,
                                Rng& rng) {
    require_complete(table, graph);
    if (np_ratio < 1) throw std::invalid_argument("np_ratio must be >= 1");
    const std::size_t n = graph.node_count();
    const std::size_t n_pos = graph.edge_count();
    if (n_pos == 0) throw std::invalid_argument("network_recovery: graph has no edges");
    const std::size_t total_pairs = n * (n - 1) / 2;
    const std::size_t n_neg = np_ratio * n_pos;
    if (total_pairs - n_pos < n_neg)
        throw std::invalid_argument("not enough non-edges for the requested np_ratio");

    std::vector<Edge> negatives;
    negatives.reserve(n_neg);
    std::set<Edge> seen;
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    while (negatives.size() < n_neg) {
        NodeId u = pick(rng), v = pick(rng);
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (graph.has_edge(u, v)) continue;
        if (!seen.emplace(u, v).second) continue;
        negatives.emplace_back(u, v);
    }

    std::vector<double> pos_scores, neg_scores;
    pos_scores.reserve(n_pos);
    neg_scores.reserve(n_neg);
    for (const auto& [u, v] : graph.edges())
        pos_scores.push_back(link_score(table.vectors[u], table.vectors[v]));
    for (const auto& [u, v] : negatives)
        neg_scores.push_back(link_score(table.vectors[u], table.vectors[v]));

    RecoveryReport report;
    report.np_ratio = np_ratio;
    report.k_cutoff = k_cutoff;
    report.auc = auc_from_scores(pos_scores, neg_scores);

    // deterministic ordering: score desc, then pair id asc
    struct Scored {
        double score;
        Edge pair;
        bool positive;
    };
    std::vector<Scored> ranked;
    ranked.reserve(n_pos + n_neg);
    for (std::size_t e = 0; e < n_pos; ++e)
        ranked.push_back({pos_scores[e], graph.edges()[e], true});
    for (std::size_t e = 0; e < n_neg; ++e)
        ranked.push_back({neg_scores[e], negatives[e], false});
    std::sort(ranked.begin(), ranked.end(), [](const Scored& a, const Scored& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.pair < b.pair;
    });
    std::size_t cutoff = std::min(k_cutoff, ranked.size());
    std::size_t hits = 0;
    for (std::size_t t = 0; t < cutoff; ++t)
        if (ranked[t].positive) ++hits;
    report.prec_at_k = cutoff ? static_cast<double>(hits) / static_cast<double>(cutoff) : 0.0;
    return report;
}

std::vector<std::size_t> kmeans(const EmbeddingTable& table, std::size_t c, Rng& rng) {
    const std::size_t n = table.node_count();
    if (c < 1 || c > n)
        throw std::invalid_argument("cluster count must be in [1, n]");
    for (char p : table.present)
        if (!p) throw std::invalid_argument("kmeans: embedding table has absent nodes");
    const auto& pts = table.vectors;

    // k-means++ seeding
    std::vector<Vec> centroids;
    centroids.reserve(c);
    std::uniform_int_distribution<std::size_t> first(0, n - 1);
    centroids.push_back(pts[first(rng)]);
    std::vector<double> d2(n);
    while (centroids.size() < c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& cen : centroids)
                best = std::min(best, (pts[i] - cen).squaredNorm());
            d2[i] = best;
            total += best;
        }
        std::size_t pick = first(rng);  // fallback when all points coincide
        if (total > 0.0) {
            std::uniform_real_distribution<double> unif(0.0, total);
            double target = unif(rng);
            for (std::size_t i = 0; i < n; ++i) {
                target -= d2[i];
                if (target <= 0.0) {
                    pick = i;
                    break;
                }
            }
        }
        centroids.push_back(pts[pick]);
    }

    std::vector<std::size_t> assignment(n, 0);
    for (int iter = 0; iter < 300; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < c; ++j) {
                double d = (pts[i] - centroids[j]).squaredNorm();
                if (d < best) {
                    best = d;
                    assignment[i] = j;
                }
            }
        }
        // repair empty clusters with the point farthest from its centroid
        std::vector<std::size_t> counts(c, 0);
        for (std::size_t a : assignment) ++counts[a];
        for (std::size_t j = 0; j < c; ++j) {
            if (counts[j] > 0) continue;
            double worst = -1.0;
            std::size_t steal = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[assignment[i]] <= 1) continue;
                double d = (pts[i] - centroids[assignment[i]]).squaredNorm();
                if (d > worst) {
                    worst = d;
                    steal = i;
                }
            }
            --counts[assignment[steal]];
            assignment[steal] = j;
            counts[j] = 1;
        }

        std::vector<Vec> next(c, Vec::Zero(pts.front().size()));
        for (std::size_t i = 0; i < n; ++i) next[assignment[i]] += pts[i];
        double shift = 0.0;
        for (std::size_t j = 0; j < c; ++j) {
            next[j] /= static_cast<double>(counts[j]);
            shift = std::max(shift, (next[j] - centroids[j]).norm());
        }
        centroids = std::move(next);
        if (shift < 1e-6) break;
    }
    return assignment;
}

double density(const std::vector<std::size_t>& assignment, const Graph& graph) {
    if (graph.edge_count() == 0)
        throw std::invalid_argument("density: graph has no edges");
    if (assignment.size() != graph.node_count())
        throw std::invalid_argument("density: assignment does not cover the graph");
    std::size_t intra = 0;
    for (const auto& [u, v] : graph.edges())
        if (assignment[u] == assignment[v]) ++intra;
    return static_cast<double>(intra) / static_cast<double>(graph.edge_count());
}

double silhouette(const std::vector<std::size_t>& assignment,
                  const EmbeddingTable& table) {
    const std::size_t n = table.node_count();
    if (assignment.size() != n || n < 2)
        throw std::invalid_argument("silhouette: need >= 2 assigned nodes");
    std::size_t c = *std::max_element(assignment.begin(), assignment.end()) + 1;
    std::vector<std::size_t> counts(c, 0);
    for (std::size_t a : assignment) ++counts[a];
    std::size_t nonempty = 0;
    for (std::size_t cnt : counts) nonempty += cnt > 0;
    if (nonempty < 2)
        throw std::invalid_argument("silhouette undefined for a single cluster");

    double total = 0.0;
    std::vector<double> mean_dist(c);
    for (std::size_t i = 0; i < n; ++i) {
        if (counts[assignment[i]] == 1) continue;  // singleton contributes 0
        std::fill(mean_dist.begin(), mean_dist.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            mean_dist[assignment[j]] += (table.vectors[i] - table.vectors[j]).norm();
        }
        double a = mean_dist[assignment[i]] /
                   static_cast<double>(counts[assignment[i]] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < c; ++j) {
            if (j == assignment[i] || counts[j] == 0) continue;
            b = std::min(b, mean_dist[j] / static_cast<double>(counts[j]));
        }
        double denom = std::max(a, b);
        total += denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return total / static_cast<double>(n);
}

ClusterReport community_detection(const EmbeddingTable& table, const Graph& graph,
                                  std::size_t c, Rng& rng) {
    ClusterReport report;
    report.c = c;
    report.assignment = kmeans(table, c, rng);
    report.density = density(report.assignment, graph);
    report.silhouette = c > 1 ? silhouette(report.assignment, table) : 0.0;
    return report;
}

}  // namespace segen
