#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "segen/sampler.hpp"
#include "support/fixtures.hpp"
#include "support/stats.hpp"

using namespace segen;
using namespace segen::testing;

namespace {

bool is_connected(const SubNetwork& s) {
    if (s.size() == 0) return false;
    std::vector<char> seen(s.size(), 0);
    std::vector<std::size_t> stack = {0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t u = 0; u < s.size(); ++u)
            if (!seen[u] && s.has_local_edge(v, u)) {
                seen[u] = 1;
                ++count;
                stack.push_back(u);
            }
    }
    return count == s.size();
}

std::set<NodeId> id_set(const SubNetwork& s) {
    return {s.original_ids().begin(), s.original_ids().end()};
}

// canonical outcome key: sorted original ids
std::vector<NodeId> outcome(const SubNetwork& s) {
    std::vector<NodeId> ids(s.original_ids());
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace

TEST_CASE("sample_bfs on STAR5 always yields a 2-edge star around the center") {
    Graph g = star5();
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        SubNetwork s = sample_bfs(g, 3, rng);
        CHECK(s.size() == 3);
        CHECK(id_set(s).count(0) == 1);  // center reachable from any seed
        CHECK(s.local_edges().size() == 2);
    }
}

TEST_CASE("sample_bfs edge cases") {
    Graph g = star5();
    Rng rng(1);
    CHECK(sample_bfs(g, 1, rng).local_edges().empty());
    CHECK_THROWS_AS(sample_bfs(g, 6, rng), std::invalid_argument);

    // two disjoint edges, k=3: one full edge pair plus a node from the other
    Graph two = two_edges();
    for (int t = 0; t < 30; ++t) {
        SubNetwork s = sample_bfs(two, 3, rng);
        CHECK(s.size() == 3);
        CHECK(s.local_edges().size() == 1);
    }
}

TEST_CASE("sample_dfs") {
    Rng rng(3);
    SUBCASE("whole path") {
        SubNetwork s = sample_dfs(path4(), 4, rng);
        CHECK(s.size() == 4);
        CHECK(s.local_edges().size() == 3);
    }
    SUBCASE("star from a leaf walks through the center") {
        Graph g = star5();
        for (int t = 0; t < 50; ++t) {
            SubNetwork s = sample_dfs(g, 3, rng);
            CHECK(s.size() == 3);
            CHECK(id_set(s).count(0) == 1);
            CHECK(s.local_edges().size() == 2);
        }
    }
    SUBCASE("k=1") {
        CHECK(sample_dfs(star5(), 1, rng).size() == 1);
    }
}

TEST_CASE("sample_hs covers whole small graphs and validates its coin") {
    Rng rng(11);
    SubNetwork s = sample_hs(triangle(), 3, 0.5, rng);
    CHECK(s.size() == 3);
    CHECK(s.local_edges().size() == 3);
    CHECK_THROWS_AS(sample_hs(triangle(), 3, 1.5, rng), std::invalid_argument);
}

TEST_CASE("connected strategies yield connected sub-networks on connected graphs") {
    Graph g = path4();
    Rng rng(5);
    for (int t = 0; t < 40; ++t) {
        CHECK(is_connected(sample_bfs(g, 3, rng)));
        CHECK(is_connected(sample_dfs(g, 3, rng)));
        CHECK(is_connected(sample_hs(g, 3, 0.5, rng)));
    }
}

TEST_CASE("biased node sampling matches the degree distribution on STAR5") {
    // first-draw marginals: center 4/8, each leaf 1/8
    Graph g = star5();
    Rng rng(17);
    const int draws = 100000;
    std::vector<int> counts(5, 0);
    for (int t = 0; t < draws; ++t)
        ++counts[sample_biased_node(g, 1, rng).original_ids()[0]];
    CHECK(std::abs(counts[0] / double(draws) - 0.5) < 0.05);
    for (int v = 1; v < 5; ++v)
        CHECK(std::abs(counts[v] / double(draws) - 0.125) < 0.0125);
}

TEST_CASE("biased node sampling falls back to uniform on edgeless graphs") {
    Graph g = Graph::from_edges(4, {});
    Rng rng(2);
    SubNetwork s = sample_biased_node(g, 4, rng);
    CHECK(s.size() == 4);
    CHECK(s.local_edges().empty());
}

TEST_CASE("biased node sampling with k=n returns the whole graph") {
    Rng rng(2);
    SubNetwork s = sample_biased_node(path4(), 4, rng);
    CHECK(s.size() == 4);
    CHECK(s.local_edges().size() == 3);
}

TEST_CASE("biased edge sampling matches d(u)+d(v) weights on PATH4") {
    // weights (0,1):3, (1,2):4, (2,3):3 -> probabilities 0.3, 0.4, 0.3
    Graph g = path4();
    Rng rng(23);
    const int draws = 100000;
    std::map<Edge, int> counts;
    for (int t = 0; t < draws; ++t) {
        SubNetwork s = sample_biased_edge(g, 2, rng);
        REQUIRE(s.local_edges().size() == 1);
        NodeId a = s.original_ids()[0], b = s.original_ids()[1];
        if (a > b) std::swap(a, b);
        ++counts[{a, b}];
    }
    CHECK(std::abs(counts[{0, 1}] / double(draws) - 0.3) < 0.03);
    CHECK(std::abs(counts[{1, 2}] / double(draws) - 0.4) < 0.04);
    CHECK(std::abs(counts[{2, 3}] / double(draws) - 0.3) < 0.03);
}

TEST_CASE("biased edge sampling stops before exceeding k and keeps sampled edges") {
    Graph g = star5();
    Rng rng(31);
    for (int t = 0; t < 50; ++t) {
        SubNetwork s = sample_biased_edge(g, 3, rng);
        CHECK(s.size() == 3);  // two star edges share the center
        CHECK(s.local_edges().size() == 2);
    }
    CHECK_THROWS_AS(sample_biased_edge(Graph::from_edges(3, {}), 2, rng),
                    std::invalid_argument);
}

TEST_CASE("hs degenerate coins match bfs/dfs outcome distributions on STAR5") {
    Graph g = star5();
    const int draws = 10000;
    auto histogram = [&](auto sample) {
        std::map<std::vector<NodeId>, std::size_t> h;
        Rng rng(41);
        for (int t = 0; t < draws; ++t) ++h[outcome(sample(rng))];
        return h;
    };
    auto bfs_h = histogram([&](Rng& rng) { return sample_bfs(g, 3, rng); });
    auto hs1_h = histogram([&](Rng& rng) { return sample_hs(g, 3, 1.0, rng); });
    CHECK(chi2_two_sample_pvalue(bfs_h, hs1_h) > 0.01);

    auto dfs_h = histogram([&](Rng& rng) { return sample_dfs(g, 3, rng); });
    auto hs0_h = histogram([&](Rng& rng) { return sample_hs(g, 3, 0.0, rng); });
    CHECK(chi2_two_sample_pvalue(dfs_h, hs0_h) > 0.01);
}

TEST_CASE("build_pool is deterministic and sized per config") {
    Graph g = path4();
    SamplerConfig cfg;
    cfg.strategy = Strategy::BFS;
    cfg.k = 3;
    cfg.pool_size = 25;
    cfg.seed = 99;
    SamplePool a = build_pool(g, cfg);
    SamplePool b = build_pool(g, cfg);
    REQUIRE(a.size() == 25);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.subnetworks[i].original_ids() == b.subnetworks[i].original_ids());
        CHECK(a.subnetworks[i].local_edges() == b.subnetworks[i].local_edges());
    }
    CHECK(dump_pool(a) == dump_pool(b));

    cfg.pool_size = 1;
    CHECK(build_pool(g, cfg).size() == 1);
}

TEST_CASE("plan_batches") {
    Graph g = path4();
    SamplerConfig cfg;
    cfg.k = 2;
    cfg.pool_size = 20;
    SamplePool pool = build_pool(g, cfg);

    Rng rng(5);
    BatchPlan plan = plan_batches(pool, 10, 10, 5, rng);
    REQUIRE(plan.batches.size() == 10);
    for (const auto& batch : plan.batches) CHECK(batch.size() == 10);
    CHECK(plan.validation.size() == 5);
    std::set<std::size_t> distinct(plan.validation.begin(), plan.validation.end());
    CHECK(distinct.size() == 5);  // validation drawn without replacement

    CHECK_THROWS_AS(plan_batches(pool, 2, 21, 5, rng), std::invalid_argument);
    CHECK_THROWS_AS(plan_batches(pool, 2, 5, 0, rng), std::invalid_argument);

    // with-replacement batches covering the whole pool may repeat indices
    Rng rng2(6);
    bool saw_repeat = false;
    for (int t = 0; t < 20 && !saw_repeat; ++t) {
        auto batches = draw_batches(pool.size(), 1, pool.size(), rng2);
        std::set<std::size_t> uniq(batches[0].begin(), batches[0].end());
        saw_repeat = uniq.size() < batches[0].size();
    }
    CHECK(saw_repeat);
}

TEST_CASE("strategy names round-trip") {
    for (Strategy s : {Strategy::BFS, Strategy::DFS, Strategy::HS, Strategy::NS,
                       Strategy::ES})
        CHECK(strategy_from_name(strategy_name(s)) == s);
    CHECK_THROWS(strategy_from_name("walk"));
}
