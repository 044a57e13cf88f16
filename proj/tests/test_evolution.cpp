#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "doctest.h"
#include "segen/evolution.hpp"
#include "support/fixtures.hpp"

using namespace segen;
using namespace segen::testing;

namespace {

SamplePool tiny_pool(const Graph& g, std::size_t k, std::size_t pool_size) {
    SamplerConfig cfg;
    cfg.strategy = Strategy::BFS;
    cfg.k = k;
    cfg.pool_size = pool_size;
    cfg.seed = 404;
    return build_pool(g, cfg);
}

}  // namespace

TEST_CASE("fitness is the correlation-only validation loss") {
    // all-zero parameters: every latent vector is the 0.5 constant, so every
    // pairwise distance vanishes and the fitness is exactly zero
    LayerSpec spec(3, {}, 2);
    AutoencoderParams p = from_chromosome(spec, Vec::Zero(spec.parameter_count()));
    SubNetwork s = induced_subgraph(triangle(), {0, 1, 2});
    std::vector<const SubNetwork*> validation = {&s};
    CHECK(fitness(p, validation) == doctest::Approx(0.0));
}

TEST_CASE("fitness hand example on a two-node pair") {
    // one encoder layer, weights chosen so z differs by 0.5 in one coordinate:
    // use a large bias on node order. Simpler: evaluate against encode directly.
    LayerSpec spec(2, {}, 1);
    Rng rng(33);
    AutoencoderParams p = init_params(spec, rng);
    SubNetwork connected({0, 1}, {{0, 1}});
    std::vector<const SubNetwork*> validation = {&connected};
    Vec z0 = encode(p, padded_row(connected, 0, 2));
    Vec z1 = encode(p, padded_row(connected, 1, 2));
    // both ordered orientations of the single positive pair
    CHECK(fitness(p, validation) == doctest::Approx(2.0 * (z0 - z1).squaredNorm()));
}

TEST_CASE("fitness sign follows connectivity on a one-edge triple") {
    LayerSpec spec(3, {}, 2);
    Rng rng(34);
    AutoencoderParams p = init_params(spec, rng);
    SubNetwork s({0, 1, 2}, {{0, 1}});
    std::vector<const SubNetwork*> validation = {&s};
    Vec z0 = encode(p, padded_row(s, 0, 3));
    Vec z1 = encode(p, padded_row(s, 1, 3));
    Vec z2 = encode(p, padded_row(s, 2, 3));
    double expected = 2.0 * ((z0 - z1).squaredNorm() - (z0 - z2).squaredNorm() -
                             (z1 - z2).squaredNorm());
    CHECK(fitness(p, validation) == doctest::Approx(expected));
}

TEST_CASE("selection_probs") {
    SUBCASE("equal losses give the uniform distribution") {
        auto probs = selection_probs({3.0, 3.0, 3.0, 3.0});
        for (double p : probs) CHECK(p == doctest::Approx(0.25));
    }
    SUBCASE("two losses normalize to {0,1} and softmax to known values") {
        auto probs = selection_probs({10.0, 90.0});
        CHECK(probs[0] == doctest::Approx(1.0 / (1.0 + std::exp(-1.0))));  // 0.7311
        CHECK(probs[1] == doctest::Approx(1.0 / (1.0 + std::exp(1.0))));   // 0.2689
    }
    SUBCASE("probabilities sum to one and order inversely with loss") {
        auto probs = selection_probs({0.5, 0.1, 0.9, 0.3});
        CHECK(std::accumulate(probs.begin(), probs.end(), 0.0) ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(probs[1] > probs[3]);
        CHECK(probs[3] > probs[0]);
        CHECK(probs[0] > probs[2]);
    }
    SUBCASE("invariant under affine rescaling of the losses") {
        std::vector<double> base = {0.2, 0.7, 0.4, 1.1};
        std::vector<double> scaled(base.size());
        for (std::size_t i = 0; i < base.size(); ++i) scaled[i] = 100.0 * base[i] - 3.0;
        auto a = selection_probs(base);
        auto b = selection_probs(scaled);
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
    }
    SUBCASE("equivariant under permutation") {
        std::vector<double> losses = {0.3, 0.9, 0.1};
        auto direct = selection_probs(losses);
        auto swapped = selection_probs({0.9, 0.3, 0.1});
        CHECK(direct[0] == doctest::Approx(swapped[1]));
        CHECK(direct[1] == doctest::Approx(swapped[0]));
        CHECK(direct[2] == doctest::Approx(swapped[2]));
    }
}

TEST_CASE("select_parent_pairs") {
    SUBCASE("slots within a pair are always distinct") {
        Rng rng(8);
        auto probs = selection_probs({0.1, 0.9});
        for (int t = 0; t < 200; ++t) {
            auto pairs = select_parent_pairs(2, probs, rng);
            REQUIRE(pairs.size() == 2);
            for (auto [i, j] : pairs) CHECK(i != j);
        }
    }
    SUBCASE("first-slot marginals follow the selection probabilities") {
        Rng rng(9);
        std::vector<double> probs = selection_probs({0.0, 0.5, 1.0});
        std::vector<double> counts(3, 0.0);
        const int rounds = 100000;
        for (int t = 0; t < rounds; ++t)
            for (auto [i, j] : select_parent_pairs(1, probs, rng)) counts[i] += 1.0;
        for (std::size_t v = 0; v < 3; ++v)
            CHECK(std::abs(counts[v] / rounds - probs[v]) < 0.01);
    }
}

TEST_CASE("crossover") {
    Vec a = Vec::Constant(100000, 1.0);
    Vec b = Vec::Constant(100000, 2.0);

    SUBCASE("every entry comes from one of the parents") {
        Rng rng(4);
        Vec child = crossover(a, b, 0.3, 0.7, rng);
        for (Eigen::Index l = 0; l < child.size(); ++l)
            CHECK((child[l] == 1.0 || child[l] == 2.0));
    }
    SUBCASE("fitter parent wins about 73.1% of entries") {
        Rng rng(5);
        Vec child = crossover(a, b, 0.3, 0.7, rng);
        double from_a =
            double((child.array() == 1.0).count()) / double(child.size());
        CHECK(std::abs(from_a - 1.0 / (1.0 + std::exp(-1.0))) < 0.01);
    }
    SUBCASE("equal losses split evenly") {
        Rng rng(6);
        Vec child = crossover(a, b, 0.4, 0.4, rng);
        double from_a =
            double((child.array() == 1.0).count()) / double(child.size());
        CHECK(std::abs(from_a - 0.5) < 0.01);
    }
    SUBCASE("identical parents reproduce exactly") {
        Rng rng(7);
        CHECK(crossover(a, a, 0.1, 0.9, rng) == a);
    }
    SUBCASE("length mismatch rejected") {
        Rng rng(8);
        Vec short_b = Vec::Zero(3);
        CHECK_THROWS_AS(crossover(a, short_b, 0.1, 0.9, rng), std::invalid_argument);
    }
}

TEST_CASE("mutate") {
    Vec theta = Vec::Constant(100000, 5.0);
    SUBCASE("probability zero is the identity") {
        Rng rng(10);
        CHECK(mutate(theta, 0.0, rng) == theta);
    }
    SUBCASE("probability one rewrites every entry into [0,1)") {
        Rng rng(11);
        Vec out = mutate(theta, 1.0, rng);
        for (Eigen::Index l = 0; l < out.size(); ++l) {
            CHECK(out[l] >= 0.0);
            CHECK(out[l] < 1.0);
        }
    }
    SUBCASE("mutation count concentrates near p * length") {
        Rng rng(12);
        Vec out = mutate(theta, 0.01, rng);
        auto flipped = (out.array() != 5.0).count();
        // binomial(1e5, 0.01): mean 1000, sd ~31.5
        CHECK(flipped > 900);
        CHECK(flipped < 1100);
    }
}

TEST_CASE("evolve produces a trained generation of the same shape") {
    Graph g = path4();
    SamplePool pool = tiny_pool(g, 3, 12);

    EvolutionConfig e_cfg;
    e_cfg.m = 3;
    e_cfg.b = 4;
    e_cfg.v_size = 3;
    TrainConfig t_cfg;
    t_cfg.epochs_per_batch = 2;
    LayerSpec spec(3, {}, 2);

    Rng vr(1);
    auto val_idx = draw_validation(pool.size(), e_cfg.v_size, vr);
    std::vector<const SubNetwork*> validation;
    for (std::size_t i : val_idx) validation.push_back(&pool.subnetworks[i]);

    Generation gen;
    gen.index = 1;
    Rng ir(2);
    for (std::size_t i = 0; i < e_cfg.m; ++i)
        gen.models.push_back(init_params(spec, ir));
    for (const auto& mdl : gen.models) gen.fitness.push_back(fitness(mdl, validation));

    Generation next = evolve(gen, pool, validation, e_cfg, t_cfg, 77);
    CHECK(next.index == 2);
    CHECK(next.models.size() == e_cfg.m);
    CHECK(next.fitness.size() == e_cfg.m);
    for (double f : next.fitness) CHECK(std::isfinite(f));
}

TEST_CASE("run_evolution is deterministic for a fixed seed") {
    Graph g = star5();
    SamplePool pool = tiny_pool(g, 3, 10);

    EvolutionConfig e_cfg;
    e_cfg.m = 2;
    e_cfg.generations = 3;
    e_cfg.b = 3;
    e_cfg.v_size = 3;
    TrainConfig t_cfg;
    t_cfg.epochs_per_batch = 2;
    LayerSpec spec(3, {}, 2);

    EvolutionResult a = run_evolution(pool, e_cfg, t_cfg, spec, 2024);
    EvolutionResult b = run_evolution(pool, e_cfg, t_cfg, spec, 2024);
    REQUIRE(a.final_generation.models.size() == b.final_generation.models.size());
    for (std::size_t i = 0; i < a.final_generation.models.size(); ++i)
        CHECK(to_chromosome(a.final_generation.models[i]) ==
              to_chromosome(b.final_generation.models[i]));
    REQUIRE(a.trace.size() == 3);
    for (std::size_t t = 0; t < a.trace.size(); ++t) {
        CHECK(a.trace[t].generation == t + 1);
        CHECK(a.trace[t].best_loss == b.trace[t].best_loss);
        CHECK(a.trace[t].best_loss <= a.trace[t].mean_loss);
        CHECK(a.trace[t].mean_loss <= a.trace[t].worst_loss);
    }

    EvolutionResult c = run_evolution(pool, e_cfg, t_cfg, spec, 2025);
    bool differs = false;
    for (std::size_t i = 0; i < c.final_generation.models.size() && !differs; ++i)
        differs = to_chromosome(c.final_generation.models[i]) !=
                  to_chromosome(a.final_generation.models[i]);
    CHECK(differs);
}

TEST_CASE("run_evolution matches itself across thread counts") {
    Graph g = star5();
    SamplePool pool = tiny_pool(g, 3, 10);

    EvolutionConfig serial;
    serial.m = 4;
    serial.generations = 2;
    serial.b = 3;
    serial.v_size = 3;
    serial.threads = 1;
    EvolutionConfig parallel = serial;
    parallel.threads = 4;
    TrainConfig t_cfg;
    t_cfg.epochs_per_batch = 2;
    LayerSpec spec(3, {}, 2);

    EvolutionResult a = run_evolution(pool, serial, t_cfg, spec, 5);
    EvolutionResult b = run_evolution(pool, parallel, t_cfg, spec, 5);
    for (std::size_t i = 0; i < a.final_generation.models.size(); ++i)
        CHECK(to_chromosome(a.final_generation.models[i]) ==
              to_chromosome(b.final_generation.models[i]));
}

TEST_CASE("single-generation run skips breeding") {
    Graph g = path4();
    SamplePool pool = tiny_pool(g, 2, 8);
    EvolutionConfig e_cfg;
    e_cfg.m = 2;
    e_cfg.generations = 1;
    e_cfg.b = 2;
    e_cfg.v_size = 2;
    TrainConfig t_cfg;
    t_cfg.epochs_per_batch = 1;
    EvolutionResult r = run_evolution(pool, e_cfg, t_cfg, LayerSpec(2, {}, 1), 3);
    CHECK(r.trace.size() == 1);
    CHECK(r.final_generation.index == 1);
}

TEST_CASE("config validation") {
    EvolutionConfig cfg;
    cfg.m = 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.m = 2;
    cfg.generations = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.generations = 1;
    cfg.mutation_prob = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
