#include "segen/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "segen/errors.hpp"
#include "segen/parallel.hpp"

namespace segen {

namespace {

// sub-stream tags within one evolution run
enum StreamTag : std::uint64_t {
    kValidation = 1,
    kBatches = 2,
    kInit = 3,
    kTrain = 4,
    kPairs = 5,
    kBreed = 6,
};

std::pair<double, double> minmax_of(const std::vector<double>& xs) {
    auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    return {*lo, *hi};
}

std::vector<const SubNetwork*> resolve(const SamplePool& pool,
                                       const std::vector<std::size_t>& idx) {
    std::vector<const SubNetwork*> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(&pool.subnetworks[i]);
    return out;
}

void evaluate_fitness(Generation& gen,
                      const std::vector<const SubNetwork*>& validation,
                      std::size_t threads) {
    gen.fitness.assign(gen.models.size(), 0.0);
    parallel_for(gen.models.size(), threads, [&](std::size_t i) {
        gen.fitness[i] = fitness(gen.models[i], validation);
    });
}

TraceRow trace_row(const Generation& gen) {
    auto [lo, hi] = minmax_of(gen.fitness);
    double mean = std::accumulate(gen.fitness.begin(), gen.fitness.end(), 0.0) /
                  static_cast<double>(gen.fitness.size());
    return {gen.index, lo, mean, hi};
}

}  // namespace

void EvolutionConfig::validate() const {
    if (m < 2) throw std::invalid_argument("population size m must be >= 2");
    if (generations < 1) throw std::invalid_argument("generation count must be >= 1");
    if (mutation_prob < 0.0 || mutation_prob > 1.0)
        throw std::invalid_argument("mutation_prob must be in [0, 1]");
}

double fitness(const AutoencoderParams& model,
               const std::vector<const SubNetwork*>& validation) {
    if (validation.empty())
        throw std::invalid_argument("fitness: empty validation set");
    double total = 0.0;
    for (const SubNetwork* s : validation) {
        const std::size_t n = s->size();
        std::vector<Vec> zs(n);
        for (std::size_t i = 0; i < n; ++i)
            zs[i] = encode(model, padded_row(*s, i, model.spec.input_dim()));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) {
                    double sign = s->has_local_edge(i, j) ? 1.0 : -1.0;
                    total += sign * (zs[i] - zs[j]).squaredNorm();
                }
    }
    if (!std::isfinite(total)) throw NumericError("non-finite validation loss");
    return total;
}

std::vector<double> selection_probs(const std::vector<double>& losses) {
    if (losses.size() < 2)
        throw std::invalid_argument("selection needs at least two losses");
    for (double l : losses)
        if (!std::isfinite(l)) throw NumericError("non-finite loss in selection");

    auto [lo, hi] = minmax_of(losses);
    std::vector<double> norm(losses.size(), 0.0);
    if (hi > lo)
        for (std::size_t i = 0; i < losses.size(); ++i)
            norm[i] = (losses[i] - lo) / (hi - lo);

    double denom = 0.0;
    for (double l : norm) denom += std::exp(-l);
    std::vector<double> probs(losses.size());
    for (std::size_t i = 0; i < losses.size(); ++i)
        probs[i] = std::exp(-norm[i]) / denom;
    return probs;
}

std::vector<std::pair<std::size_t, std::size_t>> select_parent_pairs(
    std::size_t m, const std::vector<double>& probs, Rng& rng) {
    if (probs.size() < 2)
        throw std::invalid_argument("need at least two candidate parents");
    std::discrete_distribution<std::size_t> pick(probs.begin(), probs.end());
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(m);
    for (std::size_t t = 0; t < m; ++t) {
        std::size_t i = pick(rng);
        std::size_t j = pick(rng);
        while (j == i) j = pick(rng);
        pairs.emplace_back(i, j);
    }
    return pairs;
}

Vec crossover(const Vec& parent_i, const Vec& parent_j, double loss_i,
              double loss_j, Rng& rng) {
    if (parent_i.size() != parent_j.size())
        throw std::invalid_argument("crossover: chromosome length mismatch");
    // pair-wise min-max normalization: distinct losses map to {0, 1}
    double ni = 0.0, nj = 0.0;
    if (loss_i < loss_j) nj = 1.0;
    else if (loss_j < loss_i) ni = 1.0;
    double p_i = std::exp(-ni) / (std::exp(-ni) + std::exp(-nj));

    std::bernoulli_distribution from_i(p_i);
    Vec child(parent_i.size());
    for (Eigen::Index l = 0; l < child.size(); ++l)
        child[l] = from_i(rng) ? parent_i[l] : parent_j[l];
    return child;
}

Vec mutate(const Vec& chromosome, double mutation_prob, Rng& rng) {
    if (mutation_prob < 0.0 || mutation_prob > 1.0)
        throw std::invalid_argument("mutation_prob must be in [0, 1]");
    std::bernoulli_distribution flip(mutation_prob);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Vec out = chromosome;
    for (Eigen::Index l = 0; l < out.size(); ++l)
        if (flip(rng)) out[l] = unif(rng);
    return out;
}

Generation evolve(const Generation& gen, const SamplePool& pool,
                  const std::vector<const SubNetwork*>& validation,
                  const EvolutionConfig& e_cfg, const TrainConfig& t_cfg,
                  std::uint64_t seed) {
    e_cfg.validate();
    if (gen.fitness.size() != gen.models.size())
        throw std::invalid_argument("evolve: generation not fitness-evaluated");

    const std::size_t next_index = gen.index + 1;
    auto probs = selection_probs(gen.fitness);
    Rng pair_rng = substream(seed, kPairs, next_index);
    auto pairs = select_parent_pairs(e_cfg.m, probs, pair_rng);

    Rng batch_rng = substream(seed, kBatches, next_index);
    auto batches = draw_batches(pool.size(), e_cfg.m, e_cfg.b, batch_rng);

    Generation next;
    next.index = next_index;
    next.models.resize(e_cfg.m);
    parallel_for(e_cfg.m, e_cfg.threads, [&](std::size_t c) {
        auto [i, j] = pairs[c];
        Rng breed_rng = substream(seed, kBreed, next_index, c);
        Vec child = crossover(to_chromosome(gen.models[i]), to_chromosome(gen.models[j]),
                              gen.fitness[i], gen.fitness[j], breed_rng);
        child = mutate(child, e_cfg.mutation_prob, breed_rng);
        AutoencoderParams params = from_chromosome(gen.models[i].spec, child);
        Rng train_rng = substream(seed, kTrain, next_index, c);
        next.models[c] =
            train_on_batch(params, resolve(pool, batches[c]), t_cfg, train_rng);
    });
    evaluate_fitness(next, validation, e_cfg.threads);
    return next;
}

EvolutionResult run_evolution(const SamplePool& pool, const EvolutionConfig& e_cfg,
                              const TrainConfig& t_cfg, const LayerSpec& spec,
                              std::uint64_t seed) {
    e_cfg.validate();
    t_cfg.validate();
    if (pool.size() == 0)
        throw std::invalid_argument("run_evolution: empty pool");

    Rng valid_rng = substream(seed, kValidation);
    auto validation_idx = draw_validation(pool.size(), e_cfg.v_size, valid_rng);
    auto validation = resolve(pool, validation_idx);

    Generation gen;
    gen.index = 1;
    gen.models.resize(e_cfg.m);
    Rng batch_rng = substream(seed, kBatches, 1);
    auto batches = draw_batches(pool.size(), e_cfg.m, e_cfg.b, batch_rng);
    parallel_for(e_cfg.m, e_cfg.threads, [&](std::size_t i) {
        Rng init_rng = substream(seed, kInit, i);
        AutoencoderParams params = init_params(spec, init_rng);
        Rng train_rng = substream(seed, kTrain, 1, i);
        gen.models[i] =
            train_on_batch(params, resolve(pool, batches[i]), t_cfg, train_rng);
    });
    evaluate_fitness(gen, validation, e_cfg.threads);

    EvolutionResult result;
    result.trace.push_back(trace_row(gen));
    for (std::size_t t = 2; t <= e_cfg.generations; ++t) {
        gen = evolve(gen, pool, validation, e_cfg, t_cfg, seed);
        result.trace.push_back(trace_row(gen));
    }
    result.final_generation = std::move(gen);
    return result;
}

}  // namespace segen
