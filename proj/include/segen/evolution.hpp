#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "segen/autoencoder.hpp"
#include "segen/sampler.hpp"

namespace segen {

struct EvolutionConfig {
    std::size_t m = 10;            // population size, >= 2
    std::size_t generations = 30;  // K
    std::size_t b = 10;            // training batch size
    std::size_t v_size = 10;       // validation set size
    double mutation_prob = 0.01;
    std::size_t threads = 1;

    void validate() const;
};

struct Generation {
    std::size_t index = 1;  // 1-based
    std::vector<AutoencoderParams> models;
    std::vector<double> fitness;  // validation L_c per model
};

struct TraceRow {
    std::size_t generation;
    double best_loss;
    double mean_loss;
    double worst_loss;
};

struct EvolutionResult {
    Generation final_generation;
    std::vector<TraceRow> trace;
};

// Correlation-only validation loss L_c: signed pairwise latent distances
// summed over all validation sub-networks. Lower is fitter.
double fitness(const AutoencoderParams& model,
               const std::vector<const SubNetwork*>& validation);

// Min-max normalize the losses to [0,1], then softmax of the negated values.
std::vector<double> selection_probs(const std::vector<double>& losses);

// m pairs drawn independently from probs; the second slot is redrawn until
// it differs from the first.
std::vector<std::pair<std::size_t, std::size_t>> select_parent_pairs(
    std::size_t m, const std::vector<double>& probs, Rng& rng);

// Uniform crossover with pair-wise fitness-weighted inheritance: the loss
// pair is min-max normalized, then p_i = softmax(-loss_i) over the pair.
Vec crossover(const Vec& parent_i, const Vec& parent_j, double loss_i,
              double loss_j, Rng& rng);

// Each entry independently replaced by a uniform [0,1) draw with probability
// mutation_prob.
Vec mutate(const Vec& chromosome, double mutation_prob, Rng& rng);

// Breed, train, and evaluate the next generation from a fitness-evaluated one.
Generation evolve(const Generation& gen, const SamplePool& pool,
                  const std::vector<const SubNetwork*>& validation,
                  const EvolutionConfig& e_cfg, const TrainConfig& t_cfg,
                  std::uint64_t seed);

// Full evolution: init -> train generation 1 -> evolve K-1 times. The
// validation set is drawn once and shared by all generations; training
// batches are redrawn each generation.
EvolutionResult run_evolution(const SamplePool& pool, const EvolutionConfig& e_cfg,
                              const TrainConfig& t_cfg, const LayerSpec& spec,
                              std::uint64_t seed);

}  // namespace segen
