#pragma once

#include <Eigen/Dense>
#include <vector>

#include "segen/graph.hpp"
#include "segen/rng.hpp"

namespace segen {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Layer widths [input k, hidden_1, ..., hidden_o, latent d]. The decoder
// mirrors the encoder with the dims reversed.
struct LayerSpec {
    std::vector<std::size_t> dims;

    LayerSpec() = default;
    LayerSpec(std::size_t input, std::vector<std::size_t> hidden, std::size_t latent);

    std::size_t input_dim() const { return dims.front(); }
    std::size_t latent_dim() const { return dims.back(); }
    std::size_t hidden_layers() const { return dims.size() - 2; }  // o
    std::size_t parameter_count() const;
};

struct TrainConfig {
    double alpha = 0.01;          // correlation term weight
    double beta = 1e-4;           // regularization term weight
    double gamma_recon = 5.0;     // reconstruction emphasis on nonzero entries, > 1
    double learning_rate = 0.01;
    std::size_t epochs_per_batch = 20;

    void validate() const;
};

// All weights and biases of one unit model. Encoder weights are stored in
// application order (layer 1 first); decoder likewise (innermost first, so
// the last decoder layer produces the reconstruction).
struct AutoencoderParams {
    LayerSpec spec;
    std::vector<Mat> enc_w;
    std::vector<Vec> enc_b;
    std::vector<Mat> dec_w;
    std::vector<Vec> dec_b;
};

// Every entry drawn i.i.d. from the standard normal distribution.
AutoencoderParams init_params(const LayerSpec& spec, Rng& rng);

Vec encode(const AutoencoderParams& params, const Vec& x);
Vec decode(const AutoencoderParams& params, const Vec& z);

// Adjacency row of node i zero-padded to the model input dimension (for
// sub-networks smaller than the configured k).
Vec padded_row(const SubNetwork& s, std::size_t i, std::size_t input_dim);

// Correlated-reconstruction objective over one sub-network: weighted
// reconstruction + alpha * signed pairwise latent distances (both ordered
// orientations) + beta * Frobenius regularization of all weight matrices.
double loss_le(const AutoencoderParams& params, const SubNetwork& s,
               const TrainConfig& cfg);

// Exact analytic gradient of loss_le, flattened in chromosome order.
Vec gradient(const AutoencoderParams& params, const SubNetwork& s,
             const TrainConfig& cfg);

// Chromosome layout: encoder layers in order (W row-major, then b), then
// decoder layers in application order (W row-major, then b).
Vec to_chromosome(const AutoencoderParams& params);
AutoencoderParams from_chromosome(const LayerSpec& spec, const Vec& chromosome);

// epochs_per_batch shuffled passes over the batch, one Adam update per
// sub-network. Adam state is fresh per call.
AutoencoderParams train_on_batch(const AutoencoderParams& params,
                                 const std::vector<const SubNetwork*>& batch,
                                 const TrainConfig& cfg, Rng& rng);

double batch_loss(const AutoencoderParams& params,
                  const std::vector<const SubNetwork*>& batch,
                  const TrainConfig& cfg);

}  // namespace segen
