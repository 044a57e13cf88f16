#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "segen/sampler.hpp"

namespace segen {

// Full run configuration. Precedence when assembling: built-in defaults <
// preset < config file < explicit key overrides.
struct RunConfig {
    std::string graph_path;
    std::string output_dir = ".";
    std::vector<Strategy> strategies = {Strategy::BFS, Strategy::DFS, Strategy::HS,
                                        Strategy::NS, Strategy::ES};

    // sampling
    std::size_t k = 10;
    std::size_t pool_size = 200;
    double hs_bfs_prob = 0.5;

    // evolution
    std::size_t m = 10;
    std::size_t generations = 30;
    std::size_t b = 10;
    std::size_t v_size = 10;
    double mutation_prob = 0.01;

    // unit model
    double alpha = 0.01;
    double beta = 1e-4;
    double gamma_recon = 5.0;
    double learning_rate = 0.01;
    std::size_t epochs_per_batch = 20;
    std::vector<std::size_t> hidden = {32};
    std::size_t d = 16;

    // evaluation
    std::vector<std::size_t> np_ratios = {1, 5, 10};
    std::vector<std::size_t> cluster_counts = {5, 25, 50};
    std::size_t prec_cutoff = 500;

    std::uint64_t seed = 42;
    std::size_t threads = 0;  // 0 = all available cores

    // Assigns one key from its textual value; throws ConfigError on unknown
    // keys or invalid values.
    void set(const std::string& key, const std::string& value);

    // Applies a named parameter preset (ps1..ps5).
    void apply_preset(const std::string& name);

    // Flat "key = value" file, '#' comments.
    void load_file(const std::string& path);

    void validate() const;

    // Sorted "key = value" snapshot of every setting.
    std::string snapshot() const;

    std::size_t effective_threads() const;
};

}  // namespace segen
