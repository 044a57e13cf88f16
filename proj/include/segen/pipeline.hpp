#pragma once

#include <string>

#include "segen/config.hpp"

namespace segen {

enum class Stage { Sample, Train, Eval, Run };

Stage stage_from_name(const std::string& name);

// Executes one pipeline stage against cfg.output_dir:
//   sample  pool_<strategy>.txt dumps
//   train   embeddings.csv, fitness_trace.csv, resolved_config.txt
//   eval    metrics.csv (reads embeddings.csv)
//   run     train followed by eval
// Identical seed and config produce byte-identical artifacts.
void run_experiment(const RunConfig& cfg, Stage stage);

}  // namespace segen
