#include "segen/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "segen/ensemble.hpp"
#include "segen/errors.hpp"
#include "segen/eval.hpp"
#include "segen/evolution.hpp"

namespace segen {

namespace {

// top-level sub-stream tags per (strategy, purpose)
enum PipelineTag : std::uint64_t {
    kEvolutionSeed = 101,
    kPropagation = 102,
    kRecovery = 103,
    kClustering = 104,
};

std::string artifact(const RunConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.output_dir) / name).string();
}

std::ofstream open_artifact(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write artifact: " + path);
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

Graph load_graph(const RunConfig& cfg) {
    if (cfg.graph_path.empty()) throw ConfigError("no graph file given");
    Graph g = Graph::load_edge_list(cfg.graph_path);
    if (cfg.k > g.node_count())
        throw ConfigError("k exceeds the graph's node count");
    return g;
}

SamplerConfig sampler_config(const RunConfig& cfg, Strategy strategy) {
    SamplerConfig sc;
    sc.strategy = strategy;
    sc.k = cfg.k;
    sc.pool_size = cfg.pool_size;
    sc.hs_bfs_prob = cfg.hs_bfs_prob;
    sc.seed = cfg.seed;
    return sc;
}

void stage_sample(const RunConfig& cfg, const Graph& graph) {
    for (Strategy strategy : cfg.strategies) {
        SamplePool pool = build_pool(graph, sampler_config(cfg, strategy));
        auto out = open_artifact(
            artifact(cfg, std::string("pool_") + strategy_name(strategy) + ".txt"));
        out << dump_pool(pool);
    }
}

void stage_train(const RunConfig& cfg, const Graph& graph) {
    EvolutionConfig e_cfg;
    e_cfg.m = cfg.m;
    e_cfg.generations = cfg.generations;
    e_cfg.b = cfg.b;
    e_cfg.v_size = cfg.v_size;
    e_cfg.mutation_prob = cfg.mutation_prob;
    e_cfg.threads = cfg.effective_threads();

    TrainConfig t_cfg;
    t_cfg.alpha = cfg.alpha;
    t_cfg.beta = cfg.beta;
    t_cfg.gamma_recon = cfg.gamma_recon;
    t_cfg.learning_rate = cfg.learning_rate;
    t_cfg.epochs_per_batch = cfg.epochs_per_batch;

    LayerSpec spec(cfg.k, cfg.hidden, cfg.d);

    auto trace_out = open_artifact(artifact(cfg, "fitness_trace.csv"));
    trace_out << "strategy,generation,best_loss,mean_loss,worst_loss\n";

    std::vector<EmbeddingTable> tables;
    for (std::size_t s = 0; s < cfg.strategies.size(); ++s) {
        Strategy strategy = cfg.strategies[s];
        SamplePool pool = build_pool(graph, sampler_config(cfg, strategy));
        std::uint64_t run_seed =
            splitmix64(cfg.seed ^ splitmix64(kEvolutionSeed + static_cast<std::uint64_t>(strategy)));
        EvolutionResult result = run_evolution(pool, e_cfg, t_cfg, spec, run_seed);

        for (const auto& row : result.trace)
            trace_out << strategy_name(strategy) << ',' << row.generation << ','
                      << fmt(row.best_loss) << ',' << fmt(row.mean_loss) << ','
                      << fmt(row.worst_loss) << '\n';

        EmbeddingTable table = local_ensemble(result.final_generation, pool, graph);
        Rng prop_rng = substream(cfg.seed, kPropagation, static_cast<std::uint64_t>(strategy));
        tables.push_back(propagate_missing(table, graph, prop_rng));
    }

    EmbeddingTable fused = global_ensemble(tables);
    write_embeddings_csv(fused, artifact(cfg, "embeddings.csv"));
    open_artifact(artifact(cfg, "resolved_config.txt")) << cfg.snapshot();
}

void stage_eval(const RunConfig& cfg, const Graph& graph) {
    EmbeddingTable table = read_embeddings_csv(artifact(cfg, "embeddings.csv"));
    if (table.node_count() != graph.node_count())
        throw DataError("embeddings.csv does not match the graph's node count");

    auto out = open_artifact(artifact(cfg, "metrics.csv"));
    out << "task,parameter,metric,value\n";
    for (std::size_t ratio : cfg.np_ratios) {
        Rng rng = substream(cfg.seed, kRecovery, ratio);
        RecoveryReport report =
            network_recovery(table, graph, ratio, cfg.prec_cutoff, rng);
        out << "network_recovery," << ratio << ",auc," << fmt(report.auc) << '\n';
        out << "network_recovery," << ratio << ",prec@" << cfg.prec_cutoff << ','
            << fmt(report.prec_at_k) << '\n';
    }
    for (std::size_t c : cfg.cluster_counts) {
        Rng rng = substream(cfg.seed, kClustering, c);
        ClusterReport report = community_detection(table, graph, c, rng);
        out << "community_detection," << c << ",density," << fmt(report.density) << '\n';
        out << "community_detection," << c << ",silhouette," << fmt(report.silhouette)
            << '\n';
    }
}

}  // namespace

Stage stage_from_name(const std::string& name) {
    if (name == "sample") return Stage::Sample;
    if (name == "train") return Stage::Train;
    if (name == "eval") return Stage::Eval;
    if (name == "run") return Stage::Run;
    throw ConfigError("unknown subcommand: " + name);
}

void run_experiment(const RunConfig& cfg, Stage stage) {
    cfg.validate();
    std::filesystem::create_directories(cfg.output_dir);
    Graph graph = load_graph(cfg);
    switch (stage) {
        case Stage::Sample:
            stage_sample(cfg, graph);
            break;
        case Stage::Train:
            stage_train(cfg, graph);
            break;
        case Stage::Eval:
            stage_eval(cfg, graph);
            break;
        case Stage::Run:
            stage_train(cfg, graph);
            stage_eval(cfg, graph);
            break;
    }
}

}  // namespace segen
