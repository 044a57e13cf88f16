#include "segen/ensemble.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "segen/errors.hpp"

namespace segen {

EmbeddingTable local_ensemble(const Generation& final_gen, const SamplePool& pool,
                              const Graph& graph) {
    if (pool.size() == 0)
        throw std::invalid_argument("local_ensemble: empty pool");
    if (final_gen.models.empty())
        throw std::invalid_argument("local_ensemble: no unit models");

    const std::size_t n = graph.node_count();
    const std::size_t m = final_gen.models.size();
    const std::size_t d = final_gen.models.front().spec.latent_dim();
    const std::size_t input_dim = final_gen.models.front().spec.input_dim();

    EmbeddingTable table;
    table.dim = m * d;
    table.vectors.assign(n, Vec::Zero(static_cast<Eigen::Index>(m * d)));
    table.present.assign(n, 0);
    std::vector<std::size_t> occurrences(n, 0);

    for (const auto& s : pool.subnetworks) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            NodeId q = s.original_ids()[i];
            Vec x = padded_row(s, i, input_dim);
            for (std::size_t j = 0; j < m; ++j)
                table.vectors[q].segment(static_cast<Eigen::Index>(j * d),
                                         static_cast<Eigen::Index>(d)) +=
                    encode(final_gen.models[j], x);
            ++occurrences[q];
        }
    }
    for (NodeId q = 0; q < n; ++q) {
        if (occurrences[q] == 0) {
            table.vectors[q].setZero();
            continue;
        }
        table.vectors[q] /= static_cast<double>(occurrences[q]);
        table.present[q] = 1;
    }
    return table;
}

EmbeddingTable propagate_missing(const EmbeddingTable& table, const Graph& graph,
                                 Rng& rng) {
    if (table.node_count() != graph.node_count())
        throw std::invalid_argument("propagate_missing: table/graph size mismatch");
    EmbeddingTable out = table;
    const std::vector<char> before = table.present;  // pre-pass snapshot
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    for (NodeId p = 0; p < graph.node_count(); ++p) {
        if (before[p]) continue;
        Vec sum = Vec::Zero(static_cast<Eigen::Index>(table.dim));
        std::size_t count = 0;
        for (NodeId o : graph.adjacent(p))
            if (before[o]) {
                sum += table.vectors[o];
                ++count;
            }
        if (count > 0) {
            out.vectors[p] = sum / static_cast<double>(count);
        } else {
            for (Eigen::Index t = 0; t < out.vectors[p].size(); ++t)
                out.vectors[p][t] = unif(rng);
        }
        out.present[p] = 1;
    }
    return out;
}

EmbeddingTable global_ensemble(const std::vector<EmbeddingTable>& tables) {
    if (tables.empty())
        throw std::invalid_argument("global_ensemble: no tables");
    const std::size_t n = tables.front().node_count();
    const std::size_t dim = tables.front().dim;
    for (const auto& t : tables)
        if (t.dim != dim || t.node_count() != n)
            throw std::invalid_argument("global_ensemble: table shape mismatch");

    EmbeddingTable out;
    out.dim = dim;
    out.vectors.assign(n, Vec::Zero(static_cast<Eigen::Index>(dim)));
    out.present.assign(n, 0);
    for (NodeId q = 0; q < n; ++q) {
        std::size_t count = 0;
        for (const auto& t : tables)
            if (t.present[q]) {
                out.vectors[q] += t.vectors[q];
                ++count;
            }
        if (count > 0) {
            out.vectors[q] /= static_cast<double>(count);
            out.present[q] = 1;
        }
        // a node absent in every table stays the zero vector
    }
    return out;
}

void write_embeddings_csv(const EmbeddingTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write embeddings file: " + path);
    out << "node_id";
    for (std::size_t t = 0; t < table.dim; ++t) out << ",dim_" << t;
    out << '\n';
    char buf[32];
    for (NodeId q = 0; q < table.node_count(); ++q) {
        out << q;
        for (Eigen::Index t = 0; t < table.vectors[q].size(); ++t) {
            std::snprintf(buf, sizeof(buf), "%.9g", table.vectors[q][t]);
            out << ',' << buf;
        }
        out << '\n';
    }
}

EmbeddingTable read_embeddings_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open embeddings file: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("node_id", 0) != 0)
        throw DataError(path + ": missing embeddings header");

    EmbeddingTable table;
    std::size_t expected = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<double> values;
        while (std::getline(ls, cell, ',')) values.push_back(std::stod(cell));
        if (values.size() < 2)
            throw DataError(path + ": malformed embeddings row");
        if (expected == 0) expected = values.size();
        if (values.size() != expected)
            throw DataError(path + ": inconsistent embeddings row length");
        Vec v(static_cast<Eigen::Index>(values.size() - 1));
        for (std::size_t t = 1; t < values.size(); ++t)
            v[static_cast<Eigen::Index>(t - 1)] = values[t];
        table.vectors.push_back(std::move(v));
        table.present.push_back(1);
    }
    if (table.vectors.empty()) throw DataError(path + ": empty embeddings file");
    table.dim = static_cast<std::size_t>(table.vectors.front().size());
    return table;
}

}  // namespace segen
