#include "segen/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include "segen/errors.hpp"

namespace segen {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::size_t parse_size(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(value, &pos);
        if (pos != value.size() || v < 0) throw std::invalid_argument(value);
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw ConfigError("invalid integer for " + key + ": " + value);
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid number for " + key + ": " + value);
    }
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& key, const std::string& value,
                          Parse parse) {
    std::vector<T> out;
    for (const auto& item : split_commas(value)) out.push_back(parse(key, item));
    if (out.empty()) throw ConfigError("empty list for " + key);
    return out;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "graph") graph_path = value;
    else if (key == "output_dir") output_dir = value;
    else if (key == "strategies") {
        strategies.clear();
        for (const auto& name : split_commas(value))
            strategies.push_back(strategy_from_name(name));
        if (strategies.empty()) throw ConfigError("strategies must be nonempty");
    } else if (key == "k") k = parse_size(key, value);
    else if (key == "pool_size") pool_size = parse_size(key, value);
    else if (key == "hs_bfs_prob") hs_bfs_prob = parse_double(key, value);
    else if (key == "m") m = parse_size(key, value);
    else if (key == "generations") generations = parse_size(key, value);
    else if (key == "b") b = parse_size(key, value);
    else if (key == "v_size") v_size = parse_size(key, value);
    else if (key == "mutation_prob") mutation_prob = parse_double(key, value);
    else if (key == "alpha") alpha = parse_double(key, value);
    else if (key == "beta") beta = parse_double(key, value);
    else if (key == "gamma_recon") gamma_recon = parse_double(key, value);
    else if (key == "learning_rate") learning_rate = parse_double(key, value);
    else if (key == "epochs_per_batch") epochs_per_batch = parse_size(key, value);
    else if (key == "hidden") {
        // an empty list means no hidden layers
        hidden.clear();
        for (const auto& item : split_commas(value))
            hidden.push_back(parse_size(key, item));
    }
    else if (key == "d") d = parse_size(key, value);
    else if (key == "np_ratios") np_ratios = parse_list<std::size_t>(key, value, parse_size);
    else if (key == "cluster_counts")
        cluster_counts = parse_list<std::size_t>(key, value, parse_size);
    else if (key == "prec_cutoff") prec_cutoff = parse_size(key, value);
    else if (key == "seed") seed = parse_size(key, value);
    else if (key == "threads") threads = parse_size(key, value);
    else throw ConfigError("unknown configuration key: " + key);
}

void RunConfig::apply_preset(const std::string& name) {
    auto apply = [&](std::size_t k_, std::size_t pool_, std::size_t b_, std::size_t m_) {
        k = k_;
        pool_size = pool_;
        b = b_;
        m = m_;
        generations = 30;
    };
    if (name == "ps1") apply(10, 200, 10, 10);
    else if (name == "ps2") apply(50, 600, 5, 50);
    else if (name == "ps3") apply(25, 300, 35, 5);
    else if (name == "ps4") apply(50, 700, 10, 5);
    else if (name == "ps5") apply(45, 500, 50, 5);
    else throw ConfigError("unknown preset: " + name);
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected key = value");
        set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void RunConfig::validate() const {
    if (graph_path.empty()) throw ConfigError("graph is required");
    if (k < 1) throw ConfigError("k must be >= 1");
    if (pool_size < 1) throw ConfigError("pool_size must be >= 1");
    if (hs_bfs_prob < 0.0 || hs_bfs_prob > 1.0)
        throw ConfigError("hs_bfs_prob must be in [0, 1]");
    if (m < 2) throw ConfigError("m must be >= 2");
    if (generations < 1) throw ConfigError("generations must be >= 1");
    if (b < 1 || b > pool_size) throw ConfigError("b must be in [1, pool_size]");
    if (v_size < 1 || v_size > pool_size)
        throw ConfigError("v_size must be in [1, pool_size]");
    if (mutation_prob < 0.0 || mutation_prob > 1.0)
        throw ConfigError("mutation_prob must be in [0, 1]");
    if (alpha < 0.0 || beta < 0.0)
        throw ConfigError("alpha and beta must be nonnegative");
    if (gamma_recon <= 1.0) throw ConfigError("gamma_recon must be > 1");
    if (learning_rate < 0.0) throw ConfigError("learning_rate must be nonnegative");
    if (d < 1) throw ConfigError("d must be >= 1");
    for (std::size_t h : hidden)
        if (h < 1) throw ConfigError("hidden layer sizes must be >= 1");
    if (strategies.empty()) throw ConfigError("strategies must be nonempty");
    for (std::size_t r : np_ratios)
        if (r < 1) throw ConfigError("np_ratios entries must be >= 1");
    for (std::size_t c : cluster_counts)
        if (c < 1) throw ConfigError("cluster_counts entries must be >= 1");
}

std::string RunConfig::snapshot() const {
    auto join_sizes = [](const std::vector<std::size_t>& xs) {
        std::ostringstream out;
        for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << xs[i];
        return out.str();
    };
    std::ostringstream strat;
    for (std::size_t i = 0; i < strategies.size(); ++i)
        strat << (i ? "," : "") << strategy_name(strategies[i]);

    std::vector<std::pair<std::string, std::string>> kv = {
        {"alpha", std::to_string(alpha)},
        {"b", std::to_string(b)},
        {"beta", std::to_string(beta)},
        {"cluster_counts", join_sizes(cluster_counts)},
        {"d", std::to_string(d)},
        {"epochs_per_batch", std::to_string(epochs_per_batch)},
        {"gamma_recon", std::to_string(gamma_recon)},
        {"generations", std::to_string(generations)},
        {"graph", graph_path},
        {"hidden", join_sizes(hidden)},
        {"hs_bfs_prob", std::to_string(hs_bfs_prob)},
        {"k", std::to_string(k)},
        {"learning_rate", std::to_string(learning_rate)},
        {"m", std::to_string(m)},
        {"mutation_prob", std::to_string(mutation_prob)},
        {"np_ratios", join_sizes(np_ratios)},
        {"output_dir", output_dir},
        {"pool_size", std::to_string(pool_size)},
        {"prec_cutoff", std::to_string(prec_cutoff)},
        {"seed", std::to_string(seed)},
        {"strategies", strat.str()},
        {"threads", std::to_string(threads)},
        {"v_size", std::to_string(v_size)},
    };
    std::ostringstream out;
    for (const auto& [key, value] : kv) out << key << " = " << value << '\n';
    return out.str();
}

std::size_t RunConfig::effective_threads() const {
    if (threads > 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

}  // namespace segen
