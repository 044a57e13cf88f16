#include "segen/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "segen/errors.hpp"

namespace segen {

LayerSpec::LayerSpec(std::size_t input, std::vector<std::size_t> hidden,
                     std::size_t latent) {
    dims.push_back(input);
    dims.insert(dims.end(), hidden.begin(), hidden.end());
    dims.push_back(latent);
    for (std::size_t d : dims)
        if (d < 1) throw std::invalid_argument("layer dimensions must be >= 1");
}

std::size_t LayerSpec::parameter_count() const {
    std::size_t count = 0;
    for (std::size_t l = 1; l < dims.size(); ++l)
        count += 2 * dims[l] * dims[l - 1] + dims[l] + dims[l - 1];  // encoder + mirrored decoder
    return count;
}

void TrainConfig::validate() const {
    if (alpha < 0.0 || beta < 0.0)
        throw std::invalid_argument("alpha and beta must be nonnegative");
    if (gamma_recon <= 1.0)
        throw std::invalid_argument("gamma_recon must be > 1");
    if (learning_rate < 0.0)
        throw std::invalid_argument("learning_rate must be nonnegative");
}

namespace {

inline Vec sigmoid(const Vec& t) {
    return 1.0 / (1.0 + (-t.array()).exp());
}

struct Activations {
    std::vector<Vec> enc;  // enc.back() is z
    std::vector<Vec> dec;  // dec.back() is x_hat
};

Activations forward(const AutoencoderParams& p, const Vec& x) {
    Activations act;
    Vec a = x;
    for (std::size_t l = 0; l < p.enc_w.size(); ++l) {
        a = sigmoid(p.enc_w[l] * a + p.enc_b[l]);
        act.enc.push_back(a);
    }
    for (std::size_t l = 0; l < p.dec_w.size(); ++l) {
        a = sigmoid(p.dec_w[l] * a + p.dec_b[l]);
        act.dec.push_back(a);
    }
    return act;
}

// s_{i,j}: +1 for local edges, -1 for unconnected ordered pairs.
inline double pair_sign(const SubNetwork& s, std::size_t i, std::size_t j) {
    return s.has_local_edge(i, j) ? 1.0 : -1.0;
}

Vec recon_weights(const Vec& x, double gamma_recon) {
    Vec w = Vec::Ones(x.size());
    for (Eigen::Index t = 0; t < x.size(); ++t)
        if (x[t] != 0.0) w[t] = gamma_recon;
    return w;
}

}  // namespace

AutoencoderParams init_params(const LayerSpec& spec, Rng& rng) {
    if (spec.dims.size() < 2)
        throw std::invalid_argument("layer spec needs at least input and latent dims");
    std::normal_distribution<double> normal(0.0, 1.0);
    auto draw = [&](std::size_t rows, std::size_t cols) {
        Mat m(rows, cols);
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = normal(rng);
        return m;
    };
    AutoencoderParams p;
    p.spec = spec;
    const auto& dims = spec.dims;
    for (std::size_t l = 1; l < dims.size(); ++l) {
        p.enc_w.push_back(draw(dims[l], dims[l - 1]));
        p.enc_b.push_back(draw(dims[l], 1));
    }
    for (std::size_t l = dims.size() - 1; l >= 1; --l) {
        p.dec_w.push_back(draw(dims[l - 1], dims[l]));
        p.dec_b.push_back(draw(dims[l - 1], 1));
    }
    return p;
}

Vec encode(const AutoencoderParams& p, const Vec& x) {
    if (x.size() != static_cast<Eigen::Index>(p.spec.input_dim()))
        throw std::invalid_argument("encode: input length mismatch");
    Vec a = x;
    for (std::size_t l = 0; l < p.enc_w.size(); ++l)
        a = sigmoid(p.enc_w[l] * a + p.enc_b[l]);
    return a;
}

Vec decode(const AutoencoderParams& p, const Vec& z) {
    if (z.size() != static_cast<Eigen::Index>(p.spec.latent_dim()))
        throw std::invalid_argument("decode: latent length mismatch");
    Vec a = z;
    for (std::size_t l = 0; l < p.dec_w.size(); ++l)
        a = sigmoid(p.dec_w[l] * a + p.dec_b[l]);
    return a;
}

Vec padded_row(const SubNetwork& s, std::size_t i, std::size_t input_dim) {
    if (s.size() > input_dim)
        throw std::invalid_argument("sub-network larger than model input dimension");
    Vec x = Vec::Zero(static_cast<Eigen::Index>(input_dim));
    auto row = s.adjacency_row(i);
    for (std::size_t t = 0; t < row.size(); ++t) x[static_cast<Eigen::Index>(t)] = row[t];
    return x;
}

double loss_le(const AutoencoderParams& p, const SubNetwork& s,
               const TrainConfig& cfg) {
    cfg.validate();
    if (s.size() == 0)
        throw std::invalid_argument("loss_le: empty sub-network");
    const std::size_t n = s.size();
    const std::size_t input_dim = p.spec.input_dim();

    std::vector<Vec> zs(n), xs(n), xhats(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = padded_row(s, i, input_dim);
        Activations act = forward(p, xs[i]);
        zs[i] = act.enc.back();
        xhats[i] = act.dec.back();
    }

    double recon = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Vec w = recon_weights(xs[i], cfg.gamma_recon);
        recon += ((xs[i] - xhats[i]).array() * w.array()).square().sum();
    }

    double corr = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) corr += pair_sign(s, i, j) * (zs[i] - zs[j]).squaredNorm();

    double reg = 0.0;
    for (const auto& w : p.enc_w) reg += w.squaredNorm();
    for (const auto& w : p.dec_w) reg += w.squaredNorm();

    return recon + cfg.alpha * corr + cfg.beta * reg;
}

Vec to_chromosome(const AutoencoderParams& p) {
    Vec out(static_cast<Eigen::Index>(p.spec.parameter_count()));
    Eigen::Index at = 0;
    auto push_mat = [&](const Mat& m) {
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c) out[at++] = m(r, c);
    };
    auto push_vec = [&](const Vec& v) {
        for (Eigen::Index r = 0; r < v.size(); ++r) out[at++] = v[r];
    };
    for (std::size_t l = 0; l < p.enc_w.size(); ++l) {
        push_mat(p.enc_w[l]);
        push_vec(p.enc_b[l]);
    }
    for (std::size_t l = 0; l < p.dec_w.size(); ++l) {
        push_mat(p.dec_w[l]);
        push_vec(p.dec_b[l]);
    }
    return out;
}

AutoencoderParams from_chromosome(const LayerSpec& spec, const Vec& chromosome) {
    if (chromosome.size() != static_cast<Eigen::Index>(spec.parameter_count()))
        throw std::invalid_argument("chromosome length does not match layer spec");
    AutoencoderParams p;
    p.spec = spec;
    Eigen::Index at = 0;
    auto pull_mat = [&](std::size_t rows, std::size_t cols) {
        Mat m(rows, cols);
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = chromosome[at++];
        return m;
    };
    auto pull_vec = [&](std::size_t rows) {
        Vec v(rows);
        for (Eigen::Index r = 0; r < v.size(); ++r) v[r] = chromosome[at++];
        return v;
    };
    const auto& dims = spec.dims;
    for (std::size_t l = 1; l < dims.size(); ++l) {
        p.enc_w.push_back(pull_mat(dims[l], dims[l - 1]));
        p.enc_b.push_back(pull_vec(dims[l]));
    }
    for (std::size_t l = dims.size() - 1; l >= 1; --l) {
        p.dec_w.push_back(pull_mat(dims[l - 1], dims[l]));
        p.dec_b.push_back(pull_vec(dims[l - 1]));
    }
    return p;
}

Vec gradient(const AutoencoderParams& p, const SubNetwork& s,
             const TrainConfig& cfg) {
    cfg.validate();
    if (s.size() == 0)
        throw std::invalid_argument("gradient: empty sub-network");
    const std::size_t n = s.size();
    const std::size_t input_dim = p.spec.input_dim();

    AutoencoderParams g;
    g.spec = p.spec;
    for (const auto& w : p.enc_w) g.enc_w.push_back(Mat::Zero(w.rows(), w.cols()));
    for (const auto& b : p.enc_b) g.enc_b.push_back(Vec::Zero(b.size()));
    for (const auto& w : p.dec_w) g.dec_w.push_back(Mat::Zero(w.rows(), w.cols()));
    for (const auto& b : p.dec_b) g.dec_b.push_back(Vec::Zero(b.size()));

    std::vector<Vec> xs(n), zs(n);
    std::vector<Activations> acts(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = padded_row(s, i, input_dim);
        acts[i] = forward(p, xs[i]);
        zs[i] = acts[i].enc.back();
    }

    for (std::size_t i = 0; i < n; ++i) {
        const Activations& act = acts[i];
        Vec w = recon_weights(xs[i], cfg.gamma_recon);
        // d/dx_hat of || (x - x_hat) .* w ||^2
        Vec d = 2.0 * (act.dec.back() - xs[i]).cwiseProduct(w.cwiseProduct(w));

        for (std::size_t l = p.dec_w.size(); l-- > 0;) {
            const Vec& a = act.dec[l];
            Vec delta = d.cwiseProduct(a.cwiseProduct(Vec::Ones(a.size()) - a));
            const Vec& prev = (l == 0) ? act.enc.back() : act.dec[l - 1];
            g.dec_w[l] += delta * prev.transpose();
            g.dec_b[l] += delta;
            d = p.dec_w[l].transpose() * delta;
        }

        // correlation term: both ordered orientations contribute, so the
        // factor on each unordered pair is 4*alpha
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) d += 4.0 * cfg.alpha * pair_sign(s, i, j) * (zs[i] - zs[j]);

        for (std::size_t l = p.enc_w.size(); l-- > 0;) {
            const Vec& a = act.enc[l];
            Vec delta = d.cwiseProduct(a.cwiseProduct(Vec::Ones(a.size()) - a));
            const Vec& prev = (l == 0) ? xs[i] : act.enc[l - 1];
            g.enc_w[l] += delta * prev.transpose();
            g.enc_b[l] += delta;
            d = p.enc_w[l].transpose() * delta;
        }
    }

    for (std::size_t l = 0; l < p.enc_w.size(); ++l) g.enc_w[l] += 2.0 * cfg.beta * p.enc_w[l];
    for (std::size_t l = 0; l < p.dec_w.size(); ++l) g.dec_w[l] += 2.0 * cfg.beta * p.dec_w[l];

    return to_chromosome(g);
}

AutoencoderParams train_on_batch(const AutoencoderParams& params,
                                 const std::vector<const SubNetwork*>& batch,
                                 const TrainConfig& cfg, Rng& rng) {
    cfg.validate();
    if (batch.empty())
        throw std::invalid_argument("train_on_batch: empty batch");

    Vec theta = to_chromosome(params);
    Vec m1 = Vec::Zero(theta.size());
    Vec m2 = Vec::Zero(theta.size());
    const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
    std::size_t step = 0;

    std::vector<std::size_t> order(batch.size());
    std::iota(order.begin(), order.end(), 0);

    for (std::size_t epoch = 0; epoch < cfg.epochs_per_batch; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t idx : order) {
            AutoencoderParams cur = from_chromosome(params.spec, theta);
            Vec grad = gradient(cur, *batch[idx], cfg);
            ++step;
            m1 = b1 * m1 + (1.0 - b1) * grad;
            m2 = b2 * m2 + (1.0 - b2) * grad.cwiseProduct(grad);
            double c1 = 1.0 - std::pow(b1, static_cast<double>(step));
            double c2 = 1.0 - std::pow(b2, static_cast<double>(step));
            theta -= (cfg.learning_rate * (m1 / c1).array() /
                      ((m2 / c2).array().sqrt() + eps))
                         .matrix();
        }
        if (!theta.allFinite())
            throw NumericError("training diverged to non-finite parameters");
    }
    return from_chromosome(params.spec, theta);
}

double batch_loss(const AutoencoderParams& params,
                  const std::vector<const SubNetwork*>& batch,
                  const TrainConfig& cfg) {
    double total = 0.0;
    for (const SubNetwork* s : batch) total += loss_le(params, *s, cfg);
    return total / static_cast<double>(batch.size());
}

}  // namespace segen
