#include "evid/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "evid/cluster.hpp"
#include "evid/optim.hpp"
#include "evid/rng.hpp"

namespace evid {

namespace {

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

void check_labeled(const Mat& features, const std::vector<int>& labels, const Frame& frame) {
    if (features.empty()) throw InvalidArgumentError("empty training set");
    if (features.size() != labels.size()) {
        throw InvalidArgumentError("feature and label counts differ");
    }
    for (const auto& row : features) {
        if (row.size() != features.front().size()) throw InvalidArgumentError("ragged features");
    }
    for (int y : labels) {
        if (y < 0 || y >= frame.size()) {
            throw InvalidArgumentError("label " + std::to_string(y) + " outside the frame");
        }
    }
}

void check_dimension(const Vec& x, std::size_t expected) {
    if (x.size() != expected) {
        throw InvalidArgumentError("input has dimension " + std::to_string(x.size()) +
                                   ", model expects " + std::to_string(expected));
    }
}

/// Exclusive products: out[i] = prod of values[j] for j != i.
Vec products_excluding(const Vec& values) {
    const std::size_t n = values.size();
    Vec out(n, 1.0);
    double prefix = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = prefix;
        prefix *= values[i];
    }
    double suffix = 1.0;
    for (std::size_t i = n; i-- > 0;) {
        out[i] *= suffix;
        suffix *= values[i];
    }
    return out;
}

Mat init_prototypes(const Mat& features, int count, InitScheme init, std::uint64_t seed) {
    if (count < 1) throw InvalidArgumentError("prototype count must be positive");
    if (static_cast<std::size_t>(count) > features.size()) {
        throw InvalidArgumentError("more prototypes than training points");
    }
    if (init == InitScheme::KMeans) return kmeans_fit(features, count, seed).centers;
    Rng rng(seed ^ 0x70726f746fULL);
    Mat prototypes;
    prototypes.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) prototypes.push_back(features[rng.index(features.size())]);
    return prototypes;
}

/// Data-driven scale: gamma_i = 1 / mean squared distance to prototype i.
Vec init_gammas(const Mat& features, const Mat& prototypes) {
    Vec gammas(prototypes.size(), 1.0);
    for (std::size_t i = 0; i < prototypes.size(); ++i) {
        double mean = 0.0;
        for (const auto& x : features) mean += squared_distance(x, prototypes[i]);
        mean /= static_cast<double>(features.size());
        gammas[i] = mean > 1e-12 ? 1.0 / mean : 1.0;
    }
    return gammas;
}

}  // namespace

double mean_pairwise_squared_distance(const Mat& features) {
    const std::size_t n = features.size();
    if (n < 2) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) total += squared_distance(features[i], features[j]);
    }
    return total / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

EknnConfig eknn_default_config(const Mat& features, const Frame& frame, int k) {
    EknnConfig config;
    config.k = k;
    const double mean_d2 = mean_pairwise_squared_distance(features);
    const double gamma = mean_d2 > 1e-12 ? 1.0 / mean_d2 : 1.0;
    config.gamma.assign(static_cast<std::size_t>(frame.size()), gamma);
    return config;
}

MassFunction eknn_predict(const Vec& x, const Mat& features, const std::vector<int>& labels,
                          const Frame& frame, const EknnConfig& config) {
    check_labeled(features, labels, frame);
    check_dimension(x, features.front().size());
    if (config.k < 1 || static_cast<std::size_t>(config.k) > features.size()) {
        throw InvalidArgumentError("neighbor count must lie in [1, training size]");
    }
    if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
        throw InvalidArgumentError("support ceiling alpha must lie in (0,1)");
    }
    if (config.gamma.size() != static_cast<std::size_t>(frame.size())) {
        throw InvalidArgumentError("need one gamma per class");
    }
    for (double g : config.gamma) {
        if (!(g > 0.0)) throw InvalidArgumentError("gamma must be positive");
    }

    std::vector<std::size_t> order(features.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> d2(features.size());
    for (std::size_t i = 0; i < features.size(); ++i) d2[i] = squared_distance(x, features[i]);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return d2[a] != d2[b] ? d2[a] < d2[b] : a < b;
    });

    MassFunction combined = MassFunction::vacuous(frame);
    for (int rank = 0; rank < config.k; ++rank) {
        const std::size_t i = order[static_cast<std::size_t>(rank)];
        const int y = labels[i];
        const double phi =
            config.alpha * std::exp(-config.gamma[static_cast<std::size_t>(y)] * d2[i]);
        if (phi <= 0.0) continue;  // infinitely far neighbor: vacuous evidence
        const MassFunction piece = MassFunction::from_assignments(
            frame, {{frame.singleton(y), phi}, {frame.full_set(), 1.0 - phi}});
        combined = combine_dempster(combined, piece).first;
    }
    return combined;
}

MassFunction EnnModel::forward(const Vec& x) const {
    check_dimension(x, prototypes.empty() ? x.size() : prototypes.front().size());
    const std::size_t count = prototypes.size();
    const auto classes = static_cast<std::size_t>(frame.size());
    Vec omega_terms(count);
    Mat class_terms(classes, Vec(count));
    for (std::size_t i = 0; i < count; ++i) {
        const double s = alpha[i] * std::exp(-gamma[i] * squared_distance(x, prototypes[i]));
        omega_terms[i] = 1.0 - s;
        for (std::size_t c = 0; c < classes; ++c) {
            class_terms[c][i] = membership[i][c] * s + 1.0 - s;
        }
    }
    const double q = std::accumulate(omega_terms.begin(), omega_terms.end(), 1.0,
                                     std::multiplies<>());
    std::vector<MassFunction::Assignment> entries;
    double normalization = q;
    for (std::size_t c = 0; c < classes; ++c) {
        const double p = std::accumulate(class_terms[c].begin(), class_terms[c].end(), 1.0,
                                         std::multiplies<>());
        entries.emplace_back(frame.singleton(static_cast<int>(c)), p - q);
        normalization += p - q;
    }
    entries.emplace_back(frame.full_set(), q);
    if (normalization <= 1e-300) {
        throw TotalConflictError("prototype evidences are fully contradictory");
    }
    return MassFunction::normalized_from(frame, entries);
}

Vec EnnModel::predict_probabilities(const Vec& x) const { return forward(x).pignistic(); }

RbfModel::Output RbfModel::forward(const Vec& x) const {
    check_dimension(x, prototypes.empty() ? x.size() : prototypes.front().size());
    double w_pos = 0.0;
    double w_neg = 0.0;
    double score = 0.0;
    for (std::size_t i = 0; i < prototypes.size(); ++i) {
        const double s = std::exp(-gamma[i] * squared_distance(x, prototypes[i]));
        const double w = weights[i] * s;
        score += w;
        if (w >= 0.0) {
            w_pos += w;
        } else {
            w_neg -= w;
        }
    }
    const double decay_pos = std::exp(-w_pos);
    const double decay_neg = std::exp(-w_neg);
    const double kappa = (1.0 - decay_pos) * (1.0 - decay_neg);
    std::vector<MassFunction::Assignment> entries{
        {frame.singleton(0), (1.0 - decay_pos) * decay_neg},
        {frame.singleton(1), (1.0 - decay_neg) * decay_pos},
        {frame.full_set(), decay_pos * decay_neg}};
    MassFunction mass = MassFunction::normalized_from(frame, entries);
    return Output{std::move(mass), sigmoid(score), kappa, w_pos, w_neg};
}

namespace training {

// Theta layout, ENN: [prototypes I*D | xi I (alpha = sigmoid) | eta I
// (gamma = exp) | scores I*C (u = squared-normalized rows)].
EnnObjective::EnnObjective(const Mat& features, const std::vector<int>& labels, int classes,
                           int prototype_count, double lambda)
    : features_(features),
      labels_(labels),
      classes_(classes),
      prototypes_(prototype_count),
      lambda_(lambda) {}

std::size_t EnnObjective::dimension() const {
    const auto i = static_cast<std::size_t>(prototypes_);
    const auto c = static_cast<std::size_t>(classes_);
    return i * features_.front().size() + 2 * i + i * c;
}

double EnnObjective::loss(const Vec& theta, Vec* grad) const {
    const auto count = static_cast<std::size_t>(prototypes_);
    const auto classes = static_cast<std::size_t>(classes_);
    const std::size_t dim = features_.front().size();
    const std::size_t proto_base = 0;
    const std::size_t xi_base = count * dim;
    const std::size_t eta_base = xi_base + count;
    const std::size_t score_base = eta_base + count;

    if (grad) std::fill(grad->begin(), grad->end(), 0.0);

    Vec alpha(count), gamma(count);
    for (std::size_t i = 0; i < count; ++i) {
        alpha[i] = sigmoid(theta[xi_base + i]);
        gamma[i] = std::exp(theta[eta_base + i]);
    }
    Mat u(count, Vec(classes));
    Vec score_norm(count);
    for (std::size_t i = 0; i < count; ++i) {
        double total = 0.0;
        for (std::size_t c = 0; c < classes; ++c) {
            const double b = theta[score_base + i * classes + c];
            total += b * b;
        }
        score_norm[i] = std::max(total, 1e-300);
        for (std::size_t c = 0; c < classes; ++c) {
            const double b = theta[score_base + i * classes + c];
            u[i][c] = b * b / score_norm[i];
        }
    }

    const double inv_n = 1.0 / static_cast<double>(features_.size());
    double loss = 0.0;
    Vec s(count), d2(count), omega_terms(count);
    Mat class_terms(classes, Vec(count));
    Mat class_excl(classes, Vec(count));
    Vec class_prod(classes);
    Vec residual(classes);
    Vec d_product(classes);

    for (std::size_t n = 0; n < features_.size(); ++n) {
        const Vec& x = features_[n];
        for (std::size_t i = 0; i < count; ++i) {
            double dist = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                const double diff = x[d] - theta[proto_base + i * dim + d];
                dist += diff * diff;
            }
            d2[i] = dist;
            s[i] = alpha[i] * std::exp(-gamma[i] * dist);
            omega_terms[i] = 1.0 - s[i];
            for (std::size_t c = 0; c < classes; ++c) {
                class_terms[c][i] = u[i][c] * s[i] + 1.0 - s[i];
            }
        }
        const Vec omega_excl = products_excluding(omega_terms);
        double q = 1.0;
        for (double v : omega_terms) q *= v;
        double z = -(static_cast<double>(classes) - 1.0) * q;
        for (std::size_t c = 0; c < classes; ++c) {
            class_excl[c] = products_excluding(class_terms[c]);
            double p = 1.0;
            for (double v : class_terms[c]) p *= v;
            class_prod[c] = p;
            z += p;
        }
        const double m_omega = q / z;
        double residual_sum = 0.0;
        for (std::size_t c = 0; c < classes; ++c) {
            const double m_c = (class_prod[c] - q) / z;
            const double pignistic = m_c + m_omega / static_cast<double>(classes);
            const double y = labels_[n] == static_cast<int>(c) ? 1.0 : 0.0;
            residual[c] = pignistic - y;
            loss += inv_n * residual[c] * residual[c];
            residual_sum += residual[c];
        }
        if (!grad) continue;

        // Backprop through pignistic, normalization, products, activations.
        const double gm_omega = 2.0 * inv_n * residual_sum / static_cast<double>(classes);
        double mean_term = gm_omega * m_omega;
        for (std::size_t c = 0; c < classes; ++c) {
            mean_term += 2.0 * inv_n * residual[c] * (class_prod[c] - q) / z;
        }
        double dq = (gm_omega - mean_term) / z;
        for (std::size_t c = 0; c < classes; ++c) {
            d_product[c] = (2.0 * inv_n * residual[c] - mean_term) / z;
            dq -= d_product[c];
        }
        for (std::size_t i = 0; i < count; ++i) {
            double ds = -dq * omega_excl[i];
            double weighted_class_pull = 0.0;  // sum_c A_c * u_ic with A_c below
            for (std::size_t c = 0; c < classes; ++c) {
                const double a_c = d_product[c] * class_excl[c][i];
                ds += a_c * (u[i][c] - 1.0);
                weighted_class_pull += a_c * u[i][c];
            }
            (*grad)[xi_base + i] += ds * s[i] * (1.0 - alpha[i]);
            (*grad)[eta_base + i] += ds * (-gamma[i] * d2[i] * s[i]);
            const double dd2 = ds * (-gamma[i] * s[i]);
            for (std::size_t d = 0; d < dim; ++d) {
                const double proto = theta[proto_base + i * dim + d];
                (*grad)[proto_base + i * dim + d] += dd2 * 2.0 * (proto - x[d]);
            }
            for (std::size_t l = 0; l < classes; ++l) {
                const double b = theta[score_base + i * classes + l];
                const double a_l = d_product[l] * class_excl[l][i];
                (*grad)[score_base + i * classes + l] +=
                    s[i] * (2.0 * b / score_norm[i]) * (a_l - weighted_class_pull);
            }
        }
    }

    for (std::size_t i = 0; i < count; ++i) {
        loss += lambda_ * alpha[i];
        if (grad) (*grad)[xi_base + i] += lambda_ * alpha[i] * (1.0 - alpha[i]);
    }
    return loss;
}

Vec EnnObjective::initial_theta(const Frame& frame, InitScheme init, std::uint64_t seed) const {
    const auto count = static_cast<std::size_t>(prototypes_);
    const auto classes = static_cast<std::size_t>(frame.size());
    const std::size_t dim = features_.front().size();

    Mat prototypes;
    Mat memberships(count, Vec(classes, 0.0));
    Rng rng(Rng(seed).fork(0xE44).next_u64());
    if (init == InitScheme::KMeans) {
        const KMeansResult km = kmeans_fit(features_, prototypes_, seed);
        prototypes = km.centers;
        // Seed each prototype's memberships with the class composition of
        // its cluster (lightly smoothed).
        for (std::size_t n = 0; n < features_.size(); ++n) {
            memberships[static_cast<std::size_t>(km.assignment[n])]
                       [static_cast<std::size_t>(labels_[n])] += 1.0;
        }
        for (auto& row : memberships) {
            double total = 0.0;
            for (double& v : row) {
                v += 0.05;
                total += v;
            }
            for (double& v : row) v /= total;
        }
    } else {
        prototypes = init_prototypes(features_, prototypes_, init, seed);
        for (auto& row : memberships) {
            double total = 0.0;
            for (double& v : row) {
                v = 0.05 + rng.uniform();
                total += v;
            }
            for (double& v : row) v /= total;
        }
    }
    const Vec gammas = init_gammas(features_, prototypes);

    Vec theta(dimension(), 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t d = 0; d < dim; ++d) theta[i * dim + d] = prototypes[i][d];
    }
    const std::size_t xi_base = count * dim;
    const std::size_t eta_base = xi_base + count;
    const std::size_t score_base = eta_base + count;
    for (std::size_t i = 0; i < count; ++i) {
        theta[xi_base + i] = 0.0;  // alpha = 0.5
        theta[eta_base + i] = std::log(gammas[i]);
        for (std::size_t c = 0; c < classes; ++c) {
            theta[score_base + i * classes + c] = std::sqrt(memberships[i][c]);
        }
    }
    return theta;
}

EnnModel EnnObjective::unpack(const Frame& frame, const Vec& theta) const {
    const auto count = static_cast<std::size_t>(prototypes_);
    const auto classes = static_cast<std::size_t>(frame.size());
    const std::size_t dim = features_.front().size();
    EnnModel model{frame, Mat(count, Vec(dim)), Vec(count), Vec(count),
                   Mat(count, Vec(classes))};
    const std::size_t xi_base = count * dim;
    const std::size_t eta_base = xi_base + count;
    const std::size_t score_base = eta_base + count;
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t d = 0; d < dim; ++d) model.prototypes[i][d] = theta[i * dim + d];
        model.alpha[i] = sigmoid(theta[xi_base + i]);
        model.gamma[i] = std::exp(theta[eta_base + i]);
        double total = 0.0;
        for (std::size_t c = 0; c < classes; ++c) {
            const double b = theta[score_base + i * classes + c];
            total += b * b;
        }
        total = std::max(total, 1e-300);
        for (std::size_t c = 0; c < classes; ++c) {
            const double b = theta[score_base + i * classes + c];
            model.membership[i][c] = b * b / total;
        }
    }
    return model;
}

// Theta layout, RBF: [prototypes I*D | eta I (gamma = exp) | v I].
RbfObjective::RbfObjective(const Mat& features, const std::vector<int>& labels,
                           int prototype_count, double lambda)
    : features_(features), labels_(labels), prototypes_(prototype_count), lambda_(lambda) {}

std::size_t RbfObjective::dimension() const {
    const auto i = static_cast<std::size_t>(prototypes_);
    return i * features_.front().size() + 2 * i;
}

double RbfObjective::loss(const Vec& theta, Vec* grad) const {
    const auto count = static_cast<std::size_t>(prototypes_);
    const std::size_t dim = features_.front().size();
    const std::size_t eta_base = count * dim;
    const std::size_t v_base = eta_base + count;

    if (grad) std::fill(grad->begin(), grad->end(), 0.0);

    Vec gamma(count);
    for (std::size_t i = 0; i < count; ++i) gamma[i] = std::exp(theta[eta_base + i]);

    const double inv_n = 1.0 / static_cast<double>(features_.size());
    double loss = 0.0;
    Vec s(count), d2(count);
    for (std::size_t n = 0; n < features_.size(); ++n) {
        const Vec& x = features_[n];
        double score = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            double dist = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                const double diff = x[d] - theta[i * dim + d];
                dist += diff * diff;
            }
            d2[i] = dist;
            s[i] = std::exp(-gamma[i] * dist);
            score += theta[v_base + i] * s[i];
        }
        const double y = labels_[n] == 0 ? 1.0 : 0.0;
        loss += inv_n * (softplus(-score) + (1.0 - y) * score);
        if (!grad) continue;
        const double dscore = inv_n * (sigmoid(score) - y);
        for (std::size_t i = 0; i < count; ++i) {
            const double v = theta[v_base + i];
            (*grad)[v_base + i] += dscore * s[i];
            const double ds = dscore * v;
            (*grad)[eta_base + i] += ds * (-gamma[i] * d2[i] * s[i]);
            const double dd2 = ds * (-gamma[i] * s[i]);
            for (std::size_t d = 0; d < dim; ++d) {
                const double proto = theta[i * dim + d];
                (*grad)[i * dim + d] += dd2 * 2.0 * (proto - x[d]);
            }
        }
    }
    for (std::size_t i = 0; i < count; ++i) {
        const double v = theta[v_base + i];
        loss += lambda_ * v * v;
        if (grad) (*grad)[v_base + i] += 2.0 * lambda_ * v;
    }
    return loss;
}

Vec RbfObjective::initial_theta(InitScheme init, std::uint64_t seed) const {
    const auto count = static_cast<std::size_t>(prototypes_);
    const std::size_t dim = features_.front().size();
    const Mat prototypes = init_prototypes(features_, prototypes_, init, seed);
    const Vec gammas = init_gammas(features_, prototypes);
    Rng rng(Rng(seed).fork(0x2BF).next_u64());
    Vec theta(dimension(), 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t d = 0; d < dim; ++d) theta[i * dim + d] = prototypes[i][d];
        theta[count * dim + i] = std::log(gammas[i]);
        theta[count * dim + count + i] = rng.normal();
    }
    return theta;
}

RbfModel RbfObjective::unpack(const Frame& frame, const Vec& theta) const {
    const auto count = static_cast<std::size_t>(prototypes_);
    const std::size_t dim = features_.front().size();
    RbfModel model{frame, Mat(count, Vec(dim)), Vec(count), Vec(count)};
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t d = 0; d < dim; ++d) model.prototypes[i][d] = theta[i * dim + d];
        model.gamma[i] = std::exp(theta[count * dim + i]);
        model.weights[i] = theta[count * dim + count + i];
    }
    return model;
}

}  // namespace training

EnnModel enn_train(const Mat& features, const std::vector<int>& labels, const Frame& frame,
                   int prototype_count, const TrainConfig& config, TrainReport* report) {
    check_labeled(features, labels, frame);
    if (config.lambda < 0.0) throw InvalidArgumentError("lambda must be nonnegative");
    TrainReport local;
    if (prototype_count < frame.size()) {
        local.warning = "fewer prototypes than classes; the model may underfit";
    }
    training::EnnObjective objective(features, labels, frame.size(), prototype_count,
                                     config.lambda);
    GdOptions options;
    options.epochs = config.epochs;
    options.learning_rate = config.learning_rate;
    GdReport gd;
    const Vec theta = gradient_descent(
        objective.initial_theta(frame, config.init, config.seed),
        [&](const Vec& t, Vec* g) { return objective.loss(t, g); }, options, &gd);
    local.initial_loss = gd.initial_loss;
    local.final_loss = gd.final_loss;
    local.epochs_run = gd.epochs_run;
    if (report) *report = local;
    return objective.unpack(frame, theta);
}

RbfModel rbf_train(const Mat& features, const std::vector<int>& labels, const Frame& frame,
                   int prototype_count, const TrainConfig& config, TrainReport* report) {
    check_labeled(features, labels, frame);
    if (frame.size() != 2) throw BadFrameError("the RBF evidential model is binary");
    if (config.lambda < 0.0) throw InvalidArgumentError("lambda must be nonnegative");
    training::RbfObjective objective(features, labels, prototype_count, config.lambda);
    GdOptions options;
    options.epochs = config.epochs;
    options.learning_rate = config.learning_rate;
    GdReport gd;
    const Vec theta = gradient_descent(
        objective.initial_theta(config.init, config.seed),
        [&](const Vec& t, Vec* g) { return objective.loss(t, g); }, options, &gd);
    if (report) {
        report->initial_loss = gd.initial_loss;
        report->final_loss = gd.final_loss;
        report->epochs_run = gd.epochs_run;
        report->warning.clear();
    }
    return objective.unpack(frame, theta);
}

Mat kmeans_prototype_init(const Mat& features, int count, std::uint64_t seed) {
    return kmeans_fit(features, count, seed).centers;
}

}  // namespace evid
