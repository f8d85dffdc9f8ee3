#include "evid/fusion.hpp"

#include <algorithm>
#include <cmath>

#include "evid/optim.hpp"

namespace evid {

namespace {

void check_probability(const Vec& p) {
    double total = 0.0;
    for (double v : p) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw InvalidArgumentError("probabilities must be finite and nonnegative");
        }
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-6) {
        throw InvalidArgumentError("probability vector sums to " + std::to_string(total));
    }
}

void check_reliability(const ReliabilityVector& beta, std::size_t classes) {
    if (beta.size() != classes) throw InvalidArgumentError("need one reliability per class");
    for (double b : beta) {
        if (!(b >= 0.0 && b <= 1.0)) throw InvalidArgumentError("reliability outside [0,1]");
    }
}

double logit(double p) { return std::log(p / (1.0 - p)); }

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

}  // namespace

Vec fuse_prob_mass(const Vec& p, const MassFunction& m) {
    const auto classes = static_cast<std::size_t>(m.frame().size());
    if (p.size() != classes) throw BadFrameError("probability length does not match the frame");
    check_probability(p);
    for (const auto& [set, value] : m.focal_sets()) {
        if (set_cardinality(set) != 1 && set != m.frame().full_set()) {
            throw InvalidArgumentError(
                "mass function must have only singleton and full-frame focal sets");
        }
    }
    const double ignorance = m.mass(m.frame().full_set());
    Vec out(classes);
    double total = 0.0;
    for (std::size_t c = 0; c < classes; ++c) {
        const double pl = m.mass(m.frame().singleton(static_cast<int>(c))) + ignorance;
        out[c] = p[c] * pl;
        total += out[c];
    }
    if (total <= 0.0) {
        throw ZeroDenominatorError("probability and plausibility have disjoint support");
    }
    for (double& v : out) v /= total;
    return out;
}

ContourFunction contextual_discount_contour(const ContourFunction& pl,
                                            const ReliabilityVector& beta) {
    check_reliability(beta, pl.values().size());
    Vec out(pl.values().size());
    for (std::size_t c = 0; c < out.size(); ++c) {
        out[c] = 1.0 - beta[c] + beta[c] * pl.values()[c];
    }
    return ContourFunction(pl.frame(), std::move(out));
}

Vec fuse_discounted_sources(const std::vector<ContourFunction>& contours,
                            const std::vector<ReliabilityVector>& betas) {
    if (contours.empty() || contours.size() != betas.size()) {
        throw InvalidArgumentError("need one reliability vector per source");
    }
    const Frame& frame = contours.front().frame();
    const auto classes = static_cast<std::size_t>(frame.size());
    for (const auto& pl : contours) {
        if (!(pl.frame() == frame)) throw BadFrameError("sources live on different frames");
    }
    for (const auto& beta : betas) check_reliability(beta, classes);

    Vec out(classes, 1.0);
    double total = 0.0;
    for (std::size_t c = 0; c < classes; ++c) {
        for (std::size_t t = 0; t < contours.size(); ++t) {
            out[c] *= 1.0 - betas[t][c] + betas[t][c] * contours[t].values()[c];
        }
        total += out[c];
    }
    if (total <= 0.0) throw ZeroDenominatorError("every class has zero discounted plausibility");
    for (double& v : out) v /= total;
    return out;
}

namespace training {

ReliabilityObjective::ReliabilityObjective(const std::vector<Mat>& source_contours,
                                           const std::vector<int>& labels, int classes)
    : sources_(source_contours), labels_(labels), classes_(classes) {
    if (sources_.empty()) throw InvalidArgumentError("need at least one source");
    if (labels_.empty()) throw InvalidArgumentError("need at least one labeled example");
    for (const auto& source : sources_) {
        if (source.size() != labels_.size()) {
            throw InvalidArgumentError("source prediction count does not match the labels");
        }
        for (const auto& row : source) {
            if (row.size() != static_cast<std::size_t>(classes_)) {
                throw InvalidArgumentError("contour width does not match the class count");
            }
            for (double v : row) {
                if (!(v >= 0.0 && v <= 1.0)) {
                    throw InvalidArgumentError("contour entries must lie in [0,1]");
                }
            }
        }
    }
    for (int y : labels_) {
        if (y < 0 || y >= classes_) throw InvalidArgumentError("label outside the class range");
    }
}

std::size_t ReliabilityObjective::dimension() const {
    return sources_.size() * static_cast<std::size_t>(classes_);
}

double ReliabilityObjective::loss(const Vec& theta, Vec* grad) const {
    const std::size_t t_count = sources_.size();
    const auto classes = static_cast<std::size_t>(classes_);
    const std::size_t n_count = labels_.size();
    if (grad) std::fill(grad->begin(), grad->end(), 0.0);

    Mat beta(t_count, Vec(classes));
    for (std::size_t t = 0; t < t_count; ++t) {
        for (std::size_t c = 0; c < classes; ++c) beta[t][c] = sigmoid(theta[t * classes + c]);
    }

    // Fused soft outputs and the Dice loss accumulators.
    Mat fused(n_count, Vec(classes));
    Mat factor(n_count, Vec(t_count * classes));  // per-source discounted plausibilities
    Vec normalizer(n_count, 0.0);
    double intersection = 0.0;
    double mass_total = 0.0;
    for (std::size_t n = 0; n < n_count; ++n) {
        for (std::size_t c = 0; c < classes; ++c) {
            double product = 1.0;
            for (std::size_t t = 0; t < t_count; ++t) {
                const double q = 1.0 - beta[t][c] + beta[t][c] * sources_[t][n][c];
                factor[n][t * classes + c] = q;
                product *= q;
            }
            fused[n][c] = product;
            normalizer[n] += product;
        }
        if (normalizer[n] <= 0.0) {
            throw ZeroDenominatorError("fused plausibility vanished for object " +
                                       std::to_string(n));
        }
        for (std::size_t c = 0; c < classes; ++c) {
            fused[n][c] /= normalizer[n];
            const double g = labels_[static_cast<std::size_t>(n)] == static_cast<int>(c);
            intersection += fused[n][c] * g;
            mass_total += fused[n][c] + g;
        }
    }
    const double loss = 1.0 - 2.0 * intersection / mass_total;
    if (!grad) return loss;

    for (std::size_t n = 0; n < n_count; ++n) {
        // dL/dS_cn, then back through the normalization and the products.
        Vec ds(classes);
        double pulled = 0.0;
        for (std::size_t c = 0; c < classes; ++c) {
            const double g = labels_[n] == static_cast<int>(c);
            ds[c] = -2.0 * (g * mass_total - intersection) / (mass_total * mass_total);
            pulled += ds[c] * fused[n][c];
        }
        for (std::size_t c = 0; c < classes; ++c) {
            const double drho = (ds[c] - pulled) / normalizer[n];
            for (std::size_t t = 0; t < t_count; ++t) {
                double excl = 1.0;  // product of the other sources' factors
                for (std::size_t o = 0; o < t_count; ++o) {
                    if (o != t) excl *= factor[n][o * classes + c];
                }
                const double dq = drho * excl;
                const double db = dq * (sources_[t][n][c] - 1.0);
                (*grad)[t * classes + c] += db * beta[t][c] * (1.0 - beta[t][c]);
            }
        }
    }
    return loss;
}

std::vector<ReliabilityVector> ReliabilityObjective::unpack(const Vec& theta) const {
    std::vector<ReliabilityVector> betas(sources_.size(),
                                         ReliabilityVector(static_cast<std::size_t>(classes_)));
    for (std::size_t t = 0; t < sources_.size(); ++t) {
        for (std::size_t c = 0; c < static_cast<std::size_t>(classes_); ++c) {
            betas[t][c] = sigmoid(theta[t * static_cast<std::size_t>(classes_) + c]);
        }
    }
    return betas;
}

}  // namespace training

std::vector<ReliabilityVector> fit_reliability(const std::vector<Mat>& source_contours,
                                               const std::vector<int>& labels, int classes,
                                               const FitReliabilityConfig& config,
                                               FitReliabilityReport* report) {
    training::ReliabilityObjective objective(source_contours, labels, classes);
    const double start = std::clamp(config.initial_beta, 1e-6, 1.0 - 1e-6);
    Vec theta(objective.dimension(), logit(start));
    GdOptions options;
    options.epochs = config.epochs;
    options.learning_rate = config.learning_rate;
    GdReport gd;
    theta = gradient_descent(
        std::move(theta), [&](const Vec& t, Vec* g) { return objective.loss(t, g); }, options,
        &gd);
    if (report) {
        report->initial_loss = gd.initial_loss;
        report->final_loss = gd.final_loss;
        report->epochs_run = gd.epochs_run;
    }
    return objective.unpack(theta);
}

}  // namespace evid
