#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "evid/linalg.hpp"
#include "evid/mass.hpp"

namespace evid {

/// Evidential k-nearest-neighbor rule. Each neighbor contributes a simple
/// piece of evidence on its own class whose strength decays with squared
/// distance; the K pieces are pooled by Dempster's rule.
struct EknnConfig {
    int k = 5;
    double alpha = 0.95;  // support ceiling in (0,1)
    Vec gamma;            // per-class scale, all positive
};

/// Shared scale heuristic: reciprocal of the mean squared distance over all
/// training pairs.
double mean_pairwise_squared_distance(const Mat& features);

EknnConfig eknn_default_config(const Mat& features, const Frame& frame, int k);

MassFunction eknn_predict(const Vec& x, const Mat& features, const std::vector<int>& labels,
                          const Frame& frame, const EknnConfig& config);

/// Prototype-based evidential classifier. Each prototype carries a
/// distance-attenuated activation s_i = alpha_i * exp(-gamma_i * d_i^2) and
/// class memberships; its evidence (u_ic * s_i on each singleton, 1 - s_i on
/// the frame) is combined over prototypes by Dempster's rule, so the output
/// focal sets are exactly the singletons plus the frame.
struct EnnModel {
    Frame frame;
    Mat prototypes;  // I x D
    Vec alpha;       // in [0,1]
    Vec gamma;       // positive
    Mat membership;  // I x C, rows sum to one

    MassFunction forward(const Vec& x) const;

    /// Pignistic probabilities of the output: m({w_c}) + m(frame)/C.
    Vec predict_probabilities(const Vec& x) const;
};

/// Binary radial-basis classifier read as evidence combination: w_i = s_i v_i
/// is a signed weight of evidence, positive for the first class. The latent
/// mass function on {w1, w2, frame} follows in closed form and the logistic
/// output equals the normalized plausibility of the first class.
struct RbfModel {
    Frame frame;  // exactly two labels
    Mat prototypes;
    Vec gamma;
    Vec weights;  // v_i

    struct Output {
        MassFunction mass;
        double p;  // normalized plausibility of class index 0
        double kappa;
        double weight_for;      // w+
        double weight_against;  // w-
    };
    Output forward(const Vec& x) const;
};

enum class InitScheme { Random, KMeans };

struct TrainConfig {
    double lambda = 0.0;       // regularization weight
    int epochs = 500;
    double learning_rate = 0.5;
    std::uint64_t seed = 0;
    InitScheme init = InitScheme::KMeans;
};

struct TrainReport {
    double initial_loss = 0.0;
    double final_loss = 0.0;
    int epochs_run = 0;
    std::string warning;
};

/// Gradient training of the prototype classifier on the regularized squared
/// loss over pignistic probabilities: mean squared residual plus
/// lambda * sum of alpha_i. Constraints are kept by smooth
/// reparameterization, so plain descent stays valid.
EnnModel enn_train(const Mat& features, const std::vector<int>& labels, const Frame& frame,
                   int prototype_count, const TrainConfig& config, TrainReport* report = nullptr);

/// Gradient training of the binary RBF classifier on the regularized
/// cross-entropy of the logistic outputs: mean cross-entropy plus
/// lambda * sum of v_i^2. Class index 0 is the positive class.
RbfModel rbf_train(const Mat& features, const std::vector<int>& labels, const Frame& frame,
                   int prototype_count, const TrainConfig& config, TrainReport* report = nullptr);

/// Seeded k-means prototypes (k-means++ start, Lloyd refinement).
Mat kmeans_prototype_init(const Mat& features, int count, std::uint64_t seed);

namespace training {

/// Packed differentiable objectives, exposed so tests can run
/// finite-difference checks against the analytic gradients.
class EnnObjective {
public:
    EnnObjective(const Mat& features, const std::vector<int>& labels, int classes,
                 int prototype_count, double lambda);

    std::size_t dimension() const;
    double loss(const Vec& theta, Vec* grad) const;

    Vec initial_theta(const Frame& frame, InitScheme init, std::uint64_t seed) const;
    EnnModel unpack(const Frame& frame, const Vec& theta) const;

private:
    const Mat& features_;
    const std::vector<int>& labels_;
    int classes_;
    int prototypes_;
    double lambda_;
};

class RbfObjective {
public:
    RbfObjective(const Mat& features, const std::vector<int>& labels, int prototype_count,
                 double lambda);

    std::size_t dimension() const;
    double loss(const Vec& theta, Vec* grad) const;

    Vec initial_theta(InitScheme init, std::uint64_t seed) const;
    RbfModel unpack(const Frame& frame, const Vec& theta) const;

private:
    const Mat& features_;
    const std::vector<int>& labels_;
    int prototypes_;
    double lambda_;
};

}  // namespace training

}  // namespace evid
