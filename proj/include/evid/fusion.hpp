#pragma once

#include <cstdint>
#include <vector>

#include "evid/linalg.hpp"
#include "evid/mass.hpp"

namespace evid {

/// Bayesian fusion of a probability vector with a singletons-plus-frame mass
/// function: out(w_c) proportional to p(w_c) * pl(w_c). Throws
/// ZeroDenominatorError when the supports are disjoint.
Vec fuse_prob_mass(const Vec& p, const MassFunction& m);

/// Per-class reliability vector, entries in [0,1].
using ReliabilityVector = Vec;

/// Contextual discounting on the contour: pl'(w_c) = 1 - beta_c + beta_c*pl(w_c).
ContourFunction contextual_discount_contour(const ContourFunction& pl,
                                            const ReliabilityVector& beta);

/// Product fusion of contextually discounted contours, normalized over the
/// classes. A source with all-zero reliability contributes a factor of one
/// everywhere and so never changes the output.
Vec fuse_discounted_sources(const std::vector<ContourFunction>& contours,
                            const std::vector<ReliabilityVector>& betas);

struct FitReliabilityConfig {
    double initial_beta = 0.5;
    int epochs = 400;
    double learning_rate = 1.0;
};

struct FitReliabilityReport {
    double initial_loss = 0.0;
    double final_loss = 0.0;
    int epochs_run = 0;
};

/// Learns one reliability vector per source by gradient descent on the
/// overlap (Dice) loss of the fused soft outputs against the labels. Betas
/// are kept inside [0,1] by a logistic reparameterization.
std::vector<ReliabilityVector> fit_reliability(const std::vector<Mat>& source_contours,
                                               const std::vector<int>& labels, int classes,
                                               const FitReliabilityConfig& config = {},
                                               FitReliabilityReport* report = nullptr);

namespace training {

/// Differentiable objective behind fit_reliability, exposed for
/// finite-difference checks. Theta holds logit(beta) per (source, class).
class ReliabilityObjective {
public:
    ReliabilityObjective(const std::vector<Mat>& source_contours, const std::vector<int>& labels,
                         int classes);

    std::size_t dimension() const;
    double loss(const Vec& theta, Vec* grad) const;
    std::vector<ReliabilityVector> unpack(const Vec& theta) const;

private:
    const std::vector<Mat>& sources_;
    const std::vector<int>& labels_;
    int classes_;
};

}  // namespace training

}  // namespace evid
