#pragma once

#include <string>
#include <vector>

#include "evid/linalg.hpp"
#include "evid/mass.hpp"

namespace evid {

/// Frame {label, not_label} used by the one-against-all models; index 0 is
/// the hypothesis, index 1 its negation.
Frame binary_frame(const std::string& label = "omega");

struct ShaferResult {
    ContourFunction contour;  // pl(w_c) = likelihood / max likelihood
    MassFunction mass;        // the unique consonant mass with that contour
};

/// Likelihood-based model: plausibilities proportional to the conditional
/// likelihoods, realized as a consonant mass function (sorted plausibilities,
/// successive differences). Throws AllZeroLikelihoodError when no entry is
/// strictly positive.
ShaferResult shafer_bba(const Frame& frame, const Vec& likelihoods);

/// First one-against-all likelihood model: evidence only against the
/// hypothesis, scaled by the reliability factor alpha.
MassFunction appriou1(const Frame& binary, double likelihood, double alpha, double hbar);

/// Second one-against-all likelihood model: support and counter-evidence
/// split by the normalized likelihood, ignorance fixed at 1 - alpha.
MassFunction appriou2(const Frame& binary, double likelihood, double alpha, double hbar);

/// Piecewise-linear transfer from a confidence factor to a binary-frame mass.
/// A is the confidence-factor axis intercept, B the maximum support; both
/// singleton masses clamp at zero.
MassFunction bfod(const Frame& binary, double cf, double a, double b);

/// Confidence-factor generators for the transfer above.
double cf_sigmoid(double value, double midpoint = 0.5, double slope = 10.0);
double cf_one_sided_gaussian(double value, double center, double width);

/// Membership-threshold model on a pair of adjacent clusters. When the two
/// membership values are closer than epsilon a double hypothesis is formed
/// whose raw mass is the overlap area of two unit-base isosceles triangles
/// (apexes one unit apart) scaled by twice the maximum-ambiguity area 0.125;
/// all masses are then rescaled to sum to one.
struct ZhuResult {
    MassFunction mass;     // on the 2-label frame, pair = full set
    bool pair_formed;
    double pair_mass_raw;  // before renormalization, 0 when no pair
};
ZhuResult zhu_mass(const Frame& pair_frame, double mv_c, double mv_next, double epsilon = 0.1);

/// Closed-form overlap area of the two triangular membership functions.
double zhu_triangle_overlap(double mv_c, double mv_next);

enum class UncertaintyCategory { NoUncertainty, SemiUncertainty, PerfectUncertainty };
std::string to_string(UncertaintyCategory category);

/// Ratio-of-membership-values model. RMV = max(f1,f2)/min(f1,f2); boundary
/// ratios go to the more uncertain category and a zero minimum counts as no
/// uncertainty. Masses are renormalized to sum to one.
struct RatioMvResult {
    MassFunction mass;
    UncertaintyCategory category;
    double rmv;  // +inf when min(f1,f2) == 0
};
RatioMvResult ratio_mv(const Frame& binary, double f1, double f2, double alpha = 1.5,
                       double beta = 3.0);

/// Per-cluster scalar statistics for the Gaussian-density model.
struct ClusterStats {
    double mean = 0.0;
    double variance = 0.0;
    int count = 0;

    static ClusterStats from_members(const Vec& values);
};

/// Gaussian-density model: singleton values from the cluster densities,
/// multi-hypothesis values from a pooled Gaussian (mean of member means,
/// largest member deviation), renormalized over the declared focal structure.
MassFunction gd_mass(const Frame& frame, double x, const std::vector<ClusterStats>& stats,
                     const std::vector<FocalSet>& focal_structure);

}  // namespace evid
