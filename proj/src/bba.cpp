#include "evid/bba.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace evid {

namespace {

void check_unit(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw InvalidArgumentError(std::string(name) + " must lie in [0,1]");
    }
}

void check_binary(const Frame& frame) {
    if (frame.size() != 2) throw BadFrameError("one-against-all models need a 2-label frame");
}

double gauss_density(double x, double mean, double sigma) {
    const double z = (x - mean) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace

Frame binary_frame(const std::string& label) {
    return Frame({label, "not_" + label});
}

ShaferResult shafer_bba(const Frame& frame, const Vec& likelihoods) {
    if (likelihoods.size() != static_cast<std::size_t>(frame.size())) {
        throw BadFrameError("likelihood vector length does not match frame size");
    }
    double max_ell = 0.0;
    for (double ell : likelihoods) {
        if (ell < 0.0 || !std::isfinite(ell)) {
            throw InvalidArgumentError("likelihoods must be finite and nonnegative");
        }
        max_ell = std::max(max_ell, ell);
    }
    if (max_ell <= 0.0) throw AllZeroLikelihoodError("all likelihoods are zero");

    std::vector<double> pl(likelihoods.size());
    for (std::size_t c = 0; c < pl.size(); ++c) pl[c] = likelihoods[c] / max_ell;

    // Consonant realization: sort plausibilities in decreasing order and
    // assign the successive differences to the growing top-k sets.
    std::vector<int> order(pl.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return pl[static_cast<std::size_t>(a)] != pl[static_cast<std::size_t>(b)]
                   ? pl[static_cast<std::size_t>(a)] > pl[static_cast<std::size_t>(b)]
                   : a < b;
    });
    std::vector<MassFunction::Assignment> entries;
    FocalSet cumulative = kEmptySet;
    for (std::size_t k = 0; k < order.size(); ++k) {
        cumulative |= frame.singleton(order[k]);
        const double next = k + 1 < order.size() ? pl[static_cast<std::size_t>(order[k + 1])] : 0.0;
        const double value = pl[static_cast<std::size_t>(order[k])] - next;
        if (value > 0.0) entries.emplace_back(cumulative, value);
    }
    return ShaferResult{ContourFunction(frame, pl),
                        MassFunction::from_assignments(frame, entries)};
}

MassFunction appriou1(const Frame& binary, double likelihood, double alpha, double hbar) {
    check_binary(binary);
    check_unit(alpha, "alpha");
    const double scaled = hbar * likelihood;
    check_unit(scaled, "hbar * likelihood");
    const double against = alpha * (1.0 - scaled);
    return MassFunction::from_assignments(
        binary, {{binary.singleton(1), against}, {binary.full_set(), 1.0 - against}});
}

MassFunction appriou2(const Frame& binary, double likelihood, double alpha, double hbar) {
    check_binary(binary);
    check_unit(alpha, "alpha");
    const double scaled = hbar * likelihood;
    check_unit(scaled, "hbar * likelihood");
    const double support = alpha * scaled / (1.0 + scaled);
    const double against = alpha / (1.0 + scaled);
    return MassFunction::from_assignments(binary, {{binary.singleton(0), support},
                                                   {binary.singleton(1), against},
                                                   {binary.full_set(), 1.0 - alpha}});
}

MassFunction bfod(const Frame& binary, double cf, double a, double b) {
    check_binary(binary);
    check_unit(cf, "confidence factor");
    if (!(a >= 0.0 && a < 1.0)) throw InvalidArgumentError("intercept A must lie in [0,1)");
    if (!(b > 0.0 && b <= 1.0)) throw InvalidArgumentError("maximum support B must lie in (0,1]");
    const double slope = b / (1.0 - a);
    const double support = std::max(0.0, slope * cf - a * slope);
    const double against = std::max(0.0, -slope * cf + b);
    const double ignorance = 1.0 - support - against;
    if (ignorance < -kMassSumTol) {
        throw NonNormalizableError("singleton masses exceed one for cf = " + std::to_string(cf));
    }
    return MassFunction::from_assignments(binary, {{binary.singleton(0), support},
                                                   {binary.singleton(1), against},
                                                   {binary.full_set(), std::max(0.0, ignorance)}});
}

double cf_sigmoid(double value, double midpoint, double slope) {
    return 1.0 / (1.0 + std::exp(-slope * (value - midpoint)));
}

double cf_one_sided_gaussian(double value, double center, double width) {
    if (width <= 0.0) throw InvalidArgumentError("width must be positive");
    if (value >= center) return 1.0;
    const double z = (value - center) / width;
    return std::exp(-0.5 * z * z);
}

double zhu_triangle_overlap(double mv_c, double mv_next) {
    if (mv_c + mv_next <= 0.0) return 0.0;
    return mv_c * mv_next / (2.0 * (mv_c + mv_next));
}

ZhuResult zhu_mass(const Frame& pair_frame, double mv_c, double mv_next, double epsilon) {
    check_binary(pair_frame);
    check_unit(mv_c, "membership value");
    check_unit(mv_next, "membership value");
    constexpr double kMaxOverlap = 0.125;  // both memberships at 0.5
    std::vector<MassFunction::Assignment> entries{{pair_frame.singleton(0), mv_c},
                                                  {pair_frame.singleton(1), mv_next}};
    double pair_raw = 0.0;
    const bool ambiguous = std::abs(mv_c - mv_next) < epsilon;
    if (ambiguous) {
        pair_raw = zhu_triangle_overlap(mv_c, mv_next) / (2.0 * kMaxOverlap);
        entries.emplace_back(pair_frame.full_set(), pair_raw);
    }
    return ZhuResult{MassFunction::normalized_from(pair_frame, entries), ambiguous, pair_raw};
}

std::string to_string(UncertaintyCategory category) {
    switch (category) {
        case UncertaintyCategory::NoUncertainty: return "NU";
        case UncertaintyCategory::SemiUncertainty: return "SU";
        case UncertaintyCategory::PerfectUncertainty: return "PU";
    }
    return "?";
}

RatioMvResult ratio_mv(const Frame& binary, double f1, double f2, double alpha, double beta) {
    check_binary(binary);
    check_unit(f1, "membership value");
    check_unit(f2, "membership value");
    if (f1 <= 0.0 && f2 <= 0.0) throw InvalidArgumentError("both membership values are zero");
    if (!(alpha > 0.0 && beta > alpha)) {
        throw InvalidArgumentError("thresholds must satisfy 0 < alpha < beta");
    }
    const double lo = std::min(f1, f2);
    const double hi = std::max(f1, f2);
    const double rmv = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();

    UncertaintyCategory category;
    std::vector<MassFunction::Assignment> entries;
    if (rmv > beta) {
        category = UncertaintyCategory::NoUncertainty;
        entries = {{binary.singleton(0), f1}, {binary.singleton(1), f2}};
    } else if (rmv > alpha) {
        category = UncertaintyCategory::SemiUncertainty;
        const double lambda = std::abs(f1 - f2) / (beta - alpha);
        entries = {{binary.singleton(0), f1 - lambda / 2.0},
                   {binary.singleton(1), f2 - lambda / 2.0},
                   {binary.full_set(), lambda}};
    } else {
        category = UncertaintyCategory::PerfectUncertainty;
        const double share = (f1 + f2) / 3.0;
        entries = {{binary.singleton(0), share},
                   {binary.singleton(1), share},
                   {binary.full_set(), share}};
    }
    return RatioMvResult{MassFunction::normalized_from(binary, entries), category, rmv};
}

ClusterStats ClusterStats::from_members(const Vec& values) {
    if (values.empty()) throw InvalidArgumentError("cluster without members");
    ClusterStats stats;
    stats.count = static_cast<int>(values.size());
    stats.mean = std::accumulate(values.begin(), values.end(), 0.0) / stats.count;
    for (double v : values) stats.variance += (v - stats.mean) * (v - stats.mean);
    stats.variance /= stats.count;
    return stats;
}

MassFunction gd_mass(const Frame& frame, double x, const std::vector<ClusterStats>& stats,
                     const std::vector<FocalSet>& focal_structure) {
    if (stats.size() != static_cast<std::size_t>(frame.size())) {
        throw BadFrameError("need one cluster statistic per frame element");
    }
    for (const auto& s : stats) {
        if (!(s.variance > 0.0)) throw InvalidArgumentError("cluster variance must be positive");
    }
    if (focal_structure.empty()) throw InvalidArgumentError("empty focal structure");

    std::vector<MassFunction::Assignment> entries;
    for (FocalSet set : focal_structure) {
        frame.check_set(set);
        if (set == kEmptySet) throw EmptyFocalError("focal structure contains the empty set");
        double mean = 0.0;
        double sigma = 0.0;
        int members = 0;
        for (int c = 0; c < frame.size(); ++c) {
            if (!(set & (FocalSet{1} << c))) continue;
            const auto& s = stats[static_cast<std::size_t>(c)];
            mean += s.mean;
            sigma = std::max(sigma, std::sqrt(s.variance));
            ++members;
        }
        mean /= members;
        entries.emplace_back(set, gauss_density(x, mean, sigma));
    }
    return MassFunction::normalized_from(frame, entries);
}

}  // namespace evid
