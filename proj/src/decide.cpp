#include "evid/decide.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace evid {

namespace {

int argmax_lowest(const Vec& values) {
    int best = 0;
    for (int c = 1; c < static_cast<int>(values.size()); ++c) {
        if (values[static_cast<std::size_t>(c)] > values[static_cast<std::size_t>(best)]) best = c;
    }
    return best;
}

}  // namespace

std::pair<double, double> expected_utility_bounds(const MassFunction& m, const Vec& utility) {
    if (utility.size() != static_cast<std::size_t>(m.frame().size())) {
        throw BadFrameError("utility must be defined on every frame element");
    }
    for (double u : utility) {
        if (!std::isfinite(u)) throw InvalidArgumentError("utilities must be finite");
    }
    double lower = 0.0;
    double upper = 0.0;
    for (const auto& [set, value] : m.focal_sets()) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (int c = 0; c < m.frame().size(); ++c) {
            if (!(set & (FocalSet{1} << c))) continue;
            lo = std::min(lo, utility[static_cast<std::size_t>(c)]);
            hi = std::max(hi, utility[static_cast<std::size_t>(c)]);
        }
        lower += value * lo;
        upper += value * hi;
    }
    return {lower, upper};
}

int decide_pignistic(const MassFunction& m) { return argmax_lowest(m.pignistic()); }

int decide_max_plausibility(const MassFunction& m) { return argmax_lowest(m.contour().values()); }

}  // namespace evid
