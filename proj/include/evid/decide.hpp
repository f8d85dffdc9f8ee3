#pragma once

#include <utility>

#include "evid/linalg.hpp"
#include "evid/mass.hpp"

namespace evid {

/// Lower and upper expected utilities: averages of the per-focal-set minima
/// and maxima of the utility. Equal for Bayesian mass functions.
std::pair<double, double> expected_utility_bounds(const MassFunction& m, const Vec& utility);

/// Index of the pignistic-probability maximizer; ties go to the lowest index.
int decide_pignistic(const MassFunction& m);

/// Index of the plausibility maximizer over singletons; ties go to the
/// lowest index.
int decide_max_plausibility(const MassFunction& m);

}  // namespace evid
