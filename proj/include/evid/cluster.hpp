#pragma once

#include <cstdint>
#include <vector>

#include "evid/linalg.hpp"
#include "evid/mass.hpp"
#include "evid/rng.hpp"

namespace evid {

/// Seeded k-means++ center selection followed by Lloyd iterations. The
/// workhorse behind prototype initialization everywhere in this project.
struct KMeansResult {
    Mat centers;
    std::vector<int> assignment;
    int iterations = 0;
};
KMeansResult kmeans_fit(const Mat& data, int k, std::uint64_t seed, int max_iter = 100,
                        double tol = 1e-10);

/// Fuzzy partition: cluster centers plus a row-stochastic membership matrix.
struct FuzzyPartition {
    Mat centers;              // C x D
    Mat memberships;          // N x C, rows sum to one
    std::vector<double> objective_history;  // one value per completed iteration
    bool converged = false;
};

struct FcmConfig {
    int clusters = 2;
    double fuzzifier = 2.0;  // must exceed 1
    int max_iter = 300;
    double tol = 1e-6;       // max center displacement
    std::uint64_t seed = 0;
};

FuzzyPartition fcm_fit(const Mat& data, const FcmConfig& config);

/// Membership row for one point given fixed centers (inverse-distance-ratio
/// formula; coincident points take the full membership of their centers).
Vec fcm_memberships(const Vec& point, const Mat& centers, double fuzzifier);

/// Credal partition: per-object masses over a declared focal structure, with
/// the empty-set column kept separate.
struct CredalPartition {
    Frame frame;
    std::vector<FocalSet> focal_structure;  // nonempty sets, fixed order
    Mat masses;                             // N x |structure|
    Vec empty_mass;                         // N
};

/// Renormalizes row i over the nonempty focal sets into a mass function.
/// Throws AllMassEmptyError when the row puts (almost) everything on the
/// empty set.
MassFunction credal_to_mass(const CredalPartition& partition, std::size_t object);

struct EcmConfig {
    int clusters = 2;
    double alpha = 1.0;   // cardinality exponent
    double beta = 2.0;    // mass exponent, must exceed 1
    double delta = 10.0;  // outlier distance
    int max_iter = 100;
    double tol = 1e-6;
    std::uint64_t seed = 0;
};

struct EcmResult {
    CredalPartition partition;
    Mat prototypes;  // cluster centers, C x D
    std::vector<double> objective_history;
    bool converged = false;
};

/// Focal structures over a frame of the given size: all singletons plus the
/// frame, optionally every pair as well.
std::vector<FocalSet> default_focal_structure(int clusters, bool with_pairs = false);

/// Evidential c-means: alternating closed-form mass updates and a linear
/// prototype solve. The distance of an object to a focal set is the distance
/// to the center of mass of the member prototypes.
EcmResult ecm_fit(const Mat& data, const EcmConfig& config,
                  const std::vector<FocalSet>& focal_structure);

/// Mass row (plus empty-set mass) of one point against fixed prototypes,
/// i.e. the ECM update formula applied once.
std::pair<Vec, double> ecm_masses_for_point(const Vec& point, const Mat& prototypes,
                                            const std::vector<FocalSet>& focal_structure,
                                            const EcmConfig& config);

}  // namespace evid
