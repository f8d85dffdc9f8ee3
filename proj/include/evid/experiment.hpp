#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evid/classify.hpp"
#include "evid/linalg.hpp"

namespace evid {

struct BananaData {
    Mat features;
    std::vector<int> labels;
};

/// Two interleaved half-circles of radius 1 whose centers are offset by
/// (1, -0.5), with isotropic Gaussian noise. Equal class split, class 0 is
/// the upper arc.
BananaData make_banana_data(int count, std::uint64_t seed, double noise = 0.15);

/// Isotropic blob at (2.5, 1.5) with sigma 0.2: points away from both arcs,
/// used to probe how much ignorance the classifiers report off-manifold.
Mat make_offmanifold_blob(int count, std::uint64_t seed);

struct BananaExperimentConfig {
    Vec lambda_grid{1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0};
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    std::uint64_t data_seed = 42;
    int train_size = 300;
    int test_size = 1000;
    int third_class_size = 200;
    int prototype_count = 6;
    int epochs = 2000;
    double learning_rate = 0.5;
    InitScheme init = InitScheme::KMeans;
    double contour_lambda = 1e-3;  // grids are rendered for this lambda
    int grid_resolution = 100;
};

struct BananaCell {
    std::string model;  // "enn" or "rbf"
    double lambda = 0.0;
    std::uint64_t seed = 0;
    double test_error = 0.0;
    double mean_ignorance_test = 0.0;   // average m(frame) on the test set
    double mean_ignorance_third = 0.0;  // average m(frame) on the blob
};

struct BananaExperimentResult {
    std::vector<BananaCell> cells;
    Mat enn_grid;  // rows: x, y, m({w1}), m({w2}), m(frame)
    Mat rbf_grid;

    /// Mean over seeds of a cell column, per lambda grid point.
    Vec mean_over_seeds(const std::string& model, double BananaCell::* column,
                        const BananaExperimentConfig& config) const;
};

BananaExperimentResult run_banana_experiment(const BananaExperimentConfig& config);

/// Spearman rank correlation with average ranks on ties.
double spearman_rank_correlation(const Vec& a, const Vec& b);

}  // namespace evid
