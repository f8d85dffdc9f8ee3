#include "evid/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "evid/decide.hpp"
#include "evid/rng.hpp"

namespace evid {

BananaData make_banana_data(int count, std::uint64_t seed, double noise) {
    if (count < 2) throw InvalidArgumentError("need at least two samples");
    Rng rng(seed);
    BananaData data;
    data.features.reserve(static_cast<std::size_t>(count));
    data.labels.reserve(static_cast<std::size_t>(count));
    const int first_class = count / 2;
    for (int i = 0; i < count; ++i) {
        const double t = rng.uniform(0.0, std::numbers::pi);
        const double nx = noise * rng.normal();
        const double ny = noise * rng.normal();
        if (i < first_class) {
            // lower arc centered at the origin
            data.features.push_back({std::cos(t) + nx, -std::sin(t) + ny});
            data.labels.push_back(0);
        } else {
            // opposite arc centered at (1, -0.5), reaching into the first one
            data.features.push_back({1.0 - std::cos(t) + nx, -0.5 + std::sin(t) + ny});
            data.labels.push_back(1);
        }
    }
    return data;
}

Mat make_offmanifold_blob(int count, std::uint64_t seed) {
    Rng rng(seed);
    Mat blob;
    blob.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        blob.push_back({2.5 + 0.2 * rng.normal(), 1.5 + 0.2 * rng.normal()});
    }
    return blob;
}

namespace {

template <typename Forward>
BananaCell evaluate_cell(const std::string& name, double lambda, std::uint64_t seed,
                         const BananaData& test, const Mat& blob, Forward&& forward) {
    BananaCell cell;
    cell.model = name;
    cell.lambda = lambda;
    cell.seed = seed;
    int miss = 0;
    double ignorance = 0.0;
    for (std::size_t i = 0; i < test.features.size(); ++i) {
        const MassFunction m = forward(test.features[i]);
        miss += decide_pignistic(m) != test.labels[i];
        ignorance += m.mass(m.frame().full_set());
    }
    cell.test_error = static_cast<double>(miss) / static_cast<double>(test.features.size());
    cell.mean_ignorance_test = ignorance / static_cast<double>(test.features.size());
    double third = 0.0;
    for (const auto& x : blob) {
        const MassFunction m = forward(x);
        third += m.mass(m.frame().full_set());
    }
    cell.mean_ignorance_third = third / static_cast<double>(blob.size());
    return cell;
}

template <typename Forward>
Mat contour_grid(int resolution, Forward&& forward) {
    // Box covering both arcs and the off-manifold blob.
    const double x_lo = -2.0, x_hi = 3.5, y_lo = -2.0, y_hi = 2.5;
    Mat grid;
    grid.reserve(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
    for (int iy = 0; iy < resolution; ++iy) {
        for (int ix = 0; ix < resolution; ++ix) {
            const double x = x_lo + (x_hi - x_lo) * ix / (resolution - 1);
            const double y = y_lo + (y_hi - y_lo) * iy / (resolution - 1);
            const MassFunction m = forward({x, y});
            grid.push_back({x, y, m.mass(m.frame().singleton(0)),
                            m.mass(m.frame().singleton(1)), m.mass(m.frame().full_set())});
        }
    }
    return grid;
}

}  // namespace

Vec BananaExperimentResult::mean_over_seeds(const std::string& model,
                                            double BananaCell::* column,
                                            const BananaExperimentConfig& config) const {
    Vec means;
    means.reserve(config.lambda_grid.size());
    for (double lambda : config.lambda_grid) {
        double total = 0.0;
        int count = 0;
        for (const auto& cell : cells) {
            if (cell.model == model && cell.lambda == lambda) {
                total += cell.*column;
                ++count;
            }
        }
        means.push_back(count ? total / count : 0.0);
    }
    return means;
}

BananaExperimentResult run_banana_experiment(const BananaExperimentConfig& config) {
    if (config.lambda_grid.empty() || config.seeds.empty()) {
        throw InvalidArgumentError("lambda grid and seed list must be nonempty");
    }
    const Frame frame({"w1", "w2"});
    const Rng base(config.data_seed);
    const BananaData train =
        make_banana_data(config.train_size, base.fork(1).next_u64());
    const BananaData test = make_banana_data(config.test_size, base.fork(2).next_u64());
    const Mat blob = make_offmanifold_blob(config.third_class_size, base.fork(3).next_u64());

    Vec lambdas = config.lambda_grid;
    std::sort(lambdas.begin(), lambdas.end());
    if (std::any_of(lambdas.begin(), lambdas.end(), [](double l) { return l < 0.0; })) {
        throw InvalidArgumentError("lambda grid entries must be nonnegative");
    }

    TrainConfig tc;
    tc.epochs = config.epochs;
    tc.learning_rate = config.learning_rate;
    tc.init = config.init;

    // All lambda cells of one seed share their initialization, so differences
    // along the grid reflect the penalty alone.
    BananaExperimentResult result;
    for (std::uint64_t seed : config.seeds) {
        tc.seed = seed;
        for (double lambda : lambdas) {
            tc.lambda = lambda;
            const EnnModel enn_model =
                enn_train(train.features, train.labels, frame, config.prototype_count, tc);
            const RbfModel rbf_model =
                rbf_train(train.features, train.labels, frame, config.prototype_count, tc);
            result.cells.push_back(evaluate_cell(
                "enn", lambda, seed, test, blob,
                [&](const Vec& x) { return enn_model.forward(x); }));
            result.cells.push_back(evaluate_cell(
                "rbf", lambda, seed, test, blob,
                [&](const Vec& x) { return rbf_model.forward(x).mass; }));
            if (lambda == config.contour_lambda && seed == config.seeds.front()) {
                result.enn_grid = contour_grid(config.grid_resolution, [&](const Vec& x) {
                    return enn_model.forward(x);
                });
                result.rbf_grid = contour_grid(config.grid_resolution, [&](const Vec& x) {
                    return rbf_model.forward(x).mass;
                });
            }
        }
    }
    return result;
}

double spearman_rank_correlation(const Vec& a, const Vec& b) {
    if (a.size() != b.size() || a.size() < 2) {
        throw InvalidArgumentError("rank correlation needs two same-length samples");
    }
    auto ranks = [](const Vec& values) {
        const std::size_t n = values.size();
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
        Vec rank(n);
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
            const double average = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
            for (std::size_t k = i; k <= j; ++k) rank[order[k]] = average;
            i = j + 1;
        }
        return rank;
    };
    const Vec ra = ranks(a);
    const Vec rb = ranks(b);
    const double mean = (static_cast<double>(a.size()) + 1.0) / 2.0;
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cov += (ra[i] - mean) * (rb[i] - mean);
        var_a += (ra[i] - mean) * (ra[i] - mean);
        var_b += (rb[i] - mean) * (rb[i] - mean);
    }
    if (var_a <= 0.0 || var_b <= 0.0) return 0.0;
    return cov / std::sqrt(var_a * var_b);
}

}  // namespace evid
