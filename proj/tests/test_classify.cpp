#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "evid/classify.hpp"
#include "evid/decide.hpp"
#include "test_support.hpp"

using namespace evid;
using evid::testing::small_frame;

namespace {

struct Blobs {
    Mat features;
    std::vector<int> labels;
};

Blobs two_blobs(int per_class, double separation, double sigma, std::uint64_t seed) {
    Rng rng(seed);
    Blobs out;
    for (int c = 0; c < 2; ++c) {
        for (int i = 0; i < per_class; ++i) {
            out.features.push_back(
                {c * separation + sigma * rng.normal(), sigma * rng.normal()});
            out.labels.push_back(c);
        }
    }
    return out;
}

/// Central finite differences against an analytic gradient; returns the
/// worst per-coordinate relative error.
template <typename Loss>
double gradient_relative_error(const Loss& loss, const Vec& theta) {
    Vec analytic(theta.size());
    loss(theta, &analytic);
    Vec probe = theta;
    const double h = 1e-5;
    double worst = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        probe[i] = theta[i] + h;
        const double up = loss(probe, nullptr);
        probe[i] = theta[i] - h;
        const double down = loss(probe, nullptr);
        probe[i] = theta[i];
        const double numeric = (up - down) / (2.0 * h);
        const double scale = std::max({1.0, std::abs(analytic[i]), std::abs(numeric)});
        worst = std::max(worst, std::abs(analytic[i] - numeric) / scale);
    }
    return worst;
}

}  // namespace

TEST_CASE("eknn single neighbor") {
    const Frame frame = small_frame(2);
    const Mat train{{0.0, 0.0}, {5.0, 5.0}};
    const std::vector<int> labels{0, 1};
    EknnConfig config;
    config.k = 1;
    config.alpha = 0.95;
    config.gamma = {1.0, 1.0};

    const MassFunction at_zero = eknn_predict({0.0, 0.0}, train, labels, frame, config);
    CHECK(at_zero.mass(1) == doctest::Approx(0.95).epsilon(1e-12));
    CHECK(at_zero.mass(3) == doctest::Approx(0.05).epsilon(1e-12));

    const MassFunction far = eknn_predict({1e4, 1e4}, train, labels, frame, config);
    CHECK(far.is_vacuous());
}

TEST_CASE("eknn pools agreeing neighbors") {
    const Frame frame = small_frame(2);
    // two class-0 points at the same distance from the query, phi = 0.5 each
    const Mat train{{1.0, 0.0}, {-1.0, 0.0}, {9.0, 9.0}};
    const std::vector<int> labels{0, 0, 1};
    EknnConfig config;
    config.k = 2;
    config.alpha = 0.5;
    config.gamma = {1e-12, 1e-12};  // phi ~= alpha at these distances

    const MassFunction pooled = eknn_predict({0.0, 0.0}, train, labels, frame, config);
    CHECK(pooled.mass(1) == doctest::Approx(0.75).epsilon(1e-6));
    CHECK(pooled.mass(3) == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("eknn validation") {
    const Frame frame = small_frame(2);
    const Mat train{{0.0}, {1.0}};
    const std::vector<int> labels{0, 1};
    EknnConfig config = eknn_default_config(train, frame, 3);
    CHECK_THROWS_AS(eknn_predict({0.5}, train, labels, frame, config), InvalidArgumentError);
    config.k = 1;
    CHECK_THROWS_AS(eknn_predict({0.5, 0.5}, train, labels, frame, config),
                    InvalidArgumentError);
    CHECK(eknn_default_config(train, frame, 2).gamma[0] == doctest::Approx(1.0));
}

TEST_CASE("eknn accuracy on separated blobs") {
    const Blobs blobs = two_blobs(50, 8.0, 1.0, 101);
    const Frame frame = small_frame(2);
    const EknnConfig config = eknn_default_config(blobs.features, frame, 5);
    int hits = 0;
    for (std::size_t i = 0; i < blobs.features.size(); ++i) {
        const MassFunction m =
            eknn_predict(blobs.features[i], blobs.features, blobs.labels, frame, config);
        hits += decide_max_plausibility(m) == blobs.labels[i];
    }
    CHECK(hits == static_cast<int>(blobs.features.size()));
}

TEST_CASE("enn forward basics") {
    const Frame frame = small_frame(2);
    // single prototype reproduces its own evidence
    EnnModel single{frame, {{0.0, 0.0}}, {0.8}, {1.0}, {{0.7, 0.3}}};
    const MassFunction m = single.forward({0.0, 0.0});
    CHECK(m.mass(1) == doctest::Approx(0.8 * 0.7).epsilon(1e-12));
    CHECK(m.mass(2) == doctest::Approx(0.8 * 0.3).epsilon(1e-12));
    CHECK(m.mass(3) == doctest::Approx(0.2).epsilon(1e-12));

    // certainty: alpha = 1, one-hot membership, query on the prototype
    EnnModel certain{frame, {{1.0, 1.0}}, {1.0}, {2.0}, {{1.0, 0.0}}};
    CHECK(certain.forward({1.0, 1.0}).mass(1) == doctest::Approx(1.0));

    // far from every prototype: nearly vacuous
    EnnModel pair{frame, {{0.0, 0.0}, {1.0, 0.0}}, {0.9, 0.9}, {1.0, 1.0},
                  {{1.0, 0.0}, {0.0, 1.0}}};
    CHECK(pair.forward({100.0, 100.0}).mass(3) > 0.999);
}

TEST_CASE("enn forward equals the generic combination rule") {
    Rng rng(103);
    const int dims = 3;
    for (int trial = 0; trial < 200; ++trial) {
        const Frame frame = small_frame(2 + static_cast<int>(rng.index(2)));
        const auto classes = static_cast<std::size_t>(frame.size());
        const std::size_t count = 1 + rng.index(4);
        EnnModel model{frame, Mat(count, Vec(dims)), Vec(count), Vec(count),
                       Mat(count, Vec(classes))};
        for (std::size_t i = 0; i < count; ++i) {
            for (int d = 0; d < dims; ++d) model.prototypes[i][static_cast<std::size_t>(d)] = rng.normal();
            model.alpha[i] = 0.05 + 0.9 * rng.uniform();
            model.gamma[i] = 0.1 + rng.uniform();
            double total = 0.0;
            for (std::size_t c = 0; c < classes; ++c) {
                model.membership[i][c] = 0.05 + rng.uniform();
                total += model.membership[i][c];
            }
            for (std::size_t c = 0; c < classes; ++c) model.membership[i][c] /= total;
        }
        Vec x(dims);
        for (double& v : x) v = rng.normal();

        const MassFunction fast = model.forward(x);

        MassFunction slow = MassFunction::vacuous(frame);
        for (std::size_t i = 0; i < count; ++i) {
            const double s =
                model.alpha[i] * std::exp(-model.gamma[i] * squared_distance(x, model.prototypes[i]));
            std::vector<MassFunction::Assignment> entries;
            for (std::size_t c = 0; c < classes; ++c) {
                entries.emplace_back(frame.singleton(static_cast<int>(c)),
                                     model.membership[i][c] * s);
            }
            entries.emplace_back(frame.full_set(), 1.0 - s);
            slow = combine_dempster(slow, MassFunction::from_assignments(frame, entries)).first;
        }

        for (const auto& [set, value] : slow.focal_sets()) {
            CHECK(std::abs(fast.mass(set) - value) <= 1e-12);
        }
        // focal structure: singletons plus the frame only
        for (const auto& [set, value] : fast.focal_sets()) {
            CHECK((set_cardinality(set) == 1 || set == frame.full_set()));
        }
    }
}

TEST_CASE("enn gradient matches central differences") {
    Rng rng(107);
    const Blobs blobs = two_blobs(10, 3.0, 1.0, 109);
    for (int point = 0; point < 20; ++point) {
        const int prototypes = 2 + static_cast<int>(rng.index(2));
        const double lambda = point % 2 ? 0.1 : 0.0;
        training::EnnObjective objective(blobs.features, blobs.labels, 2, prototypes, lambda);
        Vec theta(objective.dimension());
        for (double& v : theta) v = rng.normal();
        const double error = gradient_relative_error(
            [&](const Vec& t, Vec* g) { return objective.loss(t, g); }, theta);
        CHECK(error < 1e-4);
    }
}

TEST_CASE("rbf gradient matches central differences") {
    Rng rng(113);
    const Blobs blobs = two_blobs(10, 3.0, 1.0, 127);
    for (int point = 0; point < 20; ++point) {
        const int prototypes = 2 + static_cast<int>(rng.index(2));
        const double lambda = point % 2 ? 0.1 : 0.0;
        training::RbfObjective objective(blobs.features, blobs.labels, prototypes, lambda);
        Vec theta(objective.dimension());
        for (double& v : theta) v = rng.normal();
        const double error = gradient_relative_error(
            [&](const Vec& t, Vec* g) { return objective.loss(t, g); }, theta);
        CHECK(error < 1e-4);
    }
}

TEST_CASE("enn training separates blobs") {
    const Blobs blobs = two_blobs(40, 6.0, 1.0, 131);
    const Frame frame = small_frame(2);
    TrainConfig config;
    config.epochs = 400;
    config.seed = 7;
    TrainReport report;
    const EnnModel model = enn_train(blobs.features, blobs.labels, frame, 2, config, &report);
    CHECK(report.final_loss <= report.initial_loss);
    int miss = 0;
    for (std::size_t i = 0; i < blobs.features.size(); ++i) {
        miss += decide_pignistic(model.forward(blobs.features[i])) != blobs.labels[i];
    }
    CHECK(miss == 0);
}

TEST_CASE("growing lambda drives enn toward total ignorance") {
    const Blobs blobs = two_blobs(30, 4.0, 1.0, 137);
    const Frame frame = small_frame(2);
    double previous = -1.0;
    for (double lambda : {0.0, 1.0, 10.0, 50.0}) {
        TrainConfig config;
        config.lambda = lambda;
        config.epochs = 400;
        config.seed = 7;
        const EnnModel model = enn_train(blobs.features, blobs.labels, frame, 3, config);
        double ignorance = 0.0;
        for (const auto& x : blobs.features) {
            ignorance += model.forward(x).mass(frame.full_set());
        }
        ignorance /= static_cast<double>(blobs.features.size());
        CHECK(ignorance >= previous);
        previous = ignorance;
    }
    // once the penalty dominates the data term, every alpha collapses
    CHECK(previous > 0.9);
}

TEST_CASE("rbf forward closed form") {
    const Frame frame = small_frame(2);
    const double ln2 = std::log(2.0);

    // zero weights: fully vacuous, logistic output one half
    RbfModel null{frame, {{0.0, 0.0}}, {1.0}, {0.0}};
    const auto neutral = null.forward({0.3, -0.2});
    CHECK(neutral.mass.is_vacuous());
    CHECK(neutral.p == 0.5);

    // single positive weight of evidence ln 2 at the prototype
    RbfModel pro{frame, {{0.0, 0.0}}, {1.0}, {ln2}};
    const auto out = pro.forward({0.0, 0.0});
    CHECK(out.weight_for == doctest::Approx(ln2).epsilon(1e-12));
    CHECK(out.weight_against == 0.0);
    CHECK(out.kappa == 0.0);
    CHECK(out.mass.mass(1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(out.mass.mass(3) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(out.p == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    // far from every prototype the mass collapses onto the frame
    RbfModel spread{frame, {{0.0, 0.0}, {1.0, 1.0}}, {1.0, 1.0}, {2.0, -3.0}};
    CHECK(spread.forward({80.0, -90.0}).mass.mass(3) > 0.9999);
}

TEST_CASE("rbf output equals the normalized plausibility") {
    Rng rng(139);
    const Frame frame = small_frame(2);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t count = 1 + rng.index(5);
        RbfModel model{frame, Mat(count, Vec(2)), Vec(count), Vec(count)};
        for (std::size_t i = 0; i < count; ++i) {
            model.prototypes[i] = {rng.normal(), rng.normal()};
            model.gamma[i] = 0.05 + rng.uniform() * 2.0;
            model.weights[i] = rng.normal() * 3.0;
        }
        const Vec x{rng.normal() * 2.0, rng.normal() * 2.0};
        const auto out = model.forward(x);

        const double pl1 = out.mass.plausibility(1);
        const double pl2 = out.mass.plausibility(2);
        CHECK(std::abs(out.p - pl1 / (pl1 + pl2)) <= 1e-10);

        double total = 0.0;
        for (const auto& [set, value] : out.mass.focal_sets()) total += value;
        CHECK(std::abs(total - 1.0) <= 1e-12);
    }
}

TEST_CASE("rbf training separates blobs") {
    const Blobs blobs = two_blobs(40, 6.0, 1.0, 149);
    const Frame frame = small_frame(2);
    TrainConfig config;
    config.epochs = 400;
    config.seed = 11;
    TrainReport report;
    const RbfModel model = rbf_train(blobs.features, blobs.labels, frame, 2, config, &report);
    CHECK(report.final_loss <= report.initial_loss);
    int miss = 0;
    for (std::size_t i = 0; i < blobs.features.size(); ++i) {
        const auto out = model.forward(blobs.features[i]);
        miss += decide_pignistic(out.mass) != blobs.labels[i];
    }
    CHECK(miss == 0);

    const Frame trio = small_frame(3);
    CHECK_THROWS_AS(rbf_train(blobs.features, blobs.labels, trio, 2, config), BadFrameError);
}

TEST_CASE("vacuity grows monotonically beyond the farthest prototype") {
    const Blobs blobs = two_blobs(30, 4.0, 1.0, 151);
    const Frame frame = small_frame(2);
    TrainConfig config;
    config.epochs = 300;
    config.seed = 3;
    const EnnModel enn = enn_train(blobs.features, blobs.labels, frame, 3, config);
    const RbfModel rbf = rbf_train(blobs.features, blobs.labels, frame, 3, config);

    double previous_enn = -1.0, previous_rbf = -1.0;
    for (double scale = 20.0; scale <= 200.0; scale += 20.0) {
        const Vec x{scale, scale};
        const double ign_enn = enn.forward(x).mass(frame.full_set());
        const double ign_rbf = rbf.forward(x).mass.mass(frame.full_set());
        CHECK(ign_enn >= previous_enn - 1e-12);
        CHECK(ign_rbf >= previous_rbf - 1e-12);
        previous_enn = ign_enn;
        previous_rbf = ign_rbf;
    }
    CHECK(previous_enn > 0.9999);
    CHECK(previous_rbf > 0.9999);
}

TEST_CASE("training is deterministic for a fixed seed") {
    const Blobs blobs = two_blobs(25, 5.0, 1.0, 157);
    const Frame frame = small_frame(2);
    TrainConfig config;
    config.epochs = 150;
    config.seed = 21;
    const EnnModel a = enn_train(blobs.features, blobs.labels, frame, 3, config);
    const EnnModel b = enn_train(blobs.features, blobs.labels, frame, 3, config);
    CHECK(a.prototypes == b.prototypes);
    CHECK(a.alpha == b.alpha);
    CHECK(a.gamma == b.gamma);
    CHECK(a.membership == b.membership);

    const RbfModel c = rbf_train(blobs.features, blobs.labels, frame, 3, config);
    const RbfModel d = rbf_train(blobs.features, blobs.labels, frame, 3, config);
    CHECK(c.prototypes == d.prototypes);
    CHECK(c.weights == d.weights);
}

TEST_CASE("kmeans prototype init") {
    const Mat points{{0.0, 0.0}, {4.0, 4.0}, {8.0, 0.0}};
    const Mat own = kmeans_prototype_init(points, 3, 5);
    for (const auto& p : points) {
        bool found = false;
        for (const auto& c : own) found = found || squared_distance(p, c) < 1e-18;
        CHECK(found);
    }
    const Blobs blobs = two_blobs(80, 10.0, 1.0, 163);
    const Mat centers = kmeans_prototype_init(blobs.features, 2, 5);
    // prototypes settle on the per-blob sample means (within 0.1 sigma)
    for (int blob = 0; blob < 2; ++blob) {
        Vec mean(2, 0.0);
        int count = 0;
        for (std::size_t i = 0; i < blobs.features.size(); ++i) {
            if (blobs.labels[i] != blob) continue;
            mean[0] += blobs.features[i][0];
            mean[1] += blobs.features[i][1];
            ++count;
        }
        mean[0] /= count;
        mean[1] /= count;
        double nearest = 1e300;
        for (const auto& center : centers) {
            nearest = std::min(nearest, squared_distance(center, mean));
        }
        CHECK(std::sqrt(nearest) < 0.1);
    }
    CHECK(kmeans_prototype_init(blobs.features, 2, 5) == centers);  // seeded
    CHECK_THROWS_AS(kmeans_prototype_init(points, 4, 1), InvalidArgumentError);
}

TEST_CASE("training rejects bad inputs") {
    const Frame frame = small_frame(2);
    TrainConfig config;
    CHECK_THROWS_AS(enn_train({}, {}, frame, 2, config), InvalidArgumentError);
    CHECK_THROWS_AS(enn_train({{0.0}}, {5}, frame, 1, config), InvalidArgumentError);
    config.lambda = -1.0;
    CHECK_THROWS_AS(enn_train({{0.0}, {1.0}}, {0, 1}, frame, 1, config), InvalidArgumentError);
}
