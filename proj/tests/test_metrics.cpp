#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "evid/metrics.hpp"
#include "evid/rng.hpp"
#include "evid/errors.hpp"

using namespace evid;

TEST_CASE("overlap metrics on counted fixtures") {
    const std::vector<int> truth{1, 1, 1, 1, 1, 0, 0, 0, 0};
    // TP = 3, FN = 2, FP = 1
    const std::vector<int> pred{1, 1, 1, 0, 0, 1, 0, 0, 0};
    const OverlapMetrics m = overlap_metrics(pred, truth, 1);
    CHECK(m.dice == doctest::Approx(6.0 / 9.0).epsilon(1e-12));
    CHECK(m.sensitivity == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(m.precision == doctest::Approx(0.75).epsilon(1e-12));

    const OverlapMetrics perfect = overlap_metrics(truth, truth, 1);
    CHECK(perfect.dice == 1.0);
    CHECK(perfect.sensitivity == 1.0);
    CHECK(perfect.precision == 1.0);

    const OverlapMetrics disjoint = overlap_metrics({1, 0}, {0, 1}, 1);
    CHECK(disjoint.dice == 0.0);
    CHECK(disjoint.sensitivity == 0.0);
    CHECK(disjoint.precision == 0.0);

    // empty-set conventions
    const OverlapMetrics both_empty = overlap_metrics({0, 0}, {0, 0}, 1);
    CHECK(both_empty.dice == 1.0);
    const OverlapMetrics one_empty = overlap_metrics({0, 0}, {1, 0}, 1);
    CHECK(one_empty.dice == 0.0);
    CHECK(one_empty.precision == 1.0);  // no positive predictions made
    CHECK(one_empty.sensitivity == 0.0);

    CHECK_THROWS_AS(overlap_metrics({1}, {1, 0}, 1), InvalidArgumentError);
}

TEST_CASE("dice is symmetric, sensitivity and precision swap") {
    Rng rng(67);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<int> a(40), b(40);
        for (int& v : a) v = rng.index(2);
        for (int& v : b) v = rng.index(2);
        const OverlapMetrics ab = overlap_metrics(a, b, 1);
        const OverlapMetrics ba = overlap_metrics(b, a, 1);
        CHECK(ab.dice == doctest::Approx(ba.dice).epsilon(1e-12));
        CHECK(ab.sensitivity == doctest::Approx(ba.precision).epsilon(1e-12));
        CHECK(ab.precision == doctest::Approx(ba.sensitivity).epsilon(1e-12));
    }
}

TEST_CASE("hausdorff distance") {
    const Mat s{{0.0, 0.0}, {1.0, 0.0}};
    CHECK(hausdorff(s, s) == 0.0);
    CHECK(hausdorff({{0.0, 0.0}}, {{3.0, 4.0}}) == doctest::Approx(5.0).epsilon(1e-12));
    // directed G->S dominates: (0,2) is 2 away from its closest point
    CHECK(hausdorff(s, {{0.0, 0.0}, {0.0, 2.0}}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(hausdorff({}, s), InvalidArgumentError);
}

TEST_CASE("hausdorff equals an independent brute force on random sets") {
    Rng rng(71);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t ns = 1 + rng.index(60);
        const std::size_t ng = 1 + rng.index(60);
        Mat s(ns, Vec(2)), g(ng, Vec(2));
        for (auto& p : s) {
            p[0] = rng.normal();
            p[1] = rng.normal();
        }
        for (auto& p : g) {
            p[0] = rng.normal() + 0.5;
            p[1] = rng.normal();
        }
        double expected = 0.0;
        for (const auto& p : s) {
            double nearest = 1e300;
            for (const auto& q : g) {
                nearest = std::min(nearest, std::hypot(p[0] - q[0], p[1] - q[1]));
            }
            expected = std::max(expected, nearest);
        }
        for (const auto& q : g) {
            double nearest = 1e300;
            for (const auto& p : s) {
                nearest = std::min(nearest, std::hypot(p[0] - q[0], p[1] - q[1]));
            }
            expected = std::max(expected, nearest);
        }
        CHECK(hausdorff(s, g) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(hausdorff(s, g) == doctest::Approx(hausdorff(g, s)).epsilon(1e-12));
    }
}

TEST_CASE("expected calibration error") {
    // perfectly confident and correct
    CHECK(ece({1.0, 1.0, 1.0}, {1, 1, 1}) == 0.0);

    // single bin: confidence 0.8, accuracy 0.6
    {
        Vec conf(10, 0.8);
        std::vector<char> hit(10, 0);
        for (int i = 0; i < 6; ++i) hit[static_cast<std::size_t>(i)] = 1;
        CHECK(ece(conf, hit) == doctest::Approx(0.2).epsilon(1e-12));
    }

    // two bins, each off by 0.05
    {
        Vec conf;
        std::vector<char> hit;
        for (int i = 0; i < 20; ++i) {
            conf.push_back(0.05);
            hit.push_back(0);
        }
        for (int i = 0; i < 20; ++i) {
            conf.push_back(0.95);
            hit.push_back(1);
        }
        CHECK(ece(conf, hit) == doctest::Approx(0.05).epsilon(1e-12));
    }

    // a constructed perfectly calibrated fixture: bin accuracy equals bin
    // mean confidence exactly
    {
        Vec conf;
        std::vector<char> hit;
        for (int i = 0; i < 4; ++i) {
            conf.push_back(0.75);
            hit.push_back(i < 3);  // accuracy 3/4 = mean confidence
        }
        for (int i = 0; i < 2; ++i) {
            conf.push_back(0.5);
            hit.push_back(i < 1);
        }
        CHECK(ece(conf, hit) == 0.0);
    }

    // confidence exactly 1.0 falls into the last bin
    CHECK(ece({1.0, 1.0}, {1, 0}) == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(ece({}, {}), InvalidArgumentError);
    CHECK_THROWS_AS(ece({0.5}, {1}, 0), InvalidArgumentError);
    CHECK_THROWS_AS(ece({1.5}, {1}), InvalidArgumentError);

    // region-of-interest mask restricts the evaluation
    const Vec conf_mixed{0.9, 0.9, 0.1, 0.1};
    const std::vector<char> hits{1, 1, 1, 1};
    CHECK(ece(conf_mixed, hits, 10, {1, 1, 0, 0}) ==
          doctest::Approx(0.1).epsilon(1e-12));
    CHECK_THROWS_AS(ece(conf_mixed, hits, 10, {0, 0, 0, 0}), InvalidArgumentError);
    CHECK_THROWS_AS(ece(conf_mixed, hits, 10, {1}), InvalidArgumentError);
}

TEST_CASE("label grids flatten to point sets") {
    // 2x3 grid, row-major
    const std::vector<int> labels{1, 0, 0, 0, 0, 1};
    const Mat points = label_points(labels, {2, 3}, 1);
    REQUIRE(points.size() == 2);
    CHECK(points[0] == Vec{0.0, 0.0});
    CHECK(points[1] == Vec{1.0, 2.0});
    CHECK(hausdorff(points, points) == 0.0);
    CHECK_THROWS_AS(label_points(labels, {2, 2}, 1), InvalidArgumentError);
}

TEST_CASE("binary dice loss") {
    CHECK(dice_loss_binary({1.0, 0.0, 1.0}, {1.0, 0.0, 1.0}) == doctest::Approx(0.0));
    CHECK(dice_loss_binary({0.0, 1.0}, {1.0, 0.0}) == doctest::Approx(1.0));
    CHECK(dice_loss_binary({0.5, 0.5}, {1.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dice_loss_binary({0.0, 0.0}, {0.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(dice_loss_binary({0.5}, {1.0, 0.0}), InvalidArgumentError);

    Rng rng(73);
    for (int trial = 0; trial < 100; ++trial) {
        Vec s(20), g(20);
        for (double& v : s) v = rng.uniform();
        for (double& v : g) v = static_cast<double>(rng.index(2));
        const double loss = dice_loss_binary(s, g);
        CHECK(loss >= 0.0);
        CHECK(loss <= 1.0);
    }
}

TEST_CASE("multiclass dice losses") {
    const Mat one_hot{{1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}};
    CHECK(dice_loss_class_sum(one_hot, one_hot) == doctest::Approx(0.0));
    CHECK(dice_loss_pooled(one_hot, one_hot) == doctest::Approx(0.0));

    // uniform prediction over a balanced 4-sample fixture: per-class terms
    // are 1 - 2*(0.5*2)/(0.5*4 + 2) = 0.5 each
    const Mat uniform(4, Vec{0.5, 0.5});
    CHECK(dice_loss_class_sum(uniform, one_hot) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dice_loss_pooled(uniform, one_hot) == doctest::Approx(0.5).epsilon(1e-12));

    // a class absent from both prediction and truth contributes nothing
    const Mat pred{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
    const Mat truth{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
    CHECK(dice_loss_class_sum(pred, truth) == doctest::Approx(0.0));

    CHECK_THROWS_AS(dice_loss_class_sum(pred, one_hot), InvalidArgumentError);
}

TEST_CASE("consistency loss") {
    const Mat s{{1.0, 0.0}, {0.0, 1.0}};
    CHECK(consistency_loss(s, s) == 0.0);
    const Mat flipped{{0.0, 1.0}};
    CHECK(consistency_loss({{1.0, 0.0}}, flipped) == doctest::Approx(0.5).epsilon(1e-12));

    // duplicating rows leaves the mean property unchanged
    const Mat s2{{1.0, 0.0}, {1.0, 0.0}};
    const Mat t2{{0.0, 1.0}, {0.0, 1.0}};
    CHECK(consistency_loss(s2, t2) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("learning-rate schedule") {
    CHECK(lr_schedule(0.1, 0, 100) == doctest::Approx(0.1));
    CHECK(lr_schedule(0.1, 100, 100) == 0.0);
    CHECK(lr_schedule(1.0, 50, 100) == doctest::Approx(std::pow(0.5, 0.9)).epsilon(1e-12));
    CHECK_THROWS_AS(lr_schedule(0.1, 101, 100), InvalidArgumentError);
}

TEST_CASE("regularized loss helper") {
    CHECK(regularized(0.25, 0.1, 3.0) == doctest::Approx(0.55).epsilon(1e-12));
}
