#include "evid/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evid/errors.hpp"

namespace evid {

OverlapMetrics overlap_metrics(const std::vector<int>& pred, const std::vector<int>& truth,
                               int positive_class) {
    if (pred.size() != truth.size()) throw InvalidArgumentError("label arrays differ in length");
    long tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const bool p = pred[i] == positive_class;
        const bool t = truth[i] == positive_class;
        tp += p && t;
        fp += p && !t;
        fn += !p && t;
    }
    auto ratio = [](long num, long den) {
        if (den == 0) return 1.0;  // both sets empty
        return static_cast<double>(num) / static_cast<double>(den);
    };
    OverlapMetrics out;
    out.dice = ratio(2 * tp, fp + 2 * tp + fn);
    out.sensitivity = ratio(tp, tp + fn);
    out.precision = ratio(tp, tp + fp);
    return out;
}

double hausdorff(const Mat& s, const Mat& g) {
    if (s.empty() || g.empty()) throw InvalidArgumentError("hausdorff needs nonempty point sets");
    auto directed = [](const Mat& from, const Mat& to) {
        double worst = 0.0;
        for (const auto& p : from) {
            double nearest = std::numeric_limits<double>::infinity();
            for (const auto& q : to) nearest = std::min(nearest, squared_distance(p, q));
            worst = std::max(worst, nearest);
        }
        return worst;
    };
    return std::sqrt(std::max(directed(s, g), directed(g, s)));
}

double ece(const Vec& confidences, const std::vector<char>& correct, int bins,
           const std::vector<char>& mask) {
    if (confidences.size() != correct.size() || confidences.empty()) {
        throw InvalidArgumentError("confidence and correctness arrays must match and be nonempty");
    }
    if (!mask.empty() && mask.size() != confidences.size()) {
        throw InvalidArgumentError("mask length does not match the samples");
    }
    if (bins < 1) throw InvalidArgumentError("need at least one bin");
    std::vector<long> count(static_cast<std::size_t>(bins), 0);
    std::vector<double> conf_sum(static_cast<std::size_t>(bins), 0.0);
    std::vector<long> hit_sum(static_cast<std::size_t>(bins), 0);
    long included = 0;
    for (std::size_t i = 0; i < confidences.size(); ++i) {
        if (!mask.empty() && !mask[i]) continue;
        const double c = confidences[i];
        if (!(c >= 0.0 && c <= 1.0)) throw InvalidArgumentError("confidence outside [0,1]");
        int bin = static_cast<int>(c * bins);
        if (bin == bins) bin = bins - 1;  // confidence exactly 1.0
        ++count[static_cast<std::size_t>(bin)];
        conf_sum[static_cast<std::size_t>(bin)] += c;
        hit_sum[static_cast<std::size_t>(bin)] += correct[i] != 0;
        ++included;
    }
    if (included == 0) throw InvalidArgumentError("mask excludes every sample");
    double total = 0.0;
    for (int r = 0; r < bins; ++r) {
        const auto b = static_cast<std::size_t>(r);
        if (count[b] == 0) continue;
        const double acc = static_cast<double>(hit_sum[b]) / static_cast<double>(count[b]);
        const double conf = conf_sum[b] / static_cast<double>(count[b]);
        total += static_cast<double>(count[b]) / static_cast<double>(included) *
                 std::abs(acc - conf);
    }
    return total;
}

Mat label_points(const std::vector<int>& labels, const std::vector<int>& shape,
                 int positive_class) {
    std::size_t volume = 1;
    for (int extent : shape) {
        if (extent <= 0) throw InvalidArgumentError("shape extents must be positive");
        volume *= static_cast<std::size_t>(extent);
    }
    if (shape.empty() || volume != labels.size()) {
        throw InvalidArgumentError("shape does not match the label count");
    }
    Mat points;
    for (std::size_t flat = 0; flat < labels.size(); ++flat) {
        if (labels[flat] != positive_class) continue;
        Vec coords(shape.size());
        std::size_t rest = flat;
        for (std::size_t d = shape.size(); d-- > 0;) {
            const auto extent = static_cast<std::size_t>(shape[d]);
            coords[d] = static_cast<double>(rest % extent);
            rest /= extent;
        }
        points.push_back(std::move(coords));
    }
    return points;
}

double dice_loss_binary(const Vec& s, const Vec& g) {
    if (s.size() != g.size()) throw InvalidArgumentError("arrays differ in length");
    double inter = 0.0, total = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        inter += s[i] * g[i];
        total += s[i] + g[i];
    }
    if (total == 0.0) return 0.0;
    return 1.0 - 2.0 * inter / total;
}

namespace {

void check_same_shape(const Mat& a, const Mat& b) {
    if (a.size() != b.size() || (!a.empty() && a.front().size() != b.front().size())) {
        throw InvalidArgumentError("probability arrays differ in shape");
    }
}

}  // namespace

double dice_loss_class_sum(const Mat& s, const Mat& g) {
    check_same_shape(s, g);
    if (s.empty()) throw InvalidArgumentError("empty probability array");
    const std::size_t classes = s.front().size();
    double loss = 0.0;
    for (std::size_t c = 0; c < classes; ++c) {
        double inter = 0.0, total = 0.0;
        for (std::size_t n = 0; n < s.size(); ++n) {
            inter += s[n][c] * g[n][c];
            total += s[n][c] + g[n][c];
        }
        if (total > 0.0) loss += 1.0 - 2.0 * inter / total;
    }
    return loss;
}

double dice_loss_pooled(const Mat& s, const Mat& g) {
    check_same_shape(s, g);
    if (s.empty()) throw InvalidArgumentError("empty probability array");
    double inter = 0.0, total = 0.0;
    for (std::size_t n = 0; n < s.size(); ++n) {
        for (std::size_t c = 0; c < s.front().size(); ++c) {
            inter += s[n][c] * g[n][c];
            total += s[n][c] + g[n][c];
        }
    }
    if (total == 0.0) return 0.0;
    return 1.0 - 2.0 * inter / total;
}

double consistency_loss(const Mat& s, const Mat& s_t) {
    check_same_shape(s, s_t);
    if (s.empty()) throw InvalidArgumentError("empty probability array");
    double sum = 0.0;
    for (std::size_t n = 0; n < s.size(); ++n) {
        for (std::size_t c = 0; c < s.front().size(); ++c) {
            const double diff = s[n][c] - s_t[n][c];
            sum += diff * diff;
        }
    }
    return sum / (2.0 * static_cast<double>(s.size()) * static_cast<double>(s.front().size()));
}

double lr_schedule(double lr0, int epoch, int total_epochs) {
    if (total_epochs <= 0 || epoch < 0 || epoch > total_epochs) {
        throw InvalidArgumentError("epoch must lie in [0, total_epochs]");
    }
    return lr0 * std::pow(1.0 - static_cast<double>(epoch) / total_epochs, 0.9);
}

}  // namespace evid
