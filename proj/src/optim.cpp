#include "evid/optim.hpp"

#include <cmath>

#include "evid/errors.hpp"

namespace evid {

namespace {

bool all_finite(const Vec& values) {
    for (double v : values) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

}  // namespace

Vec gradient_descent(Vec theta, const Objective& objective, const GdOptions& options,
                     GdReport* report) {
    Vec grad(theta.size(), 0.0);
    double loss = objective(theta, &grad);
    if (!std::isfinite(loss) || !all_finite(grad)) {
        throw TrainingError("non-finite loss or gradient at the starting point");
    }
    if (report) {
        report->initial_loss = loss;
        report->final_loss = loss;
        report->epochs_run = 0;
    }
    double step = options.learning_rate;
    Vec candidate(theta.size());
    for (int epoch = 0; epoch < options.epochs; ++epoch) {
        bool accepted = false;
        while (step >= options.min_step) {
            for (std::size_t i = 0; i < theta.size(); ++i) {
                candidate[i] = theta[i] - step * grad[i];
            }
            const double candidate_loss = objective(candidate, nullptr);
            if (!std::isfinite(candidate_loss)) {
                step *= options.shrink;
                continue;
            }
            if (candidate_loss <= loss) {
                theta.swap(candidate);
                loss = candidate_loss;
                accepted = true;
                break;
            }
            step *= options.shrink;
        }
        if (!accepted) break;  // no improving step at any feasible size
        step *= options.growth;
        loss = objective(theta, &grad);
        if (!std::isfinite(loss) || !all_finite(grad)) {
            throw TrainingError("non-finite loss or gradient after epoch " +
                                std::to_string(epoch));
        }
        if (report) {
            report->final_loss = loss;
            report->epochs_run = epoch + 1;
        }
    }
    return theta;
}

}  // namespace evid
