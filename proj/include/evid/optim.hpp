#pragma once

#include <functional>

#include "evid/linalg.hpp"

namespace evid {

/// Full-batch objective: returns the loss at theta and, when grad is not
/// null, writes the gradient there.
using Objective = std::function<double(const Vec& theta, Vec* grad)>;

struct GdOptions {
    int epochs = 500;
    double learning_rate = 0.1;
    double growth = 1.05;   // step growth after an accepted epoch
    double shrink = 0.5;    // step shrink while the loss would increase
    double min_step = 1e-14;
};

struct GdReport {
    double initial_loss = 0.0;
    double final_loss = 0.0;
    int epochs_run = 0;
};

/// Plain gradient descent with step halving on loss increase. The accepted
/// loss sequence is non-increasing; stops early when no improving step
/// remains. Throws TrainingError on a non-finite loss or gradient.
Vec gradient_descent(Vec theta, const Objective& objective, const GdOptions& options,
                     GdReport* report = nullptr);

}  // namespace evid
