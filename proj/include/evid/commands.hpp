#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "evid/experiment.hpp"
#include "evid/mass.hpp"

namespace evid {

/// Reduced rational, denominator positive.
struct Fraction {
    long long num = 0;
    long long den = 1;

    Fraction() = default;
    Fraction(long long n, long long d);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Fraction&) const = default;
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

/// The fixed two-source worked example on the frame {a,b,c}: the combination
/// is computed twice, once exactly over the rationals and once through the
/// floating-point rule.
struct DempsterDemoResult {
    Frame frame;
    MassFunction source1;
    MassFunction source2;
    MassFunction combined;
    double kappa = 0.0;
    Fraction kappa_exact;
    std::vector<std::pair<FocalSet, Fraction>> exact_masses;  // ascending set order
};

DempsterDemoResult run_dempster_demo();

int cmd_demo_dempster(std::ostream& out);

struct BananasOptions {
    BananaExperimentConfig config;
    std::filesystem::path out_dir;
};
int cmd_bananas(const BananasOptions& options, std::ostream& log);

struct BbaOptions {
    std::string method;  // shafer | appriou1 | appriou2 | bfod | zhu | ratio-mv | gd
    std::filesystem::path input;
    std::filesystem::path out_dir;
    std::vector<std::string> labels;      // frame labels; defaults depend on the method
    double alpha = 1.0;                   // appriou reliability
    double hbar = 1.0;                    // appriou normalization
    double intercept_a = 0.1;             // bfod A
    double max_support_b = 0.9;           // bfod B
    std::string cf_generator = "none";    // none | sigmoid | gaussian
    double cf_midpoint = 0.5;
    double cf_slope = 10.0;
    double cf_width = 0.2;
    double epsilon = 0.1;                 // zhu threshold
    double ratio_alpha = 1.5;             // ratio-mv thresholds
    double ratio_beta = 3.0;
    std::filesystem::path stats_file;     // gd cluster statistics (mean,variance per row)
    bool pairs = false;                   // gd focal structure with pairs
};
int cmd_bba(const BbaOptions& options, std::ostream& log);

struct TrainOptions {
    std::string classifier;  // enn | rbf | eknn
    std::filesystem::path data;
    std::filesystem::path out_dir;
    std::uint64_t seed = 0;
    int prototype_count = 6;
    double lambda = 0.0;
    int epochs = 500;
    double learning_rate = 0.05;
    std::string init = "kmeans";  // kmeans | random
    int neighbors = 5;            // eknn K
    double eknn_alpha = 0.95;
    std::vector<std::string> labels;  // frame labels; default w1..wC
};
int cmd_train(const TrainOptions& options, std::ostream& log);

struct PredictOptions {
    std::filesystem::path model;
    std::filesystem::path data;  // features only
    std::filesystem::path out_dir;
};
int cmd_predict(const PredictOptions& options, std::ostream& log);

struct FuseOptions {
    std::vector<std::filesystem::path> sources;  // contour CSVs, N x C each
    std::filesystem::path beta_table;            // T x C reliabilities
    std::filesystem::path fit_labels;            // labels CSV; triggers fitting
    std::filesystem::path out_dir;
    std::vector<std::string> labels;  // class names; default w1..wC
    int epochs = 400;
};
int cmd_fuse(const FuseOptions& options, std::ostream& log);

struct FcmOptions {
    std::filesystem::path data;
    std::filesystem::path out_dir;
    int clusters = 2;
    double fuzzifier = 2.0;
    int max_iter = 300;
    double tol = 1e-6;
    std::uint64_t seed = 0;
};
int cmd_fcm(const FcmOptions& options, std::ostream& log);

struct EcmOptions {
    std::filesystem::path data;
    std::filesystem::path out_dir;
    int clusters = 2;
    double alpha = 1.0;
    double beta = 2.0;
    double delta = 10.0;
    int max_iter = 100;
    double tol = 1e-6;
    std::uint64_t seed = 0;
    bool pairs = false;
};
int cmd_ecm(const EcmOptions& options, std::ostream& log);

}  // namespace evid
