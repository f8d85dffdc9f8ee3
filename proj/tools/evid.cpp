// Command-line front end: every subcommand is a thin wrapper around the
// library entry points in evid/commands.hpp.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "evid/commands.hpp"
#include "evid/errors.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

std::string default_out_dir() {
    const char* env = std::getenv("EVID_OUT");
    return env && *env ? env : ".";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "evid - belief-function toolkit: mass-function algebra, evidential classifiers and\n"
        "clustering, multi-source fusion and calibration metrics.\n"};
    app.require_subcommand(1);
    app.footer(
        "Exit codes: 0 success, 2 validation error (bad flags, malformed or inconsistent\n"
        "input), 3 runtime failure (combination undefined, training diverged, I/O).\n"
        "EVID_OUT sets the default output directory.");

    std::string out_dir = default_out_dir();

    auto* demo = app.add_subcommand("demo-dempster",
                                    "Print the two-source worked combination on {a,b,c} with "
                                    "exact fractions and decimals");

    evid::BananasOptions bananas;
    auto* cmd_bananas = app.add_subcommand(
        "bananas", "Half-circle benchmark: train ENN and RBF over a lambda grid and emit "
                   "error/ignorance tables plus contour grids");
    cmd_bananas->add_option("--out", out_dir, "Output directory");
    cmd_bananas->add_option("--seed", bananas.config.data_seed, "Data-generation seed");
    cmd_bananas->add_option("--lambda-grid", bananas.config.lambda_grid,
                            "Regularization grid (default 1e-5 ... 1)");
    cmd_bananas->add_option("--train-seeds", bananas.config.seeds,
                            "Training seeds, one run per (lambda, seed)");
    cmd_bananas->add_option("--prototypes,-I", bananas.config.prototype_count,
                            "Prototype count (default 6)");
    cmd_bananas->add_option("--train-size", bananas.config.train_size, "Learning-set size");
    cmd_bananas->add_option("--test-size", bananas.config.test_size, "Test-set size");
    cmd_bananas->add_option("--epochs", bananas.config.epochs, "Training epochs per run");
    cmd_bananas->add_option("--grid-resolution", bananas.config.grid_resolution,
                            "Contour grid resolution per axis");
    cmd_bananas->add_option("--contour-lambda", bananas.config.contour_lambda,
                            "Lambda whose models render the contour grids");

    evid::BbaOptions bba;
    auto* cmd_bba = app.add_subcommand(
        "bba", "Turn likelihoods or membership values into mass-function documents");
    cmd_bba->add_option("--method", bba.method,
                        "shafer | appriou1 | appriou2 | bfod | zhu | ratio-mv | gd")
        ->required();
    cmd_bba->add_option("--input", bba.input, "Input CSV, one object per row")->required();
    cmd_bba->add_option("--out", out_dir, "Output directory");
    cmd_bba->add_option("--labels", bba.labels, "Frame labels (comma separated)")->delimiter(',');
    cmd_bba->add_option("--alpha", bba.alpha, "Reliability factor (appriou)");
    cmd_bba->add_option("--hbar", bba.hbar, "Likelihood normalization (appriou)");
    cmd_bba->add_option("--A", bba.intercept_a, "Confidence-factor intercept (bfod)");
    cmd_bba->add_option("--B", bba.max_support_b, "Maximum support (bfod)");
    cmd_bba->add_option("--cf-generator", bba.cf_generator,
                        "none | sigmoid | gaussian (bfod input transform)");
    cmd_bba->add_option("--cf-midpoint", bba.cf_midpoint, "Generator midpoint/center");
    cmd_bba->add_option("--cf-slope", bba.cf_slope, "Sigmoid slope");
    cmd_bba->add_option("--cf-width", bba.cf_width, "Gaussian width");
    cmd_bba->add_option("--epsilon", bba.epsilon, "Ambiguity threshold (zhu)");
    cmd_bba->add_option("--ratio-alpha", bba.ratio_alpha, "PU/SU boundary (ratio-mv)");
    cmd_bba->add_option("--ratio-beta", bba.ratio_beta, "SU/NU boundary (ratio-mv)");
    cmd_bba->add_option("--stats", bba.stats_file, "Cluster mean,variance rows (gd)");
    cmd_bba->add_flag("--pairs", bba.pairs, "Include pair hypotheses (gd)");

    evid::TrainOptions train;
    auto* cmd_train = app.add_subcommand("train", "Fit an evidential classifier");
    cmd_train->add_option("--classifier", train.classifier, "enn | rbf | eknn")->required();
    cmd_train->add_option("--data", train.data, "CSV features plus integer label column")
        ->required();
    cmd_train->add_option("--out", out_dir, "Output directory");
    cmd_train->add_option("--seed", train.seed, "Training seed");
    cmd_train->add_option("--prototypes,-I", train.prototype_count, "Prototype count");
    cmd_train->add_option("--lambda", train.lambda, "Regularization weight");
    cmd_train->add_option("--epochs", train.epochs, "Training epochs");
    cmd_train->add_option("--learning-rate", train.learning_rate, "Initial step size");
    cmd_train->add_option("--init", train.init, "Prototype init: kmeans | random");
    cmd_train->add_option("--neighbors,-K", train.neighbors, "Neighbor count (eknn)");
    cmd_train->add_option("--eknn-alpha", train.eknn_alpha, "Support ceiling (eknn)");
    cmd_train->add_option("--labels", train.labels, "Frame labels (comma separated)")->delimiter(',');

    evid::PredictOptions predict;
    auto* cmd_predict = app.add_subcommand("predict", "Predict with a stored model");
    cmd_predict->add_option("--model", predict.model, "Model file from 'train'")->required();
    cmd_predict->add_option("--data", predict.data, "CSV features, one object per row")
        ->required();
    cmd_predict->add_option("--out", out_dir, "Output directory");

    evid::FuseOptions fuse;
    auto* cmd_fuse = app.add_subcommand(
        "fuse", "Combine per-source contour predictions with contextual discounting");
    cmd_fuse->add_option("--sources", fuse.sources, "Contour CSVs, one per source")->required();
    cmd_fuse->add_option("--beta", fuse.beta_table, "Reliability table, sources x classes");
    cmd_fuse->add_option("--fit", fuse.fit_labels, "Label CSV: learn the reliabilities instead");
    cmd_fuse->add_option("--epochs", fuse.epochs, "Fitting epochs");
    cmd_fuse->add_option("--labels", fuse.labels, "Class labels (comma separated)")->delimiter(',');
    cmd_fuse->add_option("--out", out_dir, "Output directory");

    evid::FcmOptions fcm;
    auto* cmd_fcm = app.add_subcommand("fcm", "Fuzzy c-means partition");
    cmd_fcm->add_option("--data", fcm.data, "CSV data, one object per row")->required();
    cmd_fcm->add_option("--out", out_dir, "Output directory");
    cmd_fcm->add_option("--clusters,-C", fcm.clusters, "Cluster count")->required();
    cmd_fcm->add_option("--fuzzifier,-m", fcm.fuzzifier, "Fuzzifier m > 1");
    cmd_fcm->add_option("--max-iter", fcm.max_iter, "Iteration cap");
    cmd_fcm->add_option("--tol", fcm.tol, "Center-shift tolerance");
    cmd_fcm->add_option("--seed", fcm.seed, "Initialization seed");

    evid::EcmOptions ecm;
    auto* cmd_ecm = app.add_subcommand("ecm", "Evidential c-means credal partition");
    cmd_ecm->add_option("--data", ecm.data, "CSV data, one object per row")->required();
    cmd_ecm->add_option("--out", out_dir, "Output directory");
    cmd_ecm->add_option("--clusters,-C", ecm.clusters, "Cluster count")->required();
    cmd_ecm->add_option("--alpha", ecm.alpha, "Cardinality exponent");
    cmd_ecm->add_option("--beta", ecm.beta, "Mass exponent > 1");
    cmd_ecm->add_option("--delta", ecm.delta, "Outlier distance");
    cmd_ecm->add_option("--max-iter", ecm.max_iter, "Iteration cap");
    cmd_ecm->add_option("--tol", ecm.tol, "Prototype-shift tolerance");
    cmd_ecm->add_option("--seed", ecm.seed, "Initialization seed");
    cmd_ecm->add_flag("--pairs", ecm.pairs, "Add pair sets to the focal structure");

    CLI11_PARSE(app, argc, argv);

    try {
        if (demo->parsed()) return evid::cmd_demo_dempster(std::cout);
        if (cmd_bananas->parsed()) {
            bananas.out_dir = out_dir;
            return evid::cmd_bananas(bananas, std::cout);
        }
        if (cmd_bba->parsed()) {
            bba.out_dir = out_dir;
            return evid::cmd_bba(bba, std::cout);
        }
        if (cmd_train->parsed()) {
            train.out_dir = out_dir;
            return evid::cmd_train(train, std::cout);
        }
        if (cmd_predict->parsed()) {
            predict.out_dir = out_dir;
            return evid::cmd_predict(predict, std::cout);
        }
        if (cmd_fuse->parsed()) {
            fuse.out_dir = out_dir;
            return evid::cmd_fuse(fuse, std::cout);
        }
        if (cmd_fcm->parsed()) {
            fcm.out_dir = out_dir;
            return evid::cmd_fcm(fcm, std::cout);
        }
        if (cmd_ecm->parsed()) {
            ecm.out_dir = out_dir;
            return evid::cmd_ecm(ecm, std::cout);
        }
    } catch (const evid::InvalidArgumentError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const evid::BadFrameError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const evid::IoError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const evid::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
