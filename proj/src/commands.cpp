#include "evid/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "evid/bba.hpp"
#include "evid/cluster.hpp"
#include "evid/decide.hpp"
#include "evid/fusion.hpp"
#include "evid/interchange.hpp"
#include "evid/io.hpp"
#include "evid/model_io.hpp"

namespace evid {

using nlohmann::json;

namespace {

Frame default_frame(std::size_t classes, const std::vector<std::string>& labels) {
    if (!labels.empty()) {
        if (labels.size() != classes) {
            throw InvalidArgumentError("expected " + std::to_string(classes) + " labels, got " +
                                       std::to_string(labels.size()));
        }
        return Frame(labels);
    }
    std::vector<std::string> generated;
    generated.reserve(classes);
    for (std::size_t c = 1; c <= classes; ++c) generated.push_back("w" + std::to_string(c));
    return Frame(generated);
}

std::filesystem::path prepare_out_dir(const std::filesystem::path& dir) {
    if (dir.empty()) throw InvalidArgumentError("output directory not set");
    std::filesystem::create_directories(dir);
    return dir;
}

void write_documents(const std::filesystem::path& path, const std::vector<json>& documents) {
    std::string text;
    for (const auto& doc : documents) {
        text += doc.dump();
        text += '\n';
    }
    write_text_file(path, text);
}

json document_with_meta(const MassFunction& m, std::size_t object, json meta) {
    json doc = mass_to_document(m);
    doc["object"] = object;
    if (!meta.empty()) doc["meta"] = std::move(meta);
    return doc;
}

}  // namespace

Fraction::Fraction(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw InvalidArgumentError("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

DempsterDemoResult run_dempster_demo() {
    const Frame frame({"a", "b", "c"});
    // Masses in hundredths, indexed by subset bitmask over (a,b,c).
    const FocalSet a = 1, b = 2, c = 4;
    const std::vector<std::pair<FocalSet, long long>> m1{
        {a, 30}, {b, 30}, {a | b, 10}, {a | c, 10}, {b | c, 10}, {a | b | c, 10}};
    const std::vector<std::pair<FocalSet, long long>> m2{
        {a, 20}, {b, 30}, {a | b, 10}, {c, 10}, {b | c, 20}, {a | b | c, 10}};

    long long conflict = 0;  // in ten-thousandths
    std::map<FocalSet, long long> numerators;
    for (const auto& [sb, vb] : m1) {
        for (const auto& [sd, vd] : m2) {
            const FocalSet inter = sb & sd;
            if (inter == kEmptySet) {
                conflict += vb * vd;
            } else {
                numerators[inter] += vb * vd;
            }
        }
    }
    const long long surviving = 10000 - conflict;

    DempsterDemoResult result{frame,
                              MassFunction::vacuous(frame),
                              MassFunction::vacuous(frame),
                              MassFunction::vacuous(frame),
                              0.0,
                              Fraction(conflict, 10000),
                              {}};
    for (const auto& [set, numerator] : numerators) {
        result.exact_masses.emplace_back(set, Fraction(numerator, surviving));
    }

    auto to_mass = [&](const std::vector<std::pair<FocalSet, long long>>& entries) {
        std::vector<MassFunction::Assignment> assignments;
        for (const auto& [set, value] : entries) {
            assignments.emplace_back(set, static_cast<double>(value) / 100.0);
        }
        return MassFunction::from_assignments(frame, assignments);
    };
    result.source1 = to_mass(m1);
    result.source2 = to_mass(m2);
    auto [combined, kappa] = combine_dempster(result.source1, result.source2);
    result.combined = std::move(combined);
    result.kappa = kappa;
    return result;
}

int cmd_demo_dempster(std::ostream& out) {
    const DempsterDemoResult demo = run_dempster_demo();
    out << "Two-source combination on {a,b,c}\n";
    out << "kappa = " << demo.kappa_exact.str() << " = " << format_number(demo.kappa) << "\n";
    for (const auto& [set, fraction] : demo.exact_masses) {
        out << "m(" << demo.frame.set_name(set) << ") = " << fraction.str() << " = "
            << format_number(demo.combined.mass(set)) << "\n";
    }
    return 0;
}

int cmd_bananas(const BananasOptions& options, std::ostream& log) {
    const auto dir = prepare_out_dir(options.out_dir);
    const BananaExperimentResult result = run_banana_experiment(options.config);

    Mat rows;
    for (const auto& cell : result.cells) {
        rows.push_back({cell.model == "enn" ? 0.0 : 1.0, cell.lambda,
                        static_cast<double>(cell.seed), cell.test_error,
                        cell.mean_ignorance_test, cell.mean_ignorance_third});
    }
    write_csv(dir / "cells.csv",
              {"model", "lambda", "seed", "test_error", "mean_m_omega_test",
               "mean_m_omega_third"},
              rows);

    Mat summary;
    for (const std::string& model : {std::string("enn"), std::string("rbf")}) {
        const Vec err = result.mean_over_seeds(model, &BananaCell::test_error, options.config);
        const Vec ign =
            result.mean_over_seeds(model, &BananaCell::mean_ignorance_test, options.config);
        const Vec third =
            result.mean_over_seeds(model, &BananaCell::mean_ignorance_third, options.config);
        for (std::size_t i = 0; i < options.config.lambda_grid.size(); ++i) {
            summary.push_back({model == "enn" ? 0.0 : 1.0, options.config.lambda_grid[i],
                               err[i], ign[i], third[i]});
        }
    }
    write_csv(dir / "summary.csv",
              {"model", "lambda", "mean_test_error", "mean_m_omega_test", "mean_m_omega_third"},
              summary);

    const std::vector<std::string> grid_header{"x", "y", "m_w1", "m_w2", "m_omega"};
    write_csv(dir / "contour_enn.csv", grid_header, result.enn_grid);
    write_csv(dir / "contour_rbf.csv", grid_header, result.rbf_grid);

    log << "bananas: " << result.cells.size() << " cells -> " << (dir / "cells.csv").string()
        << "\n";
    return 0;
}

int cmd_bba(const BbaOptions& options, std::ostream& log) {
    const auto dir = prepare_out_dir(options.out_dir);
    const Mat rows = load_matrix(options.input);
    std::vector<json> documents;
    documents.reserve(rows.size());

    if (options.method == "shafer") {
        const Frame frame = default_frame(rows.front().size(), options.labels);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const ShaferResult r = shafer_bba(frame, rows[i]);
            json meta{{"method", "shafer"}, {"contour", r.contour.values()}};
            documents.push_back(document_with_meta(r.mass, i, std::move(meta)));
        }
    } else if (options.method == "appriou1" || options.method == "appriou2") {
        if (rows.front().size() != 1) {
            throw InvalidArgumentError(options.method + " expects one likelihood per row");
        }
        const Frame frame = default_frame(2, options.labels.empty()
                                                 ? std::vector<std::string>{"omega", "not_omega"}
                                                 : options.labels);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const MassFunction m =
                options.method == "appriou1"
                    ? appriou1(frame, rows[i][0], options.alpha, options.hbar)
                    : appriou2(frame, rows[i][0], options.alpha, options.hbar);
            documents.push_back(document_with_meta(m, i, json{{"method", options.method}}));
        }
    } else if (options.method == "bfod") {
        if (rows.front().size() != 1) throw InvalidArgumentError("bfod expects one value per row");
        const Frame frame = default_frame(2, options.labels.empty()
                                                 ? std::vector<std::string>{"omega", "not_omega"}
                                                 : options.labels);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            double cf = rows[i][0];
            if (options.cf_generator == "sigmoid") {
                cf = cf_sigmoid(cf, options.cf_midpoint, options.cf_slope);
            } else if (options.cf_generator == "gaussian") {
                cf = cf_one_sided_gaussian(cf, options.cf_midpoint, options.cf_width);
            } else if (options.cf_generator != "none") {
                throw InvalidArgumentError("unknown cf generator '" + options.cf_generator + "'");
            }
            const MassFunction m = bfod(frame, cf, options.intercept_a, options.max_support_b);
            documents.push_back(
                document_with_meta(m, i, json{{"method", "bfod"}, {"cf", cf}}));
        }
    } else if (options.method == "zhu") {
        if (rows.front().size() != 2) {
            throw InvalidArgumentError("zhu expects two membership values per row");
        }
        const Frame frame = default_frame(2, options.labels);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const ZhuResult r = zhu_mass(frame, rows[i][0], rows[i][1], options.epsilon);
            json meta{{"method", "zhu"},
                      {"pair_formed", r.pair_formed},
                      {"pair_mass_raw", r.pair_mass_raw}};
            documents.push_back(document_with_meta(r.mass, i, std::move(meta)));
        }
    } else if (options.method == "ratio-mv") {
        if (rows.front().size() != 2) {
            throw InvalidArgumentError("ratio-mv expects two membership values per row");
        }
        const Frame frame = default_frame(2, options.labels);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const RatioMvResult r =
                ratio_mv(frame, rows[i][0], rows[i][1], options.ratio_alpha, options.ratio_beta);
            json meta{{"method", "ratio-mv"},
                      {"category", to_string(r.category)},
                      {"rmv", std::isfinite(r.rmv) ? json(r.rmv) : json("inf")}};
            documents.push_back(document_with_meta(r.mass, i, std::move(meta)));
        }
    } else if (options.method == "gd") {
        if (rows.front().size() != 1) throw InvalidArgumentError("gd expects one value per row");
        if (options.stats_file.empty()) {
            throw InvalidArgumentError("gd needs --stats with per-cluster mean,variance rows");
        }
        const Mat stat_rows = load_matrix(options.stats_file);
        std::vector<ClusterStats> stats;
        for (const auto& row : stat_rows) {
            if (row.size() < 2) throw InvalidArgumentError("stats rows need mean and variance");
            stats.push_back(ClusterStats{row[0], row[1], row.size() > 2
                                                             ? static_cast<int>(row[2])
                                                             : 1});
        }
        const Frame frame = default_frame(stats.size(), options.labels);
        const auto structure = default_focal_structure(frame.size(), options.pairs);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const MassFunction m = gd_mass(frame, rows[i][0], stats, structure);
            documents.push_back(document_with_meta(m, i, json{{"method", "gd"}}));
        }
    } else {
        throw InvalidArgumentError("unknown bba method '" + options.method + "'");
    }

    write_documents(dir / "masses.jsonl", documents);
    log << "bba " << options.method << ": " << documents.size() << " documents -> "
        << (dir / "masses.jsonl").string() << "\n";
    return 0;
}

int cmd_train(const TrainOptions& options, std::ostream& log) {
    const auto dir = prepare_out_dir(options.out_dir);
    const LabeledData data = load_labeled(options.data);
    const int classes = 1 + *std::max_element(data.labels.begin(), data.labels.end());
    const Frame frame = default_frame(static_cast<std::size_t>(std::max(classes, 2)),
                                      options.labels);

    AnyModel model = EknnModel{frame, {}, {}, EknnConfig{}};
    if (options.classifier == "eknn") {
        EknnConfig config = eknn_default_config(data.features, frame, options.neighbors);
        config.alpha = options.eknn_alpha;
        if (options.neighbors < 1 ||
            static_cast<std::size_t>(options.neighbors) > data.features.size()) {
            throw InvalidArgumentError("neighbor count must lie in [1, training size]");
        }
        model = EknnModel{frame, data.features, data.labels, config};
        log << "eknn: stored " << data.features.size() << " training points\n";
    } else {
        TrainConfig config;
        config.lambda = options.lambda;
        config.epochs = options.epochs;
        config.learning_rate = options.learning_rate;
        config.seed = options.seed;
        if (options.init == "kmeans") {
            config.init = InitScheme::KMeans;
        } else if (options.init == "random") {
            config.init = InitScheme::Random;
        } else {
            throw InvalidArgumentError("init must be kmeans or random");
        }
        TrainReport report;
        if (options.classifier == "enn") {
            model = enn_train(data.features, data.labels, frame, options.prototype_count, config,
                              &report);
        } else if (options.classifier == "rbf") {
            model = rbf_train(data.features, data.labels, frame, options.prototype_count, config,
                              &report);
        } else {
            throw InvalidArgumentError("classifier must be enn, rbf or eknn");
        }
        if (!report.warning.empty()) log << "warning: " << report.warning << "\n";
        log << options.classifier << ": loss " << format_number(report.initial_loss) << " -> "
            << format_number(report.final_loss) << " over " << report.epochs_run << " epochs\n";
    }
    save_model(dir / "model.json", model);
    log << "model -> " << (dir / "model.json").string() << "\n";
    return 0;
}

int cmd_predict(const PredictOptions& options, std::ostream& log) {
    const auto dir = prepare_out_dir(options.out_dir);
    const AnyModel model = load_model(options.model);
    const Mat features = load_matrix(options.data);
    std::vector<json> documents;
    Mat decisions;
    documents.reserve(features.size());
    for (std::size_t i = 0; i < features.size(); ++i) {
        const MassFunction m = predict_any(model, features[i]);
        const int label = decide_pignistic(m);
        documents.push_back(document_with_meta(
            m, i, json{{"decision", model_frame(model).label(label)}}));
        decisions.push_back({static_cast<double>(i), static_cast<double>(label)});
    }
    write_documents(dir / "predictions.jsonl", documents);
    write_csv(dir / "decisions.csv", {"object", "label_index"}, decisions);
    log << "predict: " << features.size() << " objects -> "
        << (dir / "predictions.jsonl").string() << "\n";
    return 0;
}

int cmd_fuse(const FuseOptions& options, std::ostream& log) {
    if (options.sources.empty()) throw InvalidArgumentError("need at least one source");
    const auto dir = prepare_out_dir(options.out_dir);
    std::vector<Mat> sources;
    sources.reserve(options.sources.size());
    for (const auto& path : options.sources) sources.push_back(load_matrix(path));
    const std::size_t classes = sources.front().front().size();
    const std::size_t objects = sources.front().size();
    for (const auto& source : sources) {
        if (source.size() != objects || source.front().size() != classes) {
            throw BadFrameError("sources disagree on object count or class count");
        }
    }
    const Frame frame = default_frame(classes, options.labels);

    std::vector<ReliabilityVector> betas;
    if (!options.fit_labels.empty()) {
        const Mat label_rows = load_matrix(options.fit_labels);
        std::vector<int> labels;
        labels.reserve(label_rows.size());
        for (const auto& row : label_rows) labels.push_back(static_cast<int>(row.front()));
        FitReliabilityConfig config;
        config.epochs = options.epochs;
        FitReliabilityReport report;
        betas = fit_reliability(sources, labels, static_cast<int>(classes), config, &report);
        log << "fit: loss " << format_number(report.initial_loss) << " -> "
            << format_number(report.final_loss) << "\n";
    } else if (!options.beta_table.empty()) {
        const Mat rows = load_matrix(options.beta_table);
        if (rows.size() != sources.size() || rows.front().size() != classes) {
            throw InvalidArgumentError("beta table must be sources x classes");
        }
        for (const auto& row : rows) betas.push_back(row);
    } else {
        betas.assign(sources.size(), ReliabilityVector(classes, 1.0));
    }

    // Reliability report, one row per source, one column per class.
    {
        std::ostringstream beta_csv;
        beta_csv << "source";
        for (int c = 0; c < frame.size(); ++c) beta_csv << ',' << frame.label(c);
        beta_csv << '\n';
        for (std::size_t t = 0; t < sources.size(); ++t) {
            beta_csv << options.sources[t].stem().string();
            for (double b : betas[t]) beta_csv << ',' << format_number(b);
            beta_csv << '\n';
        }
        write_text_file(dir / "reliability.csv", beta_csv.str());
    }

    Mat fused;
    fused.reserve(objects);
    for (std::size_t n = 0; n < objects; ++n) {
        std::vector<ContourFunction> contours;
        contours.reserve(sources.size());
        for (const auto& source : sources) contours.emplace_back(frame, source[n]);
        fused.push_back(fuse_discounted_sources(contours, betas));
    }
    std::vector<std::string> header;
    for (int c = 0; c < frame.size(); ++c) header.push_back(frame.label(c));
    write_csv(dir / "fused.csv", header, fused);
    log << "fuse: " << objects << " objects -> " << (dir / "fused.csv").string() << "\n";
    return 0;
}

int cmd_fcm(const FcmOptions& options, std::ostream& log) {
    const auto dir = prepare_out_dir(options.out_dir);
    const Mat data = load_matrix(options.data);
    FcmConfig config;
    config.clusters = options.clusters;
    config.fuzzifier = options.fuzzifier;
    config.max_iter = options.max_iter;
    config.tol = options.tol;
    config.seed = options.seed;
    const FuzzyPartition part = fcm_fit(data, config);

    write_csv(dir / "centers.csv", {}, part.centers);
    write_csv(dir / "memberships.csv", {}, part.memberships);
    const Frame frame = default_frame(static_cast<std::size_t>(options.clusters), {});
    std::vector<json> documents;
    for (std::size_t i = 0; i < part.memberships.size(); ++i) {
        std::vector<MassFunction::Assignment> entries;
        for (int c = 0; c < options.clusters; ++c) {
            entries.emplace_back(frame.singleton(c),
                                 part.memberships[i][static_cast<std::size_t>(c)]);
        }
        documents.push_back(document_with_meta(MassFunction::normalized_from(frame, entries), i,
                                               json{{"method", "fcm"}}));
    }
    write_documents(dir / "masses.jsonl", documents);
    const double objective =
        part.objective_history.empty() ? 0.0 : part.objective_history.back();
    write_text_file(dir / "metrics.csv",
                    "metric,value\niterations," +
                        std::to_string(part.objective_history.size()) + "\nobjective," +
                        format_number(objective) + "\nconverged," +
                        (part.converged ? std::string("1") : std::string("0")) + "\n");
    log << "fcm: " << (part.converged ? "converged" : "max iterations") << ", objective "
        << format_number(objective) << "\n";
    return 0;
}

int cmd_ecm(const EcmOptions& options, std::ostream& log) {
    const auto dir = prepare_out_dir(options.out_dir);
    const Mat data = load_matrix(options.data);
    EcmConfig config;
    config.clusters = options.clusters;
    config.alpha = options.alpha;
    config.beta = options.beta;
    config.delta = options.delta;
    config.max_iter = options.max_iter;
    config.tol = options.tol;
    config.seed = options.seed;
    const auto structure = default_focal_structure(options.clusters, options.pairs);
    const EcmResult result = ecm_fit(data, config, structure);

    write_csv(dir / "prototypes.csv", {}, result.prototypes);
    {
        // Flat matrix export: one column per focal set plus the empty set.
        std::vector<std::string> header{"empty"};
        for (FocalSet set : structure) header.push_back(result.partition.frame.set_name(set));
        Mat rows;
        rows.reserve(data.size());
        for (std::size_t i = 0; i < data.size(); ++i) {
            Vec row{result.partition.empty_mass[i]};
            row.insert(row.end(), result.partition.masses[i].begin(),
                       result.partition.masses[i].end());
            rows.push_back(std::move(row));
        }
        write_csv(dir / "credal.csv", header, rows);
    }
    std::vector<json> documents;
    Mat decisions;
    for (std::size_t i = 0; i < data.size(); ++i) {
        json meta{{"method", "ecm"}, {"empty_mass", result.partition.empty_mass[i]}};
        try {
            const MassFunction m = credal_to_mass(result.partition, i);
            decisions.push_back({static_cast<double>(i),
                                 static_cast<double>(decide_pignistic(m))});
            documents.push_back(document_with_meta(m, i, std::move(meta)));
        } catch (const AllMassEmptyError&) {
            decisions.push_back({static_cast<double>(i), -1.0});
        }
    }
    write_documents(dir / "masses.jsonl", documents);
    write_csv(dir / "labels.csv", {"object", "cluster_index"}, decisions);
    const double objective =
        result.objective_history.empty() ? 0.0 : result.objective_history.back();
    write_text_file(dir / "metrics.csv",
                    "metric,value\niterations," +
                        std::to_string(result.objective_history.size()) + "\nobjective," +
                        format_number(objective) + "\nconverged," +
                        (result.converged ? std::string("1") : std::string("0")) + "\n");
    if (!result.converged) {
        log << "warning: ecm stopped at max iterations, final objective "
            << format_number(objective) << "\n";
    }
    log << "ecm: -> " << (dir / "credal.csv").string() << "\n";
    return 0;
}

}  // namespace evid
