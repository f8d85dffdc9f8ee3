#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "evid/commands.hpp"
#include "evid/interchange.hpp"
#include "evid/io.hpp"
#include "evid/rng.hpp"

using namespace evid;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "evid_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
    std::ofstream out(path);
    for (const auto& line : lines) out << line << '\n';
}

fs::path blobs_csv(const fs::path& dir, int per_class, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::string> lines;
    for (int c = 0; c < 2; ++c) {
        for (int i = 0; i < per_class; ++i) {
            std::ostringstream row;
            row << format_number(c * 6.0 + rng.normal()) << ','
                << format_number(rng.normal()) << ',' << c;
            lines.push_back(row.str());
        }
    }
    const fs::path path = dir / "blobs.csv";
    write_lines(path, lines);
    return path;
}

std::vector<json> read_documents(const fs::path& path) {
    std::istringstream in(read_text_file(path));
    std::vector<json> documents;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) documents.push_back(json::parse(line));
    }
    return documents;
}

bool same_bytes(const fs::path& a, const fs::path& b) {
    return read_text_file(a) == read_text_file(b);
}

}  // namespace

TEST_CASE("demo output lists the exact fractions") {
    std::ostringstream out;
    CHECK(cmd_demo_dempster(out) == 0);
    const std::string text = out.str();
    CHECK(text.find("33/100") != std::string::npos);
    CHECK(text.find("19/67") != std::string::npos);
    CHECK(text.find("33/67") != std::string::npos);
    CHECK(text.find("5/67") != std::string::npos);

    std::ostringstream again;
    cmd_demo_dempster(again);
    CHECK(out.str() == again.str());
}

TEST_CASE("bba command emits parseable documents with method metadata") {
    const fs::path dir = fresh_dir("bba");
    write_lines(dir / "mv.csv", {"0.18,0.81", "0.25,0.65", "0.4,0.5"});

    BbaOptions options;
    options.method = "ratio-mv";
    options.input = dir / "mv.csv";
    options.out_dir = dir / "out";
    std::ostringstream log;
    CHECK(cmd_bba(options, log) == 0);

    const auto documents = read_documents(dir / "out" / "masses.jsonl");
    REQUIRE(documents.size() == 3);
    CHECK(documents[0].at("meta").at("category") == "NU");
    CHECK(documents[1].at("meta").at("category") == "SU");
    CHECK(documents[2].at("meta").at("category") == "PU");
    for (const auto& doc : documents) {
        CHECK_NOTHROW(mass_from_document(doc));  // passes core invariants
    }
}

TEST_CASE("bba zhu records the raw pair mass") {
    const fs::path dir = fresh_dir("zhu");
    write_lines(dir / "mv.csv", {"0.5,0.5", "0.9,0.1"});
    BbaOptions options;
    options.method = "zhu";
    options.input = dir / "mv.csv";
    options.out_dir = dir / "out";
    std::ostringstream log;
    CHECK(cmd_bba(options, log) == 0);
    const auto documents = read_documents(dir / "out" / "masses.jsonl");
    CHECK(documents[0].at("meta").at("pair_mass_raw").get<double>() ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(documents[1].at("meta").at("pair_formed") == false);
}

TEST_CASE("bba shafer turns a uniform row into the vacuous document") {
    const fs::path dir = fresh_dir("shafer");
    write_lines(dir / "l.csv", {"0.3,0.3,0.3"});
    BbaOptions options;
    options.method = "shafer";
    options.input = dir / "l.csv";
    options.out_dir = dir / "out";
    std::ostringstream log;
    CHECK(cmd_bba(options, log) == 0);
    const auto documents = read_documents(dir / "out" / "masses.jsonl");
    CHECK(mass_from_document(documents.at(0)).is_vacuous());

    options.method = "unknown";
    CHECK_THROWS_AS(cmd_bba(options, log), InvalidArgumentError);
}

TEST_CASE("train and predict round trip at full accuracy") {
    for (const std::string classifier : {"enn", "rbf", "eknn"}) {
        const fs::path dir = fresh_dir("train_" + classifier);
        const fs::path data = blobs_csv(dir, 25, 7);

        TrainOptions train;
        train.classifier = classifier;
        train.data = data;
        train.out_dir = dir / "model";
        train.seed = 3;
        train.prototype_count = 2;
        train.epochs = 300;
        std::ostringstream log;
        CHECK(cmd_train(train, log) == 0);

        // strip the label column for prediction input
        const LabeledData labeled = load_labeled(data);
        write_csv(dir / "features.csv", {}, labeled.features);

        PredictOptions predict;
        predict.model = dir / "model" / "model.json";
        predict.data = dir / "features.csv";
        predict.out_dir = dir / "pred";
        CHECK(cmd_predict(predict, log) == 0);

        const Mat decisions = load_matrix(dir / "pred" / "decisions.csv");
        REQUIRE(decisions.size() == labeled.features.size());
        for (std::size_t i = 0; i < decisions.size(); ++i) {
            CHECK(static_cast<int>(decisions[i][1]) == labeled.labels[i]);
        }
        for (const auto& doc : read_documents(dir / "pred" / "predictions.jsonl")) {
            CHECK_NOTHROW(mass_from_document(doc));
        }
    }
}

TEST_CASE("predict rejects mismatched feature dimensions") {
    const fs::path dir = fresh_dir("badpredict");
    const fs::path data = blobs_csv(dir, 10, 11);
    TrainOptions train;
    train.classifier = "eknn";
    train.data = data;
    train.out_dir = dir / "model";
    train.neighbors = 3;
    std::ostringstream log;
    CHECK(cmd_train(train, log) == 0);

    write_lines(dir / "wide.csv", {"0.1,0.2,0.3"});
    PredictOptions predict;
    predict.model = dir / "model" / "model.json";
    predict.data = dir / "wide.csv";
    predict.out_dir = dir / "pred";
    CHECK_THROWS_AS(cmd_predict(predict, log), InvalidArgumentError);
}

TEST_CASE("eknn training rejects more neighbors than points") {
    const fs::path dir = fresh_dir("badk");
    const fs::path data = blobs_csv(dir, 3, 13);
    TrainOptions train;
    train.classifier = "eknn";
    train.data = data;
    train.out_dir = dir / "model";
    train.neighbors = 100;
    std::ostringstream log;
    CHECK_THROWS_AS(cmd_train(train, log), InvalidArgumentError);
}

TEST_CASE("fuse: a zero-reliability source never changes the result") {
    const fs::path dir = fresh_dir("fuse_zero");
    write_lines(dir / "good.csv", {"0.9,0.2", "0.3,0.8", "0.7,0.5"});
    write_lines(dir / "junk.csv", {"0.1,0.9", "0.9,0.1", "0.2,0.2"});
    write_lines(dir / "beta_two.csv", {"1,1", "0,0"});
    write_lines(dir / "beta_one.csv", {"1,1"});

    FuseOptions two;
    two.sources = {dir / "good.csv", dir / "junk.csv"};
    two.beta_table = dir / "beta_two.csv";
    two.out_dir = dir / "two";
    std::ostringstream log;
    CHECK(cmd_fuse(two, log) == 0);

    FuseOptions one;
    one.sources = {dir / "good.csv"};
    one.beta_table = dir / "beta_one.csv";
    one.out_dir = dir / "one";
    CHECK(cmd_fuse(one, log) == 0);

    const Mat fused_two = load_matrix(dir / "two" / "fused.csv");
    const Mat fused_one = load_matrix(dir / "one" / "fused.csv");
    REQUIRE(fused_two.size() == fused_one.size());
    for (std::size_t i = 0; i < fused_two.size(); ++i) {
        for (std::size_t c = 0; c < fused_two[i].size(); ++c) {
            CHECK(fused_two[i][c] == doctest::Approx(fused_one[i][c]).epsilon(1e-12));
        }
    }
}

TEST_CASE("fuse --fit exposes the corrupted source in the beta table") {
    const fs::path dir = fresh_dir("fuse_fit");
    Rng rng(17);
    std::vector<std::string> good, bad, labels;
    for (int n = 0; n < 80; ++n) {
        const int y = static_cast<int>(rng.index(2));
        labels.push_back(std::to_string(y));
        auto row = [](double a, double b) {
            return format_number(a) + "," + format_number(b);
        };
        good.push_back(y == 0 ? row(0.95, 0.1) : row(0.1, 0.95));
        bad.push_back(y == 0 ? row(0.1, 0.95) : row(0.95, 0.1));  // labels swapped
    }
    write_lines(dir / "good.csv", good);
    write_lines(dir / "bad.csv", bad);
    write_lines(dir / "labels.csv", labels);

    FuseOptions options;
    options.sources = {dir / "good.csv", dir / "bad.csv"};
    options.fit_labels = dir / "labels.csv";
    options.out_dir = dir / "out";
    std::ostringstream log;
    CHECK(cmd_fuse(options, log) == 0);

    // reliability.csv: header then one row per source, one column per class
    std::istringstream table(read_text_file(dir / "out" / "reliability.csv"));
    std::string header, good_row, bad_row;
    std::getline(table, header);
    std::getline(table, good_row);
    std::getline(table, bad_row);
    CHECK(header == "source,w1,w2");
    CHECK(good_row.rfind("good,", 0) == 0);
    CHECK(bad_row.rfind("bad,", 0) == 0);

    auto parse_betas = [](const std::string& line) {
        Vec betas;
        std::istringstream fields(line);
        std::string field;
        std::getline(fields, field, ',');  // source name
        while (std::getline(fields, field, ',')) betas.push_back(std::stod(field));
        return betas;
    };
    for (double beta : parse_betas(good_row)) CHECK(beta >= 0.9);
    for (double beta : parse_betas(bad_row)) CHECK(beta <= 0.1);
}

TEST_CASE("fcm command: single cluster memberships are all one") {
    const fs::path dir = fresh_dir("fcm");
    write_lines(dir / "data.csv", {"0", "1", "2", "3"});
    FcmOptions options;
    options.data = dir / "data.csv";
    options.out_dir = dir / "out";
    options.clusters = 1;
    std::ostringstream log;
    CHECK(cmd_fcm(options, log) == 0);
    for (const auto& row : load_matrix(dir / "out" / "memberships.csv")) {
        CHECK(row[0] == 1.0);
    }
}

TEST_CASE("ecm command recovers blob structure") {
    const fs::path dir = fresh_dir("ecm");
    Rng rng(23);
    std::vector<std::string> lines;
    std::vector<int> truth;
    const double centers[3][2] = {{0.0, 0.0}, {12.0, 0.0}, {6.0, 10.0}};
    for (int b = 0; b < 3; ++b) {
        for (int i = 0; i < 30; ++i) {
            lines.push_back(format_number(centers[b][0] + 0.6 * rng.normal()) + "," +
                            format_number(centers[b][1] + 0.6 * rng.normal()));
            truth.push_back(b);
        }
    }
    write_lines(dir / "data.csv", lines);
    EcmOptions options;
    options.data = dir / "data.csv";
    options.out_dir = dir / "out";
    options.clusters = 3;
    options.seed = 5;
    std::ostringstream log;
    CHECK(cmd_ecm(options, log) == 0);

    const Mat credal = load_matrix(dir / "out" / "credal.csv");
    REQUIRE(credal.size() == truth.size());
    for (const auto& row : credal) {
        double total = 0.0;
        for (double v : row) total += v;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
    for (const auto& doc : read_documents(dir / "out" / "masses.jsonl")) {
        CHECK_NOTHROW(mass_from_document(doc));
    }
}

TEST_CASE("seeded commands are byte-reproducible") {
    const fs::path dir = fresh_dir("determinism");

    // bananas (reduced config), fcm, ecm, train: run twice, compare bytes
    BananasOptions bananas;
    bananas.config.lambda_grid = {1e-3};
    bananas.config.seeds = {1};
    bananas.config.epochs = 60;
    bananas.config.grid_resolution = 12;
    std::ostringstream log;
    for (const char* run : {"a", "b"}) {
        bananas.out_dir = dir / "bananas" / run;
        CHECK(cmd_bananas(bananas, log) == 0);
    }
    for (const char* file : {"cells.csv", "summary.csv", "contour_enn.csv", "contour_rbf.csv"}) {
        CHECK(same_bytes(dir / "bananas" / "a" / file, dir / "bananas" / "b" / file));
    }

    const fs::path data = blobs_csv(dir, 20, 29);
    TrainOptions train;
    train.classifier = "rbf";
    train.data = data;
    train.seed = 9;
    train.epochs = 120;
    train.prototype_count = 2;
    for (const char* run : {"a", "b"}) {
        train.out_dir = dir / "train" / run;
        CHECK(cmd_train(train, log) == 0);
    }
    CHECK(same_bytes(dir / "train" / "a" / "model.json", dir / "train" / "b" / "model.json"));

    EcmOptions ecm;
    ecm.data = data;  // label column read as an extra feature, harmless here
    ecm.clusters = 2;
    ecm.seed = 31;
    for (const char* run : {"a", "b"}) {
        ecm.out_dir = dir / "ecm" / run;
        CHECK(cmd_ecm(ecm, log) == 0);
    }
    CHECK(same_bytes(dir / "ecm" / "a" / "credal.csv", dir / "ecm" / "b" / "credal.csv"));

    FcmOptions fcm;
    fcm.data = data;
    fcm.clusters = 2;
    fcm.seed = 37;
    for (const char* run : {"a", "b"}) {
        fcm.out_dir = dir / "fcm" / run;
        CHECK(cmd_fcm(fcm, log) == 0);
    }
    CHECK(same_bytes(dir / "fcm" / "a" / "memberships.csv", dir / "fcm" / "b" / "memberships.csv"));
}
