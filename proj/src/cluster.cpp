#include "evid/cluster.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace evid {

namespace {

constexpr double kTinySquaredDistance = 1e-24;

Mat kmeans_pp_centers(const Mat& data, int k, Rng& rng) {
    const std::size_t n = data.size();
    Mat centers;
    centers.reserve(static_cast<std::size_t>(k));
    std::vector<char> chosen(n, 0);
    std::size_t first = rng.index(n);
    centers.push_back(data[first]);
    chosen[first] = 1;
    Vec dist2(n);
    while (centers.size() < static_cast<std::size_t>(k)) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double nearest = std::numeric_limits<double>::infinity();
            for (const auto& c : centers) nearest = std::min(nearest, squared_distance(data[i], c));
            dist2[i] = chosen[i] ? 0.0 : nearest;
            total += dist2[i];
        }
        std::size_t pick = n;
        if (total > 0.0) {
            double target = rng.uniform() * total;
            for (std::size_t i = 0; i < n; ++i) {
                target -= dist2[i];
                if (target <= 0.0 && dist2[i] > 0.0) {
                    pick = i;
                    break;
                }
            }
        }
        if (pick == n) {
            // All remaining distances vanished (duplicates or k == n): take
            // the first unchosen point.
            for (std::size_t i = 0; i < n; ++i) {
                if (!chosen[i]) {
                    pick = i;
                    break;
                }
            }
        }
        if (pick == n) pick = rng.index(n);
        centers.push_back(data[pick]);
        chosen[pick] = 1;
    }
    return centers;
}

Frame cluster_frame(int clusters) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(clusters));
    for (int c = 1; c <= clusters; ++c) labels.push_back("c" + std::to_string(c));
    return Frame(labels);
}

void check_data(const Mat& data, int k) {
    if (data.empty()) throw InvalidArgumentError("no data rows");
    if (k < 1) throw InvalidArgumentError("cluster count must be positive");
    if (static_cast<std::size_t>(k) > data.size()) {
        throw InvalidArgumentError("more clusters than data points");
    }
    for (const auto& row : data) {
        if (row.size() != data.front().size()) {
            throw InvalidArgumentError("ragged data matrix");
        }
    }
}

}  // namespace

KMeansResult kmeans_fit(const Mat& data, int k, std::uint64_t seed, int max_iter, double tol) {
    check_data(data, k);
    Rng rng(seed);
    KMeansResult result;
    result.centers = kmeans_pp_centers(data, k, rng);
    result.assignment.assign(data.size(), 0);
    for (int iter = 0; iter < max_iter; ++iter) {
        result.iterations = iter + 1;
        for (std::size_t i = 0; i < data.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            int arg = 0;
            for (int j = 0; j < k; ++j) {
                const double d2 = squared_distance(data[i], result.centers[static_cast<std::size_t>(j)]);
                if (d2 < best) {
                    best = d2;
                    arg = j;
                }
            }
            result.assignment[i] = arg;
        }
        double shift = 0.0;
        for (int j = 0; j < k; ++j) {
            Vec sum(data.front().size(), 0.0);
            long count = 0;
            for (std::size_t i = 0; i < data.size(); ++i) {
                if (result.assignment[i] != j) continue;
                for (std::size_t d = 0; d < sum.size(); ++d) sum[d] += data[i][d];
                ++count;
            }
            if (count == 0) continue;  // cluster kept at its previous center
            for (double& v : sum) v /= static_cast<double>(count);
            shift = std::max(shift, squared_distance(sum, result.centers[static_cast<std::size_t>(j)]));
            result.centers[static_cast<std::size_t>(j)] = std::move(sum);
        }
        if (shift < tol) break;
    }
    return result;
}

Vec fcm_memberships(const Vec& point, const Mat& centers, double fuzzifier) {
    if (fuzzifier <= 1.0) throw InvalidArgumentError("fuzzifier must exceed 1");
    const std::size_t k = centers.size();
    Vec d2(k);
    std::vector<std::size_t> coincident;
    for (std::size_t j = 0; j < k; ++j) {
        d2[j] = squared_distance(point, centers[j]);
        if (d2[j] < kTinySquaredDistance) coincident.push_back(j);
    }
    Vec w(k, 0.0);
    if (!coincident.empty()) {
        for (std::size_t j : coincident) w[j] = 1.0 / static_cast<double>(coincident.size());
        return w;
    }
    const double exponent = 1.0 / (fuzzifier - 1.0);
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        w[j] = std::pow(1.0 / d2[j], exponent);
        total += w[j];
    }
    for (double& v : w) v /= total;
    return w;
}

FuzzyPartition fcm_fit(const Mat& data, const FcmConfig& config) {
    check_data(data, config.clusters);
    if (config.fuzzifier <= 1.0) throw InvalidArgumentError("fuzzifier must exceed 1");
    Rng rng(config.seed);
    FuzzyPartition part;
    part.centers = kmeans_pp_centers(data, config.clusters, rng);
    part.memberships.assign(data.size(), Vec(static_cast<std::size_t>(config.clusters), 0.0));

    for (int iter = 0; iter < config.max_iter; ++iter) {
        double objective = 0.0;
        for (std::size_t i = 0; i < data.size(); ++i) {
            part.memberships[i] = fcm_memberships(data[i], part.centers, config.fuzzifier);
            for (int j = 0; j < config.clusters; ++j) {
                const auto ju = static_cast<std::size_t>(j);
                objective += std::pow(part.memberships[i][ju], config.fuzzifier) *
                             squared_distance(data[i], part.centers[ju]);
            }
        }
        assert(part.objective_history.empty() ||
               objective <= part.objective_history.back() + 1e-9);
        part.objective_history.push_back(objective);

        double shift = 0.0;
        for (int j = 0; j < config.clusters; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            Vec numer(data.front().size(), 0.0);
            double denom = 0.0;
            for (std::size_t i = 0; i < data.size(); ++i) {
                const double wm = std::pow(part.memberships[i][ju], config.fuzzifier);
                for (std::size_t d = 0; d < numer.size(); ++d) numer[d] += wm * data[i][d];
                denom += wm;
            }
            if (denom <= 0.0) continue;
            for (double& v : numer) v /= denom;
            shift = std::max(shift, std::sqrt(squared_distance(numer, part.centers[ju])));
            part.centers[ju] = std::move(numer);
        }
        if (shift < config.tol) {
            part.converged = true;
            break;
        }
    }
    // Memberships consistent with the final centers.
    for (std::size_t i = 0; i < data.size(); ++i) {
        part.memberships[i] = fcm_memberships(data[i], part.centers, config.fuzzifier);
    }
    return part;
}

MassFunction credal_to_mass(const CredalPartition& partition, std::size_t object) {
    if (object >= partition.masses.size()) throw InvalidArgumentError("object index out of range");
    if (partition.empty_mass[object] >= 1.0 - kMassSumTol) {
        throw AllMassEmptyError("object " + std::to_string(object) +
                                " places all mass on the empty set");
    }
    std::vector<MassFunction::Assignment> entries;
    for (std::size_t j = 0; j < partition.focal_structure.size(); ++j) {
        entries.emplace_back(partition.focal_structure[j], partition.masses[object][j]);
    }
    return MassFunction::normalized_from(partition.frame, entries);
}

std::vector<FocalSet> default_focal_structure(int clusters, bool with_pairs) {
    std::set<FocalSet> seen;
    std::vector<FocalSet> structure;
    auto add = [&](FocalSet s) {
        if (seen.insert(s).second) structure.push_back(s);
    };
    for (int c = 0; c < clusters; ++c) add(FocalSet{1} << c);
    if (with_pairs) {
        for (int a = 0; a < clusters; ++a) {
            for (int b = a + 1; b < clusters; ++b) add((FocalSet{1} << a) | (FocalSet{1} << b));
        }
    }
    add((FocalSet{1} << clusters) - 1);
    return structure;
}

std::pair<Vec, double> ecm_masses_for_point(const Vec& point, const Mat& prototypes,
                                            const std::vector<FocalSet>& focal_structure,
                                            const EcmConfig& config) {
    const std::size_t f = focal_structure.size();
    Vec d2(f);
    Vec card(f);
    for (std::size_t j = 0; j < f; ++j) {
        Mat members;
        for (int c = 0; c < static_cast<int>(prototypes.size()); ++c) {
            if (focal_structure[j] & (FocalSet{1} << c)) {
                members.push_back(prototypes[static_cast<std::size_t>(c)]);
            }
        }
        card[j] = static_cast<double>(members.size());
        d2[j] = squared_distance(point, mean_row(members));
    }
    const double exponent = 1.0 / (config.beta - 1.0);
    Vec row(f, 0.0);
    std::vector<std::size_t> coincident;
    for (std::size_t j = 0; j < f; ++j) {
        if (d2[j] < kTinySquaredDistance) coincident.push_back(j);
    }
    if (!coincident.empty()) {
        // Zero distance dominates; split by the cardinality weights only.
        double total = 0.0;
        for (std::size_t j : coincident) total += std::pow(card[j], -config.alpha * exponent);
        for (std::size_t j : coincident) {
            row[j] = std::pow(card[j], -config.alpha * exponent) / total;
        }
        return {row, 0.0};
    }
    double total = std::pow(config.delta * config.delta, -exponent);
    for (std::size_t j = 0; j < f; ++j) {
        row[j] = std::pow(std::pow(card[j], config.alpha) * d2[j], -exponent);
        total += row[j];
    }
    double assigned = 0.0;
    for (std::size_t j = 0; j < f; ++j) {
        row[j] /= total;
        assigned += row[j];
    }
    return {row, 1.0 - assigned};
}

EcmResult ecm_fit(const Mat& data, const EcmConfig& config,
                  const std::vector<FocalSet>& focal_structure) {
    check_data(data, config.clusters);
    if (config.beta <= 1.0) throw InvalidArgumentError("mass exponent beta must exceed 1");
    if (config.delta <= 0.0) throw InvalidArgumentError("outlier distance delta must be positive");
    if (focal_structure.empty()) throw InvalidArgumentError("empty focal structure");
    const Frame frame = cluster_frame(config.clusters);
    for (FocalSet set : focal_structure) {
        frame.check_set(set);
        if (set == kEmptySet) throw EmptyFocalError("focal structure contains the empty set");
    }

    const std::size_t n = data.size();
    const std::size_t f = focal_structure.size();
    const std::size_t dim = data.front().size();
    const auto clusters = static_cast<std::size_t>(config.clusters);

    Rng rng(config.seed);
    EcmResult result{CredalPartition{frame, focal_structure, Mat(n, Vec(f, 0.0)), Vec(n, 0.0)},
                     kmeans_pp_centers(data, config.clusters, rng),
                     {},
                     false};

    for (int iter = 0; iter < config.max_iter; ++iter) {
        double objective = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            auto [row, empty] =
                ecm_masses_for_point(data[i], result.prototypes, focal_structure, config);
            result.partition.masses[i] = std::move(row);
            result.partition.empty_mass[i] = empty;
            objective += config.delta * config.delta * std::pow(empty, config.beta);
        }
        for (std::size_t j = 0; j < f; ++j) {
            Mat members;
            for (std::size_t c = 0; c < clusters; ++c) {
                if (focal_structure[j] & (FocalSet{1} << c)) members.push_back(result.prototypes[c]);
            }
            const Vec center = mean_row(members);
            const double cardinality = static_cast<double>(members.size());
            for (std::size_t i = 0; i < n; ++i) {
                objective += std::pow(cardinality, config.alpha) *
                             std::pow(result.partition.masses[i][j], config.beta) *
                             squared_distance(data[i], center);
            }
        }
        result.objective_history.push_back(objective);

        // Restart prototypes of clusters that lost all their mass.
        bool reseeded = false;
        for (std::size_t c = 0; c < clusters; ++c) {
            double weight = 0.0;
            for (std::size_t j = 0; j < f; ++j) {
                if (!(focal_structure[j] & (FocalSet{1} << c))) continue;
                for (std::size_t i = 0; i < n; ++i) {
                    weight += std::pow(result.partition.masses[i][j], config.beta);
                }
            }
            if (weight < 1e-12) {
                result.prototypes[c] = data[rng.index(n)];
                reseeded = true;
            }
        }
        if (reseeded) continue;

        // Prototype solve: normal equations of the quadratic objective.
        Mat h(clusters, Vec(clusters, 0.0));
        Mat b(clusters, Vec(dim, 0.0));
        for (std::size_t j = 0; j < f; ++j) {
            const double cardinality = static_cast<double>(set_cardinality(focal_structure[j]));
            double weight_sum = 0.0;
            Vec weighted_x(dim, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                const double w = std::pow(result.partition.masses[i][j], config.beta);
                weight_sum += w;
                for (std::size_t d = 0; d < dim; ++d) weighted_x[d] += w * data[i][d];
            }
            const double h_factor = std::pow(cardinality, config.alpha - 2.0);
            const double b_factor = std::pow(cardinality, config.alpha - 1.0);
            for (std::size_t l = 0; l < clusters; ++l) {
                if (!(focal_structure[j] & (FocalSet{1} << l))) continue;
                for (std::size_t k = 0; k < clusters; ++k) {
                    if (!(focal_structure[j] & (FocalSet{1} << k))) continue;
                    h[l][k] += h_factor * weight_sum;
                }
                for (std::size_t d = 0; d < dim; ++d) b[l][d] += b_factor * weighted_x[d];
            }
        }
        Mat updated;
        try {
            updated = solve_linear(std::move(h), std::move(b));
        } catch (const InvalidArgumentError&) {
            break;  // singular system: keep current prototypes
        }
        double shift = 0.0;
        for (std::size_t c = 0; c < clusters; ++c) {
            shift = std::max(shift, std::sqrt(squared_distance(updated[c], result.prototypes[c])));
        }
        result.prototypes = std::move(updated);
        if (shift < config.tol) {
            result.converged = true;
            break;
        }
    }
    // Masses consistent with the final prototypes.
    for (std::size_t i = 0; i < n; ++i) {
        auto [row, empty] =
            ecm_masses_for_point(data[i], result.prototypes, focal_structure, config);
        result.partition.masses[i] = std::move(row);
        result.partition.empty_mass[i] = empty;
    }
    return result;
}

}  // namespace evid
