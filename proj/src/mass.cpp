#include "evid/mass.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace evid {

namespace {

constexpr double kConflictTol = 1e-12;

void check_same_frame(const Frame& a, const Frame& b) {
    if (!(a == b)) throw BadFrameError("operands live on different frames");
}

}  // namespace

MassFunction MassFunction::from_assignments(const Frame& frame,
                                            const std::vector<Assignment>& entries) {
    if (entries.empty()) throw InvalidArgumentError("mass assignment needs at least one entry");
    std::map<FocalSet, double> acc;
    for (const auto& [set, value] : entries) {
        frame.check_set(set);
        if (value < 0.0 || !std::isfinite(value)) {
            throw InvalidArgumentError("masses must be finite and nonnegative");
        }
        if (value == 0.0) continue;
        if (set == kEmptySet) throw EmptyFocalError("positive mass on the empty set");
        acc[set] += value;
    }
    double total = 0.0;
    for (const auto& [set, value] : acc) total += value;
    if (std::abs(total - 1.0) > kMassSumTol) {
        throw SumNotOneError("masses sum to " + std::to_string(total) + ", expected 1");
    }
    if (acc.empty()) throw SumNotOneError("all masses are zero");
    return MassFunction(frame, std::move(acc));
}

MassFunction MassFunction::normalized_from(const Frame& frame,
                                           const std::vector<Assignment>& entries) {
    double total = 0.0;
    for (const auto& [set, value] : entries) {
        if (value < 0.0 || !std::isfinite(value)) {
            throw InvalidArgumentError("masses must be finite and nonnegative");
        }
        if (value > 0.0 && set == kEmptySet) {
            throw EmptyFocalError("positive mass on the empty set");
        }
        total += value;
    }
    if (total <= 0.0) throw SumNotOneError("cannot normalize an all-zero assignment");
    std::vector<Assignment> scaled;
    scaled.reserve(entries.size());
    for (const auto& [set, value] : entries) scaled.emplace_back(set, value / total);
    return from_assignments(frame, scaled);
}

MassFunction MassFunction::vacuous(const Frame& frame) {
    return MassFunction(frame, {{frame.full_set(), 1.0}});
}

double MassFunction::mass(FocalSet a) const {
    frame_.check_set(a);
    auto it = masses_.find(a);
    return it == masses_.end() ? 0.0 : it->second;
}

double MassFunction::belief(FocalSet a) const {
    frame_.check_set(a);
    double total = 0.0;
    for (const auto& [set, value] : masses_) {
        if (is_subset(set, a)) total += value;
    }
    return total;
}

double MassFunction::plausibility(FocalSet a) const {
    frame_.check_set(a);
    double total = 0.0;
    for (const auto& [set, value] : masses_) {
        if ((set & a) != kEmptySet) total += value;
    }
    return total;
}

ContourFunction MassFunction::contour() const {
    std::vector<double> pl(static_cast<std::size_t>(frame_.size()), 0.0);
    for (const auto& [set, value] : masses_) {
        for (int c = 0; c < frame_.size(); ++c) {
            if (set & (FocalSet{1} << c)) pl[static_cast<std::size_t>(c)] += value;
        }
    }
    return ContourFunction(frame_, std::move(pl));
}

std::vector<double> MassFunction::pignistic() const {
    std::vector<double> bet(static_cast<std::size_t>(frame_.size()), 0.0);
    for (const auto& [set, value] : masses_) {
        const double share = value / set_cardinality(set);
        for (int c = 0; c < frame_.size(); ++c) {
            if (set & (FocalSet{1} << c)) bet[static_cast<std::size_t>(c)] += share;
        }
    }
    return bet;
}

bool MassFunction::is_bayesian() const {
    return std::all_of(masses_.begin(), masses_.end(),
                       [](const auto& kv) { return set_cardinality(kv.first) == 1; });
}

bool MassFunction::is_vacuous() const {
    return masses_.size() == 1 && masses_.begin()->first == frame_.full_set();
}

bool MassFunction::is_consonant() const {
    // Focal sets must form a nested chain; sorted by cardinality each set
    // must contain the previous one.
    std::vector<FocalSet> sets;
    sets.reserve(masses_.size());
    for (const auto& [set, value] : masses_) sets.push_back(set);
    std::sort(sets.begin(), sets.end(), [](FocalSet a, FocalSet b) {
        const int ca = set_cardinality(a), cb = set_cardinality(b);
        return ca != cb ? ca < cb : a < b;
    });
    for (std::size_t i = 1; i < sets.size(); ++i) {
        if (!is_subset(sets[i - 1], sets[i])) return false;
    }
    return true;
}

bool MassFunction::operator==(const MassFunction& other) const {
    if (!(frame_ == other.frame_)) return false;
    auto within = [](double a, double b) { return std::abs(a - b) <= kMassSumTol; };
    for (const auto& [set, value] : masses_) {
        if (!within(value, other.mass(set))) return false;
    }
    for (const auto& [set, value] : other.masses_) {
        if (!within(value, mass(set))) return false;
    }
    return true;
}

ContourFunction::ContourFunction(Frame frame, std::vector<double> pl)
    : frame_(std::move(frame)), pl_(std::move(pl)) {
    if (pl_.size() != static_cast<std::size_t>(frame_.size())) {
        throw BadFrameError("contour length does not match frame size");
    }
    for (double v : pl_) {
        if (!(v >= 0.0 && v <= 1.0 + 1e-12)) {
            throw InvalidArgumentError("contour entries must lie in [0,1]");
        }
    }
}

SimpleMass::SimpleMass(Frame frame, FocalSet focal, double weight)
    : frame_(std::move(frame)), focal_(focal), weight_(weight) {
    frame_.check_set(focal_);
    if (focal_ == kEmptySet || focal_ == frame_.full_set()) {
        throw InvalidArgumentError("simple mass needs a proper nonempty focal set");
    }
    if (!(weight_ >= 0.0) || !std::isfinite(weight_)) {
        throw InvalidArgumentError("weight of evidence must be finite and nonnegative");
    }
}

SimpleMass SimpleMass::from_support(Frame frame, FocalSet focal, double support) {
    if (!(support >= 0.0 && support < 1.0)) {
        throw InvalidArgumentError("degree of support must lie in [0,1)");
    }
    return SimpleMass(std::move(frame), focal, -std::log1p(-support));
}

double SimpleMass::support() const { return -std::expm1(-weight_); }

MassFunction SimpleMass::expand() const {
    const double s = support();
    if (s == 0.0) return MassFunction::vacuous(frame_);
    return MassFunction::from_assignments(frame_, {{focal_, s}, {frame_.full_set(), 1.0 - s}});
}

std::pair<MassFunction, double> combine_dempster(const MassFunction& m1, const MassFunction& m2) {
    check_same_frame(m1.frame(), m2.frame());
    // Gather the product terms per output set and sum them in ascending value
    // order. The term multiset is invariant under argument exchange, so the
    // result is exactly commutative.
    std::map<FocalSet, std::vector<double>> terms;
    std::vector<double> conflict_terms;
    for (const auto& [b, mb] : m1.focal_sets()) {
        for (const auto& [d, md] : m2.focal_sets()) {
            const FocalSet inter = b & d;
            const double product = mb * md;
            if (inter == kEmptySet) {
                conflict_terms.push_back(product);
            } else {
                terms[inter].push_back(product);
            }
        }
    }
    std::sort(conflict_terms.begin(), conflict_terms.end());
    const double kappa = std::accumulate(conflict_terms.begin(), conflict_terms.end(), 0.0);
    if (kappa >= 1.0 - kConflictTol) {
        throw TotalConflictError("total conflict: kappa = " + std::to_string(kappa));
    }
    std::map<FocalSet, double> combined;
    for (auto& [set, values] : terms) {
        std::sort(values.begin(), values.end());
        const double sum = std::accumulate(values.begin(), values.end(), 0.0);
        if (sum > 0.0) combined[set] = sum / (1.0 - kappa);
    }
    return {MassFunction(m1.frame(), std::move(combined)), kappa};
}

std::variant<SimpleMass, MassFunction> combine_simple(const SimpleMass& s1, const SimpleMass& s2) {
    check_same_frame(s1.frame(), s2.frame());
    if (s1.focal() == s2.focal()) {
        return SimpleMass(s1.frame(), s1.focal(), s1.weight() + s2.weight());
    }
    return combine_dempster(s1.expand(), s2.expand()).first;
}

ContourFunction combine_contour(const ContourFunction& pl1, const ContourFunction& pl2,
                                double kappa) {
    check_same_frame(pl1.frame(), pl2.frame());
    if (kappa >= 1.0) throw TotalConflictError("contour combination undefined for kappa >= 1");
    std::vector<double> out(pl1.values().size());
    for (std::size_t c = 0; c < out.size(); ++c) {
        out[c] = pl1.values()[c] * pl2.values()[c] / (1.0 - kappa);
    }
    return ContourFunction(pl1.frame(), std::move(out));
}

MassFunction discount(const MassFunction& m, double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw InvalidArgumentError("reliability must lie in [0,1]");
    }
    if (beta == 1.0) return m;
    if (beta == 0.0) return MassFunction::vacuous(m.frame());
    std::map<FocalSet, double> out;
    for (const auto& [set, value] : m.focal_sets()) out[set] = beta * value;
    out[m.frame().full_set()] += 1.0 - beta;
    return MassFunction(m.frame(), std::move(out));
}

}  // namespace evid
