#pragma once

#include <map>
#include <utility>
#include <variant>
#include <vector>

#include "evid/frame.hpp"

namespace evid {

class ContourFunction;

inline constexpr double kMassSumTol = 1e-9;

/// Normalized map from focal subsets of the frame to masses in (0,1].
/// Invariants: every stored mass is strictly positive, the masses sum to one
/// within 1e-9, and the empty set carries no mass. Instances are immutable
/// values after construction; all operations are pure.
class MassFunction {
public:
    using Assignment = std::pair<FocalSet, double>;

    /// Strict constructor: rejects inputs whose masses do not already sum to
    /// one (SumNotOneError), assign to the empty set (EmptyFocalError) or use
    /// out-of-range members (BadFrameError). Duplicate focal sets are summed,
    /// zero entries dropped, negatives rejected.
    static MassFunction from_assignments(const Frame& frame, const std::vector<Assignment>& entries);

    /// Renormalizing constructor for callers that want rescaling to sum one.
    static MassFunction normalized_from(const Frame& frame, const std::vector<Assignment>& entries);

    static MassFunction vacuous(const Frame& frame);

    const Frame& frame() const { return frame_; }
    const std::map<FocalSet, double>& focal_sets() const { return masses_; }

    /// Mass of a subset; zero when the subset is not focal.
    double mass(FocalSet a) const;

    /// Bel(A): total mass committed to subsets of A.
    double belief(FocalSet a) const;

    /// Pl(A): total mass of focal sets intersecting A.
    double plausibility(FocalSet a) const;

    /// Plausibility restricted to singletons.
    ContourFunction contour() const;

    /// Pignistic probability: every focal mass split equally over its members.
    std::vector<double> pignistic() const;

    bool is_bayesian() const;
    bool is_vacuous() const;
    bool is_consonant() const;

    /// Tolerant comparison: per-focal-set masses within 1e-9, same frame.
    bool operator==(const MassFunction& other) const;

private:
    MassFunction(Frame frame, std::map<FocalSet, double> masses)
        : frame_(std::move(frame)), masses_(std::move(masses)) {}

    Frame frame_;
    std::map<FocalSet, double> masses_;

    friend std::pair<MassFunction, double> combine_dempster(const MassFunction&, const MassFunction&);
    friend MassFunction discount(const MassFunction&, double);
};

/// Contour function: per-singleton plausibilities over a frame.
class ContourFunction {
public:
    ContourFunction(Frame frame, std::vector<double> pl);

    const Frame& frame() const { return frame_; }
    const std::vector<double>& values() const { return pl_; }
    double operator[](int c) const { return pl_[static_cast<std::size_t>(c)]; }

private:
    Frame frame_;
    std::vector<double> pl_;
};

/// Simple mass function A^w: all mass split between a proper nonempty subset
/// and the frame. w >= 0 is the weight of evidence; the degree of support is
/// s = 1 - exp(-w).
class SimpleMass {
public:
    SimpleMass(Frame frame, FocalSet focal, double weight);

    static SimpleMass from_support(Frame frame, FocalSet focal, double support);

    const Frame& frame() const { return frame_; }
    FocalSet focal() const { return focal_; }
    double weight() const { return weight_; }
    double support() const;

    /// Expansion into a two-focal-set mass function {A: s, Omega: 1-s}.
    MassFunction expand() const;

private:
    Frame frame_;
    FocalSet focal_;
    double weight_;
};

/// Dempster's rule: normalized orthogonal sum plus the degree of conflict
/// kappa. Commutative with exact floating-point equality (contributions are
/// accumulated in a canonical order). Throws TotalConflictError when
/// kappa >= 1 - 1e-12.
std::pair<MassFunction, double> combine_dempster(const MassFunction& m1, const MassFunction& m2);

/// Combination of two simple masses: equal focal sets add their weights of
/// evidence, distinct focal sets fall back to the general rule on the
/// expanded mass functions.
std::variant<SimpleMass, MassFunction> combine_simple(const SimpleMass& s1, const SimpleMass& s2);

/// Contour function of the orthogonal sum: elementwise product rescaled by
/// 1 - kappa.
ContourFunction combine_contour(const ContourFunction& pl1, const ContourFunction& pl2, double kappa);

/// Classical discounting by reliability beta in [0,1]: beta*m + (1-beta)*vacuous.
MassFunction discount(const MassFunction& m, double beta);

}  // namespace evid
