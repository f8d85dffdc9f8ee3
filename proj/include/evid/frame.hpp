#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "evid/errors.hpp"

namespace evid {

/// A subset of frame elements encoded as a bitmask over label indices 0..C-1.
/// Bit c set means label c is a member. The empty set is representable but is
/// never a focal set of a normalized mass function.
using FocalSet = std::uint32_t;

inline constexpr FocalSet kEmptySet = 0;

inline int set_cardinality(FocalSet a) { return std::popcount(a); }

inline bool is_subset(FocalSet a, FocalSet b) { return (a & b) == a; }

/// Ordered finite set of class labels. Label order is stable and defines the
/// subset encoding, so two frames are interchangeable only if their label
/// sequences match exactly.
class Frame {
public:
    /// Labels must be distinct, nonempty, free of '|' (reserved by the
    /// interchange format), and at most 20 of them so that power-set
    /// enumeration stays tractable.
    explicit Frame(std::vector<std::string> labels);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int c) const { return labels_[static_cast<std::size_t>(c)]; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Index of a label, or -1 when absent.
    int index_of(const std::string& label) const;

    FocalSet full_set() const { return (FocalSet{1} << labels_.size()) - 1; }
    FocalSet singleton(int c) const;
    FocalSet complement(FocalSet a) const { return full_set() & ~a; }

    /// Throws BadFrameError when the set uses indices outside 0..C-1.
    void check_set(FocalSet a) const;

    /// Human-readable rendering, labels joined by '|' in frame order.
    std::string set_name(FocalSet a) const;

    bool operator==(const Frame& other) const { return labels_ == other.labels_; }

private:
    std::vector<std::string> labels_;
};

inline constexpr int kMaxFrameSize = 20;

}  // namespace evid
