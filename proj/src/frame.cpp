#include "evid/frame.hpp"

#include <algorithm>
#include <unordered_set>

namespace evid {

Frame::Frame(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty() || labels_.size() > kMaxFrameSize) {
        throw BadFrameError("frame must hold between 1 and 20 labels, got " +
                            std::to_string(labels_.size()));
    }
    std::unordered_set<std::string> seen;
    for (const auto& label : labels_) {
        if (label.empty() || label.find('|') != std::string::npos) {
            throw BadFrameError("label '" + label + "' is empty or contains '|'");
        }
        if (!seen.insert(label).second) {
            throw BadFrameError("duplicate label '" + label + "'");
        }
    }
}

int Frame::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return -1;
    return static_cast<int>(it - labels_.begin());
}

FocalSet Frame::singleton(int c) const {
    if (c < 0 || c >= size()) {
        throw BadFrameError("singleton index " + std::to_string(c) + " outside frame of size " +
                            std::to_string(size()));
    }
    return FocalSet{1} << c;
}

void Frame::check_set(FocalSet a) const {
    if (!is_subset(a, full_set())) {
        throw BadFrameError("subset uses member indices beyond the frame size " +
                            std::to_string(size()));
    }
}

std::string Frame::set_name(FocalSet a) const {
    check_set(a);
    std::string out;
    for (int c = 0; c < size(); ++c) {
        if (a & (FocalSet{1} << c)) {
            if (!out.empty()) out += '|';
            out += labels_[static_cast<std::size_t>(c)];
        }
    }
    return out;
}

}  // namespace evid
