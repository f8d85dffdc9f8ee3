#pragma once

#include <vector>

#include "evid/linalg.hpp"

namespace evid {

struct OverlapMetrics {
    double dice = 0.0;
    double sensitivity = 0.0;
    double precision = 0.0;
};

/// Voxel-count overlap metrics for one positive class:
///   dice = 2TP/(FP + 2TP + FN), sensitivity = TP/(TP+FN), precision = TP/(TP+FP).
/// When both operand sets are empty every ratio is 1; when exactly one is
/// empty it is 0.
OverlapMetrics overlap_metrics(const std::vector<int>& pred, const std::vector<int>& truth,
                               int positive_class);

/// Greatest of the two directed max-min distances between nonempty point
/// sets. Plain O(|S| x |G|) evaluation.
double hausdorff(const Mat& s, const Mat& g);

/// Expected calibration error with R equal-width bins on [0,1]; bins are
/// left-closed right-open except the last, so confidence 1.0 lands in bin R.
/// Empty bins contribute nothing. A nonempty mask restricts the evaluation
/// to the flagged samples (region-of-interest calibration).
double ece(const Vec& confidences, const std::vector<char>& correct, int bins = 10,
           const std::vector<char>& mask = {});

/// Coordinates of the voxels of one class in a flat label array with spatial
/// shape metadata (row-major); feeds the point-set distance below.
Mat label_points(const std::vector<int>& labels, const std::vector<int>& shape,
                 int positive_class);

/// Soft binary Dice loss 1 - 2*sum(S*G)/(sum(S)+sum(G)); zero when both
/// arrays are identically zero.
double dice_loss_binary(const Vec& s, const Vec& g);

/// Multiclass Dice loss, one term per class; classes absent from both the
/// prediction and the truth contribute zero.
double dice_loss_class_sum(const Mat& s, const Mat& g);

/// Multiclass Dice loss pooling all classes in a single ratio.
double dice_loss_pooled(const Mat& s, const Mat& g);

/// Adds a regularization term to a base loss.
inline double regularized(double base_loss, double lambda, double regularizer) {
    return base_loss + lambda * regularizer;
}

/// Mean squared difference between two probability arrays, normalized by
/// 2*N*C.
double consistency_loss(const Mat& s, const Mat& s_t);

/// Polynomial decay lr0 * (1 - e/Ne)^0.9.
double lr_schedule(double lr0, int epoch, int total_epochs);

}  // namespace evid
