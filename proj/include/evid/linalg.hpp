#pragma once

#include <vector>

namespace evid {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

double squared_distance(const Vec& a, const Vec& b);
double dot(const Vec& a, const Vec& b);

/// Row-wise mean of a nonempty matrix.
Vec mean_row(const Mat& rows);

/// Solves the dense system A x = b in place by Gaussian elimination with
/// partial pivoting; b may hold several right-hand-side columns. Intended for
/// the small systems in this project (dimension <= frame size).
Mat solve_linear(Mat a, Mat b);

}  // namespace evid
