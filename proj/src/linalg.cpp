#include "evid/linalg.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "evid/errors.hpp"

namespace evid {

double squared_distance(const Vec& a, const Vec& b) {
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        total += diff * diff;
    }
    return total;
}

double dot(const Vec& a, const Vec& b) {
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) total += a[i] * b[i];
    return total;
}

Vec mean_row(const Mat& rows) {
    if (rows.empty()) throw InvalidArgumentError("mean of an empty matrix");
    Vec out(rows.front().size(), 0.0);
    for (const auto& row : rows) {
        for (std::size_t d = 0; d < out.size(); ++d) out[d] += row[d];
    }
    for (double& v : out) v /= static_cast<double>(rows.size());
    return out;
}

Mat solve_linear(Mat a, Mat b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (std::abs(a[pivot][col]) < 1e-14) {
            throw InvalidArgumentError("singular system in prototype update");
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r][col] / a[col][col];
            if (factor == 0.0) continue;
            for (std::size_t k = col; k < n; ++k) a[r][k] -= factor * a[col][k];
            for (std::size_t k = 0; k < b[r].size(); ++k) b[r][k] -= factor * b[col][k];
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        for (std::size_t k = 0; k < b[col].size(); ++k) {
            double value = b[col][k];
            for (std::size_t j = col + 1; j < n; ++j) value -= a[col][j] * b[j][k];
            b[col][k] = value / a[col][col];
        }
    }
    return b;
}

}  // namespace evid
