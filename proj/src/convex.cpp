#include "admixid/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "admixid/nnls.hpp"

namespace admixid {

std::vector<Index> resolve_scan_order(Index n, std::span<const Index> scan_order) {
    std::vector<Index> order;
    if (scan_order.empty()) {
        order.resize(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), Index{0});
        return order;
    }
    order.assign(scan_order.begin(), scan_order.end());
    std::vector<Index> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Index> identity(static_cast<std::size_t>(n));
    std::iota(identity.begin(), identity.end(), Index{0});
    if (sorted != identity) {
        throw Error(ErrorKind::DimensionMismatch, "scan order is not a permutation of 0..n-1");
    }
    return order;
}

bool ConvexWeights::is_valid(const Tolerance& tol) const {
    if (weights.size() == 0) return false;
    return weights.minCoeff() >= -tol.eq_tol && std::abs(weights.sum() - 1.0) <= tol.eq_tol;
}

Matrix select_columns(const Matrix& m, std::span<const Index> indices) {
    Matrix out(m.rows(), static_cast<Index>(indices.size()));
    for (std::size_t k = 0; k < indices.size(); ++k) out.col(static_cast<Index>(k)) = m.col(indices[k]);
    return out;
}

Matrix select_rows(const Matrix& m, std::span<const Index> indices) {
    Matrix out(static_cast<Index>(indices.size()), m.cols());
    for (std::size_t k = 0; k < indices.size(); ++k) out.row(static_cast<Index>(k)) = m.row(indices[k]);
    return out;
}

std::optional<ConvexWeights> convex_decompose(const Vector& v, const Matrix& generators, const Tolerance& tol) {
    if (v.size() != generators.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "point has length " + std::to_string(v.size()) +
                                                      " but generators have " + std::to_string(generators.rows()) +
                                                      " rows");
    }
    const Index d = generators.rows();
    const Index m = generators.cols();
    if (m == 0) return std::nullopt;

    Matrix a(d + 1, m);
    a.topRows(d) = generators;
    a.row(d).setOnes();
    Vector b(d + 1);
    b.head(d) = v;
    b(d) = 1.0;

    NnlsResult sol = nnls(a, b);
    const Vector& lambda = sol.x;
    if (max_abs(generators * lambda - v) > tol.eq_tol) return std::nullopt;
    if (std::abs(lambda.sum() - 1.0) > tol.eq_tol) return std::nullopt;
    return ConvexWeights{lambda};
}

bool has_unique_decompositions(const Matrix& generators, const Tolerance& tol) {
    return !affine_dependence(generators, tol).has_value();
}

std::optional<Vector> affine_dependence(const Matrix& generators, const Tolerance& tol) {
    const Index m = generators.cols();
    if (m <= 1) return std::nullopt;
    Matrix diff = generators.leftCols(m - 1).colwise() - generators.col(m - 1);
    auto alpha = right_null_vector(diff, tol);
    if (!alpha) return std::nullopt;
    Vector a(m);
    a.head(m - 1) = *alpha;
    a(m - 1) = -alpha->sum();
    return a;
}

Vector shift_to_boundary(const Vector& known, const Vector& direction) {
    double step = std::numeric_limits<double>::infinity();
    Index blocking = -1;
    for (Index i = 0; i < known.size(); ++i) {
        if (direction(i) < 0.0) {
            const double s = known(i) / -direction(i);
            if (s < step) {
                step = s;
                blocking = i;
            }
        }
    }
    if (blocking < 0) {
        throw Error(ErrorKind::ConstructionFailed, "shift direction has no negative entry");
    }
    Vector out = known + step * direction;
    out = out.cwiseMax(0.0);
    out(blocking) = 0.0;
    return out;
}

ConvexWeights alternative_decomposition(const Vector& v, const Matrix& generators, const ConvexWeights& known,
                                        const Tolerance& tol) {
    if (v.size() != generators.rows() || known.weights.size() != generators.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "point, generators and weights disagree in size");
    }
    const auto a = affine_dependence(generators, tol);
    if (!a) {
        throw Error(ErrorKind::UniqueDecomposition, "generators are affinely independent");
    }
    if (known.weights.minCoeff() <= tol.eq_tol) {
        throw Error(ErrorKind::NotOpenCombination, "every known weight must be positive");
    }
    if (!known.is_valid(tol) || max_abs(generators * known.weights - v) > tol.eq_tol) {
        throw Error(ErrorKind::DecompositionInfeasible, "known weights do not decompose the point");
    }
    ConvexWeights alt{shift_to_boundary(known.weights, *a)};
    if (max_abs(alt.weights - known.weights) <= tol.eq_tol) {
        throw Error(ErrorKind::ConstructionFailed, "alternative decomposition coincides with the known one");
    }
    return alt;
}

IndexSet minimal_generating_columns(const Matrix& points, const Tolerance& tol, std::span<const Index> scan_order) {
    const Index n = points.cols();
    const std::vector<Index> order = resolve_scan_order(n, scan_order);

    // Duplicates always resolve to the lowest index; the scan order only drives removal.
    std::vector<Index> kept;
    for (Index j = 0; j < n; ++j) {
        const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](Index k) {
            return max_abs(points.col(j) - points.col(k)) <= tol.eq_tol;
        });
        if (!duplicate) kept.push_back(j);
    }

    for (Index candidate : order) {
        if (kept.size() <= 1) break;
        auto pos = std::find(kept.begin(), kept.end(), candidate);
        if (pos == kept.end()) continue;
        std::vector<Index> others(kept.begin(), pos);
        others.insert(others.end(), std::next(pos), kept.end());
        if (convex_decompose(points.col(candidate), select_columns(points, others), tol)) {
            kept = std::move(others);
        }
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

bool is_extreme_point(Index idx, const Matrix& points, const Tolerance& tol) {
    if (idx < 0 || idx >= points.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "column index " + std::to_string(idx) + " out of range");
    }
    if (points.cols() == 1) return true;
    std::vector<Index> others;
    for (Index j = 0; j < points.cols(); ++j) {
        if (j != idx) others.push_back(j);
    }
    return !convex_decompose(points.col(idx), select_columns(points, others), tol).has_value();
}

}  // namespace admixid
