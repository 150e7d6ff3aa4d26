#include "admixid/cone.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "admixid/nnls.hpp"

namespace admixid {

bool ConicWeights::is_valid(const Tolerance& tol) const {
    return weights.size() > 0 && weights.minCoeff() >= -tol.eq_tol;
}

std::optional<ConicWeights> conic_decompose(const Vector& v, const Matrix& generators, const Tolerance& tol) {
    if (v.size() != generators.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "point has length " + std::to_string(v.size()) +
                                                      " but generator rows have length " +
                                                      std::to_string(generators.cols()));
    }
    if (generators.rows() == 0) {
        if (max_abs(v) <= tol.eq_tol) return ConicWeights{Vector(0)};
        return std::nullopt;
    }
    NnlsResult sol = nnls(generators.transpose(), v);
    if (max_abs(generators.transpose() * sol.x - v) > tol.eq_tol) return std::nullopt;
    return ConicWeights{sol.x};
}

Vector canonical_ray(const Vector& x) {
    const double norm = x.lpNorm<1>();
    if (norm == 0.0) throw Error(ErrorKind::ZeroVector, "cannot canonicalise the zero vector");
    return x / norm;
}

bool wedge_is_cone(const Matrix& generators, const Tolerance& tol) {
    // A nonzero nonnegative combination of rows vanishes iff 0 lies in the
    // convex hull of the rows scaled to unit 1-norm. Zero rows generate nothing.
    std::vector<Vector> rays;
    for (Index r = 0; r < generators.rows(); ++r) {
        if (max_abs(generators.row(r)) > tol.eq_tol) rays.push_back(canonical_ray(generators.row(r).transpose()));
    }
    if (rays.empty()) return true;
    Matrix points(generators.cols(), static_cast<Index>(rays.size()));
    for (std::size_t k = 0; k < rays.size(); ++k) points.col(static_cast<Index>(k)) = rays[k];
    return !convex_decompose(Vector::Zero(generators.cols()), points, tol).has_value();
}

bool has_unique_conic_decompositions(const Matrix& generators, const Tolerance& tol) {
    return numeric_rank(generators, tol) == generators.rows();
}

bool rays_equal_up_to_scaling(const Vector& x, const Vector& y, const Tolerance& tol) {
    if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "rays differ in length");
    if (max_abs(x) <= tol.eq_tol || max_abs(y) <= tol.eq_tol) {
        throw Error(ErrorKind::ZeroVector, "rays must be nonzero");
    }
    const double alpha = x.dot(y) / x.dot(x);
    return alpha > 0.0 && max_abs(alpha * x - y) <= tol.eq_tol;
}

IndexSet minimal_conic_generating_rows(const Matrix& rays, const Tolerance& tol, std::span<const Index> scan_order) {
    const Index n = rays.rows();
    for (Index r = 0; r < n; ++r) {
        if (max_abs(rays.row(r)) <= tol.eq_tol) {
            throw Error(ErrorKind::ZeroVector, "ray " + std::to_string(r) + " is zero");
        }
    }
    if (!wedge_is_cone(rays, tol)) throw Error(ErrorKind::NotACone, "rays generate a wedge that is not a cone");

    const std::vector<Index> order = resolve_scan_order(n, scan_order);

    Matrix unit(n, rays.cols());
    for (Index r = 0; r < n; ++r) unit.row(r) = canonical_ray(rays.row(r).transpose()).transpose();

    // Duplicates always resolve to the lowest index; the scan order only drives removal.
    std::vector<Index> kept;
    for (Index j = 0; j < n; ++j) {
        const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](Index k) {
            return max_abs(unit.row(j) - unit.row(k)) <= tol.eq_tol;
        });
        if (!duplicate) kept.push_back(j);
    }

    for (Index candidate : order) {
        if (kept.size() <= 1) break;
        auto pos = std::find(kept.begin(), kept.end(), candidate);
        if (pos == kept.end()) continue;
        std::vector<Index> others(kept.begin(), pos);
        others.insert(others.end(), std::next(pos), kept.end());
        if (conic_decompose(unit.row(candidate).transpose(), select_rows(unit, others), tol)) {
            kept = std::move(others);
        }
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

}  // namespace admixid
