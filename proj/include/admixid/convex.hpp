#pragma once

#include <optional>
#include <span>
#include <vector>

#include "admixid/matrix.hpp"

// Convex combinations over the columns of a matrix.
namespace admixid {

using IndexSet = std::vector<Index>;

struct ConvexWeights {
    Vector weights;

    // Every weight >= -eq_tol and the weights sum to one within eq_tol.
    bool is_valid(const Tolerance& tol = {}) const;
};

// Weights lambda >= 0 with sum one and ||G lambda - v||_inf <= eq_tol, found by
// nonnegative least squares on [G; 1'] lambda = [v; 1]. Empty when v is not in
// the hull of the columns of G.
std::optional<ConvexWeights> convex_decompose(const Vector& v, const Matrix& generators,
                                              const Tolerance& tol = {});

// True iff g_1 - g_m, ..., g_{m-1} - g_m are linearly independent (always true
// for a single generator).
bool has_unique_decompositions(const Matrix& generators, const Tolerance& tol = {});

// Nonzero a with G a = 0 and sum(a) = 0, or empty when the columns are affinely
// independent.
std::optional<Vector> affine_dependence(const Matrix& generators, const Tolerance& tol = {});

// known + t * direction for the largest t >= 0 keeping every weight >= 0. The
// entry that blocks the step is set to exactly zero.
Vector shift_to_boundary(const Vector& known, const Vector& direction);

// A second decomposition of v, distinct from `known`, which must be an open
// combination (every weight > eq_tol).
ConvexWeights alternative_decomposition(const Vector& v, const Matrix& generators, const ConvexWeights& known,
                                        const Tolerance& tol = {});

// Indices of the unique minimal subset of columns with the same convex hull.
// Columns equal (within eq_tol) to a lower-indexed column are dropped first;
// the rest are removed greedily in scan order (default: increasing index).
// Returned sorted ascending.
IndexSet minimal_generating_columns(const Matrix& points, const Tolerance& tol = {},
                                    std::span<const Index> scan_order = {});

// True iff column idx is not a convex combination of the other columns.
bool is_extreme_point(Index idx, const Matrix& points, const Tolerance& tol = {});

// scan_order itself after checking it is a permutation of 0..n-1; 0..n-1 when empty.
std::vector<Index> resolve_scan_order(Index n, std::span<const Index> scan_order);

// Columns of m at the given indices, in order.
Matrix select_columns(const Matrix& m, std::span<const Index> indices);
Matrix select_rows(const Matrix& m, std::span<const Index> indices);

}  // namespace admixid
