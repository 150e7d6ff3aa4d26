#pragma once

#include <optional>
#include <span>

#include "admixid/convex.hpp"
#include "admixid/matrix.hpp"

// Conic combinations over the rows of a matrix.
namespace admixid {

struct ConicWeights {
    Vector weights;

    bool is_valid(const Tolerance& tol = {}) const;
};

// alpha >= 0 with ||sum_k alpha_k r_k - v||_inf <= eq_tol, or empty.
std::optional<ConicWeights> conic_decompose(const Vector& v, const Matrix& generators, const Tolerance& tol = {});

// True iff no nonzero nonnegative combination of the (nonzero) rows vanishes,
// i.e. the generated wedge meets its negation only at zero.
bool wedge_is_cone(const Matrix& generators, const Tolerance& tol = {});

// True iff the rows are linearly independent.
bool has_unique_conic_decompositions(const Matrix& generators, const Tolerance& tol = {});

// x / ||x||_1.
Vector canonical_ray(const Vector& x);

// Row indices of the minimal conic generating set: extreme rays, one per
// direction (the lowest index). Rays are compared after scaling to unit
// 1-norm. Throws NotACone or ZeroVector. Returned sorted ascending.
IndexSet minimal_conic_generating_rows(const Matrix& rays, const Tolerance& tol = {},
                                       std::span<const Index> scan_order = {});

// True iff alpha x = y within eq_tol for alpha = (x.y)/(x.x) > 0.
bool rays_equal_up_to_scaling(const Vector& x, const Vector& y, const Tolerance& tol = {});

}  // namespace admixid
