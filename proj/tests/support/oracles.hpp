#pragma once

// Reference implementations used to cross-check the library. They share no
// code with it: rank comes from full-pivot LU, decompositions from solving
// square subsystems directly.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline Index lu_rank(const Matrix& a, double rel = 1e-9) {
    if (a.size() == 0) return 0;
    Eigen::FullPivLU<Matrix> lu(a);
    lu.setThreshold(rel * static_cast<double>(std::max(a.rows(), a.cols())));
    return lu.rank();
}

// Vertices of {x >= 0 : A x = b}, found as the nonnegative solutions supported
// on a set of linearly independent columns of A. Every subset of columns is
// tried, so the cost is 2^n; fine for n <= 6.
inline std::vector<Vector> basic_feasible_solutions(const Matrix& a, const Vector& b, double tol = 1e-9) {
    const Index n = a.cols();
    std::vector<Vector> found;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<Index> support;
        for (Index j = 0; j < n; ++j) {
            if (mask & (1u << j)) support.push_back(j);
        }
        Matrix sub(a.rows(), static_cast<Index>(support.size()));
        for (std::size_t j = 0; j < support.size(); ++j) sub.col(static_cast<Index>(j)) = a.col(support[j]);
        if (lu_rank(sub) != sub.cols()) continue;
        const Vector y = sub.fullPivHouseholderQr().solve(b);
        if ((sub * y - b).cwiseAbs().maxCoeff() > tol) continue;
        if (y.minCoeff() < -tol) continue;
        Vector x = Vector::Zero(n);
        for (std::size_t j = 0; j < support.size(); ++j) x(support[j]) = std::max(0.0, y(static_cast<Index>(j)));
        const bool seen = std::any_of(found.begin(), found.end(),
                                      [&](const Vector& z) { return (z - x).cwiseAbs().maxCoeff() <= 1e-7; });
        if (!seen) found.push_back(x);
    }
    // The empty support is the vertex 0 when b = 0.
    if (b.cwiseAbs().maxCoeff() <= tol && found.empty()) found.push_back(Vector::Zero(n));
    return found;
}

// Convex weights of v over the columns of g are unique iff the polytope
// {w >= 0 : [g; 1'] w = [v; 1]} has exactly one vertex.
inline bool convex_unique_by_enumeration(const Matrix& g, const Vector& v) {
    Matrix a(g.rows() + 1, g.cols());
    a << g, Eigen::RowVectorXd::Ones(g.cols());
    Vector b(g.rows() + 1);
    b << v, 1.0;
    return basic_feasible_solutions(a, b).size() == 1;
}

// Conic weights of v over the rows of g (all nonzero and nonnegative, so the
// feasible set is bounded) are unique iff it has exactly one vertex.
inline bool conic_unique_by_enumeration(const Matrix& g, const Vector& v) {
    return basic_feasible_solutions(g.transpose(), v).size() == 1;
}

// Random finite point sets with planted degeneracies: repeated points,
// midpoints, and (for rays) positive multiples and sums.
struct PointSetSampler {
    std::mt19937_64 rng;

    explicit PointSetSampler(std::uint64_t seed) : rng(seed) {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }
    Index integer(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(rng); }

    // dims x count, columns in [0,1]^dims.
    Matrix points(Index dims, Index count) {
        Matrix p(dims, count);
        for (Index c = 0; c < count; ++c) {
            for (Index r = 0; r < dims; ++r) p(r, c) = uniform();
        }
        return p;
    }

    // Replaces some later columns by combinations of earlier ones.
    Matrix with_convex_degeneracies(Matrix p) {
        for (Index c = 2; c < p.cols(); ++c) {
            const Index kind = integer(0, 3);
            const Index a = integer(0, c - 1);
            const Index b = integer(0, c - 1);
            if (kind == 0) p.col(c) = p.col(a);
            if (kind == 1) p.col(c) = 0.5 * (p.col(a) + p.col(b));
            if (kind == 2) {
                const double t = uniform();
                p.col(c) = t * p.col(a) + (1.0 - t) * p.col(b);
            }
        }
        return p;
    }

    // Rows nonnegative and nonzero; later rows may be multiples or sums of earlier ones.
    Matrix with_conic_degeneracies(Matrix rows) {
        for (Index r = 2; r < rows.rows(); ++r) {
            const Index kind = integer(0, 3);
            const Index a = integer(0, r - 1);
            const Index b = integer(0, r - 1);
            if (kind == 0) rows.row(r) = (0.5 + uniform()) * rows.row(a);
            if (kind == 1) rows.row(r) = rows.row(a) + rows.row(b);
            if (kind == 2) rows.row(r) = uniform() * rows.row(a) + uniform() * rows.row(b);
        }
        return rows;
    }

    std::vector<Index> permutation(Index n) {
        std::vector<Index> p(static_cast<std::size_t>(n));
        for (Index i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
        std::shuffle(p.begin(), p.end(), rng);
        return p;
    }
};

}  // namespace oracles
