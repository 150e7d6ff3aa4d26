#include "admixid/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace admixid {

namespace {

// Least squares on the passive columns; min-norm when the subset is rank deficient.
Vector solve_passive(const Matrix& a, const Vector& b, const std::vector<Index>& passive) {
    Matrix sub(a.rows(), static_cast<Index>(passive.size()));
    for (std::size_t k = 0; k < passive.size(); ++k) sub.col(static_cast<Index>(k)) = a.col(passive[k]);
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(sub);
    return cod.solve(b);
}

}  // namespace

NnlsResult nnls(const Matrix& a, const Vector& b, int max_iterations) {
    if (a.rows() != b.size()) {
        throw Error(ErrorKind::DimensionMismatch, "nnls: A has " + std::to_string(a.rows()) +
                                                      " rows but b has length " + std::to_string(b.size()));
    }
    const Index n = a.cols();
    if (max_iterations <= 0) max_iterations = static_cast<int>(10 * n + 50);

    NnlsResult result;
    result.x = Vector::Zero(n);
    if (n == 0) {
        result.residual_norm = b.norm();
        result.converged = true;
        return result;
    }

    const double eps = std::numeric_limits<double>::epsilon();
    const double dual_tol =
        10.0 * eps * std::max<double>(1.0, a.cwiseAbs().colwise().sum().maxCoeff()) * static_cast<double>(std::max(a.rows(), n));

    std::vector<bool> in_passive(static_cast<std::size_t>(n), false);
    std::vector<bool> excluded(static_cast<std::size_t>(n), false);
    Vector& x = result.x;
    Vector w = a.transpose() * b;

    int iter = 0;
    while (iter < max_iterations) {
        Index t = -1;
        double best = dual_tol;
        for (Index j = 0; j < n; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            if (!in_passive[uj] && !excluded[uj] && w(j) > best) {
                best = w(j);
                t = j;
            }
        }
        if (t < 0) {
            result.converged = true;
            break;
        }
        in_passive[static_cast<std::size_t>(t)] = true;

        bool first_solve = true;
        while (iter < max_iterations) {
            ++iter;
            std::vector<Index> passive;
            for (Index j = 0; j < n; ++j) {
                if (in_passive[static_cast<std::size_t>(j)]) passive.push_back(j);
            }
            const Vector z = solve_passive(a, b, passive);

            if ((z.array() > 0.0).all()) {
                for (std::size_t k = 0; k < passive.size(); ++k) x(passive[k]) = z(static_cast<Index>(k));
                std::fill(excluded.begin(), excluded.end(), false);
                break;
            }
            // Roundoff can leave the entering variable non-positive on its
            // first solve; drop it until x moves again instead of cycling.
            if (first_solve) {
                const auto pos = std::find(passive.begin(), passive.end(), t) - passive.begin();
                if (z(static_cast<Index>(pos)) <= 0.0) {
                    in_passive[static_cast<std::size_t>(t)] = false;
                    excluded[static_cast<std::size_t>(t)] = true;
                    break;
                }
            }
            first_solve = false;

            double alpha = std::numeric_limits<double>::infinity();
            std::size_t blocking = 0;
            for (std::size_t k = 0; k < passive.size(); ++k) {
                const double zk = z(static_cast<Index>(k));
                if (zk <= 0.0) {
                    const double xk = x(passive[k]);
                    const double step = xk / (xk - zk);
                    if (step < alpha) {
                        alpha = step;
                        blocking = k;
                    }
                }
            }
            for (std::size_t k = 0; k < passive.size(); ++k) {
                const Index j = passive[k];
                x(j) += alpha * (z(static_cast<Index>(k)) - x(j));
                if (k == blocking || x(j) <= 0.0) {
                    x(j) = 0.0;
                    in_passive[static_cast<std::size_t>(j)] = false;
                }
            }
        }
        w = a.transpose() * (b - a * x);
    }

    result.iterations = iter;
    result.residual_norm = (a * x - b).norm();
    return result;
}

}  // namespace admixid
