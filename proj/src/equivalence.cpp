#include "admixid/equivalence.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace admixid {

bool PopulationPermutation::is_bijection() const {
    std::vector<Index> sorted = mapping;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != static_cast<Index>(i)) return false;
    }
    return true;
}

PopulationPermutation PopulationPermutation::inverse() const {
    PopulationPermutation inv;
    inv.mapping.resize(mapping.size());
    for (std::size_t k = 0; k < mapping.size(); ++k) inv.mapping[static_cast<std::size_t>(mapping[k])] = static_cast<Index>(k);
    return inv;
}

FactorPair relabel(const FactorPair& pair, const PopulationPermutation& perm) {
    const Index k = pair.populations();
    if (static_cast<Index>(perm.mapping.size()) != k || !perm.is_bijection()) {
        throw Error(ErrorKind::DimensionMismatch, "permutation does not match the number of populations");
    }
    Matrix f(pair.f.snps(), k);
    Matrix q(k, pair.q.individuals());
    for (Index j = 0; j < k; ++j) {
        const Index target = perm.mapping[static_cast<std::size_t>(j)];
        f.col(target) = pair.f.matrix().col(j);
        q.row(target) = pair.q.matrix().row(j);
    }
    return FactorPair(FrequencyMatrix(std::move(f)), AdmixtureMatrix(std::move(q)));
}

std::vector<Index> solve_assignment(const Matrix& cost) {
    // Shortest augmenting path (Hungarian) with potentials, 1-based internally.
    const Index n = cost.rows();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<std::size_t>(n + 1), 0.0), v(static_cast<std::size_t>(n + 1), 0.0);
    std::vector<Index> p(static_cast<std::size_t>(n + 1), 0), way(static_cast<std::size_t>(n + 1), 0);
    for (Index i = 1; i <= n; ++i) {
        p[0] = i;
        Index j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n + 1), inf);
        std::vector<bool> used(static_cast<std::size_t>(n + 1), false);
        do {
            used[static_cast<std::size_t>(j0)] = true;
            const Index i0 = p[static_cast<std::size_t>(j0)];
            double delta = inf;
            Index j1 = 0;
            for (Index j = 1; j <= n; ++j) {
                const auto uj = static_cast<std::size_t>(j);
                if (used[uj]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[uj];
                if (cur < minv[uj]) {
                    minv[uj] = cur;
                    way[uj] = j0;
                }
                if (minv[uj] < delta) {
                    delta = minv[uj];
                    j1 = j;
                }
            }
            for (Index j = 0; j <= n; ++j) {
                const auto uj = static_cast<std::size_t>(j);
                if (used[uj]) {
                    u[static_cast<std::size_t>(p[uj])] += delta;
                    v[uj] -= delta;
                } else {
                    minv[uj] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            const Index j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<Index> result(static_cast<std::size_t>(n), 0);
    for (Index j = 1; j <= n; ++j) result[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = j - 1;
    return result;
}

namespace {

double worst(const Matrix& d, const std::vector<Index>& mapping) {
    double w = 0.0;
    for (std::size_t k = 0; k < mapping.size(); ++k) w = std::max(w, d(static_cast<Index>(k), mapping[k]));
    return w;
}

std::optional<std::vector<Index>> greedy_match(const Matrix& d, double limit) {
    const Index k = d.rows();
    std::vector<bool> used(static_cast<std::size_t>(k), false);
    std::vector<Index> mapping(static_cast<std::size_t>(k), -1);
    for (Index a = 0; a < k; ++a) {
        Index best = -1;
        for (Index b = 0; b < k; ++b) {
            if (used[static_cast<std::size_t>(b)]) continue;
            if (best < 0 || d(a, b) < d(a, best)) best = b;
        }
        if (d(a, best) > limit) return std::nullopt;
        used[static_cast<std::size_t>(best)] = true;
        mapping[static_cast<std::size_t>(a)] = best;
    }
    return mapping;
}

bool exhaustive_match(const Matrix& d, double limit, Index row, std::vector<Index>& mapping, std::vector<bool>& used) {
    if (row == d.rows()) return true;
    for (Index b = 0; b < d.cols(); ++b) {
        if (used[static_cast<std::size_t>(b)] || d(row, b) > limit) continue;
        used[static_cast<std::size_t>(b)] = true;
        mapping[static_cast<std::size_t>(row)] = b;
        if (exhaustive_match(d, limit, row + 1, mapping, used)) return true;
        used[static_cast<std::size_t>(b)] = false;
    }
    return false;
}

}  // namespace

EquivalenceVerdict are_equivalent(const FactorPair& first, const FactorPair& second, const Tolerance& tol) {
    EquivalenceVerdict verdict;
    const Index k = first.populations();
    if (second.populations() != k) {
        verdict.reason = "dimension: K differs (" + std::to_string(k) + " vs " +
                         std::to_string(second.populations()) + ")";
        return verdict;
    }
    if (first.f.snps() != second.f.snps() || first.q.individuals() != second.q.individuals()) {
        verdict.reason = "dimension: M or N differs";
        return verdict;
    }

    const Matrix& f1 = first.f.matrix();
    const Matrix& q1 = first.q.matrix();
    const Matrix& f2 = second.f.matrix();
    const Matrix& q2 = second.q.matrix();
    Matrix d(k, k);
    for (Index a = 0; a < k; ++a) {
        for (Index b = 0; b < k; ++b) {
            d(a, b) = std::max(max_abs(f2.col(a) - f1.col(b)), max_abs(q2.row(a) - q1.row(b)));
        }
    }

    std::optional<std::vector<Index>> mapping = greedy_match(d, tol.eq_tol);
    if (!mapping && k <= 8) {
        std::vector<Index> candidate(static_cast<std::size_t>(k), -1);
        std::vector<bool> used(static_cast<std::size_t>(k), false);
        if (exhaustive_match(d, tol.eq_tol, 0, candidate, used)) mapping = std::move(candidate);
    } else if (!mapping) {
        // Pairs above the tolerance cost more than any admissible matching.
        Matrix cost = d;
        for (Index a = 0; a < k; ++a) {
            for (Index b = 0; b < k; ++b) {
                if (cost(a, b) > tol.eq_tol) cost(a, b) += 1.0 + static_cast<double>(k) * tol.eq_tol;
            }
        }
        std::vector<Index> candidate = solve_assignment(cost);
        if (worst(d, candidate) <= tol.eq_tol) mapping = std::move(candidate);
    }

    if (!mapping) {
        verdict.reason = "no relabelling matches F columns and Q rows within tolerance";
        return verdict;
    }
    verdict.max_distance = worst(d, *mapping);
    verdict.permutation = PopulationPermutation{std::move(*mapping)};
    return verdict;
}

}  // namespace admixid
