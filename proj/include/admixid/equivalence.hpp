#pragma once

#include <optional>
#include <string>
#include <vector>

#include "admixid/matrix.hpp"

namespace admixid {

// pi with F2[:, k] = F1[:, mapping[k]] and Q2[k, :] = Q1[mapping[k], :].
struct PopulationPermutation {
    std::vector<Index> mapping;

    bool is_bijection() const;
    PopulationPermutation inverse() const;
};

struct EquivalenceVerdict {
    std::optional<PopulationPermutation> permutation;
    std::string reason;         // set when not equivalent
    double max_distance = 0.0;  // worst matched column/row distance when equivalent

    bool equivalent() const noexcept { return permutation.has_value(); }
};

// Decides (F1, Q1) ~ (F2, Q2): one relabelling applied to F columns and Q rows
// at the same time. Matching cost is max(|F2_k - F1_j|_inf, |Q2_k - Q1_j|_inf);
// greedy first, exhaustive for K <= 8, assignment for larger K.
EquivalenceVerdict are_equivalent(const FactorPair& first, const FactorPair& second, const Tolerance& tol = {});

// Moves population k of `pair` to label mapping[k]; relabel(second, pi) ~= first.
FactorPair relabel(const FactorPair& pair, const PopulationPermutation& perm);

// Minimum-cost perfect assignment on a square cost matrix; result[row] = column.
std::vector<Index> solve_assignment(const Matrix& cost);

}  // namespace admixid
