#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "admixid/matrix.hpp"

// Generators of distinct factor pairs with identical products, one per
// non-identifiability construction. Every generator checks its own output:
// the product gap is at most 10 eq_tol and the two pairs are not equivalent.
namespace admixid {

enum class Construction {
    QInteriorColumn,
    RRotationQ,
    FRowPerturbation,
    RRotationF,
    NecessityPQ,
    NecessityFRows,
    UnadmixedDupColumn,
    UnadmixedMissingAnchor,
};

std::string_view to_string(Construction c) noexcept;
// Accepts the CLI names (perturb_interior_Q_column, rotate_R_Q, perturb_F_row,
// rotate_R_F, necessity_pq, necessity_F_rows, unadmixed_dup_column,
// unadmixed_missing_anchor) as well as the tags returned by to_string.
Construction parse_construction(std::string_view name);
// CLI name of a construction.
std::string_view command_name(Construction c) noexcept;

struct CounterexampleParameters {
    std::optional<double> delta;
    std::optional<double> alpha;
    std::optional<Vector> direction;    // null vector v
    std::optional<Index> population;    // k0, duplicated column k, or missing population
    std::optional<Index> partner;       // rotation partner or second duplicate column
    std::optional<Index> row;           // perturbed row of F
    std::optional<Index> column;        // replaced column of Q
};

struct CounterexamplePair {
    FactorPair original;
    FactorPair alternative;
    double product_gap = 0.0;
    Construction construction;
    CounterexampleParameters parameters;
    std::string certificate;  // why the pairs are not equivalent
};

// Replaces an all-positive column of Q by a second convex decomposition over
// F's affinely dependent columns. Requires K >= 2, N >= K + 1, F not indep, Q anchor.
CounterexamplePair perturb_interior_q_column(const FrequencyMatrix& f, const AdmixtureMatrix& q,
                                             const Tolerance& tol = {});

// (F R^-1, R Q) with R = [[1, delta], [0, 1 - delta]] on the population pair
// (partner, k0), where partner is population 0 (1 when k0 = 0). Column k0 of F
// must satisfy delta <= F[s, k0] <= 1 - delta. Missing delta: half the largest
// feasible value, at most 0.49; missing k0: first feasible column.
CounterexamplePair rotate_r_q(const FrequencyMatrix& f, const AdmixtureMatrix& q,
                              std::optional<double> delta = std::nullopt, std::optional<Index> k0 = std::nullopt,
                              const Tolerance& tol = {});

// Adds alpha v' to an interior row of an anchor F, with v'Q = 0.
CounterexamplePair perturb_f_row(const FrequencyMatrix& f, const AdmixtureMatrix& q, const Tolerance& tol = {});

// (F R, R^-1 Q) with R = [[1 - delta, 0], [delta, 1]] on (partner, k0); row k0
// of Q must be bounded below by delta.
CounterexamplePair rotate_r_f(const FrequencyMatrix& f, const AdmixtureMatrix& q,
                              std::optional<double> delta = std::nullopt, std::optional<Index> k0 = std::nullopt,
                              const Tolerance& tol = {});

// (F, Q^p) and (F, Q^q) with Q^p = (p, I_K, e_1, ..., e_1), F p = F q, p != q.
CounterexamplePair necessity_pq(const FrequencyMatrix& f, Index n, const Tolerance& tol = {});

// (F^1, Q) and (F^2, Q) with F^1 = (e'/2; I_K; e_1'; ...) and F^2 differing in
// the first row by delta v', v'Q = 0.
CounterexamplePair necessity_f_rows(const AdmixtureMatrix& q, Index m, const Tolerance& tol = {});

// (F, (I, e_k, ...)) and (F, (I, e_l, ...)) for identical columns k, l of F.
CounterexamplePair unadmixed_dup_column(const FrequencyMatrix& f, Index n, const Tolerance& tol = {});

// Replaces the column of F for a population that Q never uses.
CounterexamplePair unadmixed_missing_anchor(const FrequencyMatrix& f, const AdmixtureMatrix& q,
                                            const Tolerance& tol = {});

// Closed-form rotation matrices and their inverses.
Matrix rotation_q(Index k, Index partner, Index k0, double delta);
Matrix rotation_q_inverse(Index k, Index partner, Index k0, double delta);
Matrix rotation_f(Index k, Index partner, Index k0, double delta);
Matrix rotation_f_inverse(Index k, Index partner, Index k0, double delta);

}  // namespace admixid
