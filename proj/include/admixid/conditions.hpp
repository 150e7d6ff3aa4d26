#pragma once

#include <optional>
#include <vector>

#include "admixid/matrix.hpp"

namespace admixid {

// Per-population witness indices; empty entries mark populations without one.
using Witnesses = std::vector<std::optional<Index>>;

struct AnchorCheck {
    bool holds = false;
    Witnesses witnesses;
};

// Membership of (F, Q) in each model class. All indices are 0-based.
struct ConditionReport {
    AnchorCheck anchor_f;  // anchor SNP rows, one per population
    AnchorCheck anchor_q;  // anchor individual columns, one per population
    bool indep_f = false;
    bool indep_q = false;
    bool distinct_cols_f = false;
    bool unadmixed_q = false;
    Index k = 0;
    Index m = 0;
    Index n = 0;

    // indep_F and anchor_Q with K <= min(M + 1, N).
    bool identifiable_anchor_q = false;
    // anchor_F and indep_Q with K <= min(M, N).
    bool identifiable_anchor_f = false;
    // distinct columns of F and unadmixed Q with K <= N.
    bool identifiable_unadmixed = false;
};

// For each k the first column within eq_tol of e_k.
AnchorCheck check_anchor_q(const AdmixtureMatrix& q, const Tolerance& tol = {});

// For each k the first row with F[s, l] <= eq_tol for l != k and F[s, k] > eq_tol.
AnchorCheck check_anchor_f(const FrequencyMatrix& f, const Tolerance& tol = {});

// Columns of F affinely independent (differences to the last column independent).
bool check_indep_f(const FrequencyMatrix& f, const Tolerance& tol = {});

// Rows of Q linearly independent.
bool check_indep_q(const AdmixtureMatrix& q, const Tolerance& tol = {});

// Pairwise column sup-distance > eq_tol.
bool check_distinct_columns(const FrequencyMatrix& f, const Tolerance& tol = {});

// Every column of Q is some e_k (within eq_tol) and every e_k occurs. Columns of
// Q are read as the individuals, matching the K x N layout used everywhere else.
bool check_unadmixed(const AdmixtureMatrix& q, const Tolerance& tol = {});

ConditionReport classify(const FrequencyMatrix& f, const AdmixtureMatrix& q, const Tolerance& tol = {});

// Index k when column is within eq_tol of e_k, otherwise empty.
std::optional<Index> basis_index(const Vector& column, const Tolerance& tol = {});

}  // namespace admixid
