#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "admixid/matrix.hpp"

namespace admixid {

enum class Regime { AnchorQ, AnchorF, Unadmixed };

std::string_view to_string(Regime regime) noexcept;
// Accepts "anchorQ", "anchorF", "unadmixed".
Regime parse_regime(std::string_view name);

struct RecoveredFactorization {
    FactorPair pair;
    Index k = 0;
    double residual = 0.0;  // ||Pi - F Q||_inf
    Regime regime = Regime::AnchorQ;
    std::vector<std::string> warnings;
};

// Every recovery infers K from Pi and validates its own output (class
// membership and residual <= 10 eq_tol). Recovered populations appear in the
// order of their first occurrence in Pi.

// F = extreme columns of Pi, Q = convex weights of each column of Pi.
RecoveredFactorization recover_anchor_q(const ExpectedFreqMatrix& pi, const Tolerance& tol = {});

// Q = extreme rays of the rows of Pi rescaled so its columns sum to one,
// F = conic weights of each row of Pi over the rows of Q.
RecoveredFactorization recover_anchor_f(const ExpectedFreqMatrix& pi, const Tolerance& tol = {});

// F = distinct columns of Pi, Q = indicator columns.
RecoveredFactorization recover_unadmixed(const ExpectedFreqMatrix& pi, const Tolerance& tol = {});

RecoveredFactorization recover(const ExpectedFreqMatrix& pi, Regime regime, const Tolerance& tol = {});

// Tries anchorQ, anchorF, unadmixed in that order and returns the first that
// validates. Throws DecompositionInfeasible listing every failure otherwise.
RecoveredFactorization recover_auto(const ExpectedFreqMatrix& pi, const Tolerance& tol = {});

}  // namespace admixid
