#pragma once

#include "admixid/matrix.hpp"

namespace admixid {

struct NnlsResult {
    Vector x;
    double residual_norm = 0.0;  // ||A x - b||_2
    int iterations = 0;
    bool converged = false;
};

// Lawson-Hanson active set solver for min ||A x - b||_2 subject to x >= 0.
NnlsResult nnls(const Matrix& a, const Vector& b, int max_iterations = 0);

}  // namespace admixid
