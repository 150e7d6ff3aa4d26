#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "admixid/error.hpp"

namespace admixid {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Numerical thresholds. eq_tol governs entrywise comparisons, rank_tol the
// relative singular-value cutoff.
struct Tolerance {
    double eq_tol = 1e-8;
    double rank_tol = 1e-9;

    void validate() const;
};

// Throws InvalidMatrix unless m is at least 1x1 with finite entries.
void validate_matrix(const Matrix& m, const char* what = "matrix");

Vector ones(Index n);
Vector unit_vector(Index n, Index i);

double max_abs(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);

// M x K ancestral allele frequencies, every entry in [0,1].
class FrequencyMatrix {
public:
    // Entries within eq_tol of [0,1] are accepted and clamped.
    explicit FrequencyMatrix(Matrix f, const Tolerance& tol = {});

    const Matrix& matrix() const noexcept { return f_; }
    Index snps() const noexcept { return f_.rows(); }
    Index populations() const noexcept { return f_.cols(); }

private:
    Matrix f_;
};

// K x N admixture proportions; columns are probability vectors.
class AdmixtureMatrix {
public:
    explicit AdmixtureMatrix(Matrix q, const Tolerance& tol = {});

    const Matrix& matrix() const noexcept { return q_; }
    Index populations() const noexcept { return q_.rows(); }
    Index individuals() const noexcept { return q_.cols(); }

private:
    Matrix q_;
};

// M x N expected allele frequencies.
class ExpectedFreqMatrix {
public:
    explicit ExpectedFreqMatrix(Matrix pi, const Tolerance& tol = {});

    const Matrix& matrix() const noexcept { return pi_; }
    Index snps() const noexcept { return pi_.rows(); }
    Index individuals() const noexcept { return pi_.cols(); }

private:
    Matrix pi_;
};

struct FactorPair {
    FrequencyMatrix f;
    AdmixtureMatrix q;

    FactorPair(FrequencyMatrix f_, AdmixtureMatrix q_);

    Index populations() const noexcept { return f.populations(); }
};

// Pi = F Q. Entries are checked against [-eq_tol, 1 + eq_tol] before clamping.
ExpectedFreqMatrix multiply(const FrequencyMatrix& f, const AdmixtureMatrix& q,
                            const Tolerance& tol = {});

// Number of singular values above rank_tol * max(rows, cols) * max|entry|.
Index numeric_rank(const Matrix& a, const Tolerance& tol = {});

// Unit vector v with v'A = 0 when A has deficient row rank. The sign is fixed
// so that the first entry with magnitude above eq_tol is positive.
std::optional<Vector> null_space_vector(const Matrix& a, const Tolerance& tol = {});

// Unit vector spanning part of the right null space (A x = 0), same sign rule.
std::optional<Vector> right_null_vector(const Matrix& a, const Tolerance& tol = {});

// Smallest singular value; 0 for matrices with more columns than rows.
double smallest_singular_value(const Matrix& a);

}  // namespace admixid
