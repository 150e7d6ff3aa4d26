#include "admixid/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace admixid {

void Tolerance::validate() const {
    if (!(eq_tol > 0.0) || !std::isfinite(eq_tol)) {
        throw Error(ErrorKind::InvalidMatrix, "eq_tol must be positive, got " + std::to_string(eq_tol));
    }
    if (!(rank_tol > 0.0) || !std::isfinite(rank_tol)) {
        throw Error(ErrorKind::InvalidMatrix, "rank_tol must be positive, got " + std::to_string(rank_tol));
    }
}

void validate_matrix(const Matrix& m, const char* what) {
    if (m.rows() < 1 || m.cols() < 1) {
        throw Error(ErrorKind::InvalidMatrix, std::string(what) + " must be at least 1x1");
    }
    if (!m.allFinite()) {
        throw Error(ErrorKind::InvalidMatrix, std::string(what) + " has non-finite entries");
    }
}

Vector ones(Index n) { return Vector::Ones(n); }

Vector unit_vector(Index n, Index i) { return Vector::Unit(n, i); }

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "cannot compare matrices of different shapes");
    }
    return max_abs(a - b);
}

namespace {

void check_unit_interval(const Matrix& m, const Tolerance& tol, const char* what) {
    for (Index j = 0; j < m.cols(); ++j) {
        for (Index i = 0; i < m.rows(); ++i) {
            const double x = m(i, j);
            if (x < -tol.eq_tol || x > 1.0 + tol.eq_tol) {
                throw Error(ErrorKind::InvalidMatrix, std::string(what) + " entry (" + std::to_string(i) +
                                                          "," + std::to_string(j) + ") = " +
                                                          std::to_string(x) + " is outside [0,1]");
            }
        }
    }
}

Matrix clamp_unit(Matrix m) { return m.cwiseMax(0.0).cwiseMin(1.0); }

void fix_sign(Vector& v, double eq_tol) {
    for (Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > eq_tol) {
            if (v(i) < 0) v = -v;
            return;
        }
    }
}

}  // namespace

FrequencyMatrix::FrequencyMatrix(Matrix f, const Tolerance& tol) {
    validate_matrix(f, "frequency matrix");
    check_unit_interval(f, tol, "frequency matrix");
    f_ = clamp_unit(std::move(f));
}

AdmixtureMatrix::AdmixtureMatrix(Matrix q, const Tolerance& tol) {
    validate_matrix(q, "admixture matrix");
    check_unit_interval(q, tol, "admixture matrix");
    for (Index i = 0; i < q.cols(); ++i) {
        const double s = q.col(i).sum();
        if (std::abs(s - 1.0) > tol.eq_tol) {
            throw Error(ErrorKind::InvalidMatrix,
                        "admixture matrix column " + std::to_string(i) + " sums to " + std::to_string(s));
        }
    }
    q_ = clamp_unit(std::move(q));
}

ExpectedFreqMatrix::ExpectedFreqMatrix(Matrix pi, const Tolerance& tol) {
    validate_matrix(pi, "expected frequency matrix");
    check_unit_interval(pi, tol, "expected frequency matrix");
    pi_ = clamp_unit(std::move(pi));
}

FactorPair::FactorPair(FrequencyMatrix f_, AdmixtureMatrix q_) : f(std::move(f_)), q(std::move(q_)) {
    if (f.populations() != q.populations()) {
        throw Error(ErrorKind::DimensionMismatch, "F has " + std::to_string(f.populations()) +
                                                      " columns but Q has " + std::to_string(q.populations()) +
                                                      " rows");
    }
}

ExpectedFreqMatrix multiply(const FrequencyMatrix& f, const AdmixtureMatrix& q, const Tolerance& tol) {
    if (f.populations() != q.populations()) {
        throw Error(ErrorKind::DimensionMismatch, "F has " + std::to_string(f.populations()) +
                                                      " columns but Q has " + std::to_string(q.populations()) +
                                                      " rows");
    }
    Matrix pi = f.matrix() * q.matrix();
    return ExpectedFreqMatrix(std::move(pi), tol);
}

Index numeric_rank(const Matrix& a, const Tolerance& tol) {
    if (a.size() == 0) return 0;
    const double scale = max_abs(a);
    if (scale == 0.0) return 0;
    const double threshold = tol.rank_tol * static_cast<double>(std::max(a.rows(), a.cols())) * scale;
    Eigen::JacobiSVD<Matrix> svd(a);
    const Vector& s = svd.singularValues();
    Index rank = 0;
    for (Index i = 0; i < s.size(); ++i) {
        if (s(i) > threshold) ++rank;
    }
    return rank;
}

std::optional<Vector> right_null_vector(const Matrix& a, const Tolerance& tol) {
    if (a.cols() == 0 || numeric_rank(a, tol) >= a.cols()) return std::nullopt;
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
    Vector v = svd.matrixV().col(a.cols() - 1);
    v.normalize();
    fix_sign(v, tol.eq_tol);
    return v;
}

std::optional<Vector> null_space_vector(const Matrix& a, const Tolerance& tol) {
    auto v = right_null_vector(a.transpose(), tol);
    if (v && a.rows() > 0 && max_abs(v->transpose() * a) > tol.eq_tol) return std::nullopt;
    return v;
}

double smallest_singular_value(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    if (a.cols() > a.rows()) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace admixid
