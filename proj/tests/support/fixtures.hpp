#pragma once

#include <initializer_list>

#include "admixid/matrix.hpp"

namespace fixtures {

using admixid::Index;
using admixid::Matrix;
using admixid::Vector;

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
    Index r = 0;
    for (const auto& row : rows) {
        Index c = 0;
        for (double x : row) m(r, c++) = x;
        ++r;
    }
    return m;
}

inline Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Index>(xs.size()));
    Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

// Columns given as a list, e.g. cols({{0, 0}, {1, 0}}) is 2 x 2.
inline Matrix cols(std::initializer_list<std::initializer_list<double>> columns) {
    return mat(columns).transpose();
}

inline bool close(const Matrix& a, const Matrix& b, double tol = 1e-12) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || (a - b).cwiseAbs().maxCoeff() <= tol);
}

}  // namespace fixtures
