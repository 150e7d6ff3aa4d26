#include "admixid/conditions.hpp"

#include <algorithm>
#include <string>

#include "admixid/convex.hpp"

namespace admixid {

std::optional<Index> basis_index(const Vector& column, const Tolerance& tol) {
    for (Index k = 0; k < column.size(); ++k) {
        if (max_abs(column - Vector::Unit(column.size(), k)) <= tol.eq_tol) return k;
    }
    return std::nullopt;
}

AnchorCheck check_anchor_q(const AdmixtureMatrix& q, const Tolerance& tol) {
    const Matrix& m = q.matrix();
    AnchorCheck out;
    out.witnesses.assign(static_cast<std::size_t>(m.rows()), std::nullopt);
    for (Index i = 0; i < m.cols(); ++i) {
        if (auto k = basis_index(m.col(i), tol)) {
            auto& slot = out.witnesses[static_cast<std::size_t>(*k)];
            if (!slot) slot = i;
        }
    }
    out.holds = std::all_of(out.witnesses.begin(), out.witnesses.end(), [](const auto& w) { return w.has_value(); });
    return out;
}

AnchorCheck check_anchor_f(const FrequencyMatrix& f, const Tolerance& tol) {
    const Matrix& m = f.matrix();
    AnchorCheck out;
    out.witnesses.assign(static_cast<std::size_t>(m.cols()), std::nullopt);
    for (Index s = 0; s < m.rows(); ++s) {
        Index positive = -1;
        Index count = 0;
        for (Index k = 0; k < m.cols(); ++k) {
            if (m(s, k) > tol.eq_tol) {
                positive = k;
                ++count;
            }
        }
        if (count == 1) {
            auto& slot = out.witnesses[static_cast<std::size_t>(positive)];
            if (!slot) slot = s;
        }
    }
    out.holds = std::all_of(out.witnesses.begin(), out.witnesses.end(), [](const auto& w) { return w.has_value(); });
    return out;
}

bool check_indep_f(const FrequencyMatrix& f, const Tolerance& tol) {
    return has_unique_decompositions(f.matrix(), tol);
}

bool check_indep_q(const AdmixtureMatrix& q, const Tolerance& tol) {
    return numeric_rank(q.matrix(), tol) == q.populations();
}

bool check_distinct_columns(const FrequencyMatrix& f, const Tolerance& tol) {
    const Matrix& m = f.matrix();
    for (Index a = 0; a < m.cols(); ++a) {
        for (Index b = a + 1; b < m.cols(); ++b) {
            if (max_abs(m.col(a) - m.col(b)) <= tol.eq_tol) return false;
        }
    }
    return true;
}

bool check_unadmixed(const AdmixtureMatrix& q, const Tolerance& tol) {
    const Matrix& m = q.matrix();
    std::vector<bool> seen(static_cast<std::size_t>(m.rows()), false);
    for (Index i = 0; i < m.cols(); ++i) {
        auto k = basis_index(m.col(i), tol);
        if (!k) return false;
        seen[static_cast<std::size_t>(*k)] = true;
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

ConditionReport classify(const FrequencyMatrix& f, const AdmixtureMatrix& q, const Tolerance& tol) {
    if (f.populations() != q.populations()) {
        throw Error(ErrorKind::DimensionMismatch, "F has " + std::to_string(f.populations()) +
                                                      " columns but Q has " + std::to_string(q.populations()) +
                                                      " rows");
    }
    ConditionReport r;
    r.k = f.populations();
    r.m = f.snps();
    r.n = q.individuals();
    r.anchor_f = check_anchor_f(f, tol);
    r.anchor_q = check_anchor_q(q, tol);
    r.indep_f = check_indep_f(f, tol);
    r.indep_q = check_indep_q(q, tol);
    r.distinct_cols_f = check_distinct_columns(f, tol);
    r.unadmixed_q = check_unadmixed(q, tol);
    r.identifiable_anchor_q = r.indep_f && r.anchor_q.holds && r.k <= std::min(r.m + 1, r.n);
    r.identifiable_anchor_f = r.anchor_f.holds && r.indep_q && r.k <= std::min(r.m, r.n);
    r.identifiable_unadmixed = r.distinct_cols_f && r.unadmixed_q && r.k <= r.n;
    return r;
}

}  // namespace admixid
