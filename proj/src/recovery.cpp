#include "admixid/recovery.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "admixid/cone.hpp"
#include "admixid/conditions.hpp"
#include "admixid/convex.hpp"

namespace admixid {

std::string_view to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::AnchorQ: return "anchorQ";
        case Regime::AnchorF: return "anchorF";
        case Regime::Unadmixed: return "unadmixed";
    }
    return "unknown";
}

Regime parse_regime(std::string_view name) {
    if (name == "anchorQ") return Regime::AnchorQ;
    if (name == "anchorF") return Regime::AnchorF;
    if (name == "unadmixed") return Regime::Unadmixed;
    throw Error(ErrorKind::ParseError, "unknown regime '" + std::string(name) + "'");
}

namespace {

FactorPair build_pair(Matrix f, Matrix q, const Tolerance& tol) {
    try {
        return FactorPair(FrequencyMatrix(std::move(f), tol), AdmixtureMatrix(std::move(q), tol));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::InvalidMatrix) throw;
        throw Error(ErrorKind::DecompositionInfeasible, std::string("recovered factors leave their class: ") + e.what());
    }
}

void near_duplicate_warnings(const Matrix& columns, const Tolerance& tol, const char* what,
                             std::vector<std::string>& warnings) {
    for (Index a = 0; a < columns.cols(); ++a) {
        for (Index b = a + 1; b < columns.cols(); ++b) {
            const double d = max_abs(columns.col(a) - columns.col(b));
            if (d > tol.eq_tol && d <= 10.0 * tol.eq_tol) {
                std::ostringstream msg;
                msg << "near-duplicate " << what << " " << a << " and " << b << " (distance " << d << ")";
                warnings.push_back(msg.str());
            }
        }
    }
}

RecoveredFactorization finish(const ExpectedFreqMatrix& pi, FactorPair pair, Regime regime, const Tolerance& tol,
                              std::vector<std::string> warnings) {
    const Matrix product = pair.f.matrix() * pair.q.matrix();
    const double residual = max_abs(product - pi.matrix());
    if (residual > 10.0 * tol.eq_tol) {
        std::ostringstream msg;
        msg << "residual " << residual << " exceeds " << 10.0 * tol.eq_tol;
        throw Error(ErrorKind::DecompositionInfeasible, msg.str());
    }
    const ConditionReport report = classify(pair.f, pair.q, tol);
    const bool member = regime == Regime::AnchorQ   ? report.identifiable_anchor_q
                        : regime == Regime::AnchorF ? report.identifiable_anchor_f
                                                    : report.identifiable_unadmixed;
    if (!member) {
        throw Error(ErrorKind::DecompositionInfeasible,
                    "recovered factors are not in the " + std::string(to_string(regime)) + " model");
    }
    const Index k = pair.populations();
    return RecoveredFactorization{std::move(pair), k, residual, regime, std::move(warnings)};
}

}  // namespace

RecoveredFactorization recover_anchor_q(const ExpectedFreqMatrix& pi, const Tolerance& tol) {
    const Matrix& p = pi.matrix();
    const IndexSet extreme = minimal_generating_columns(p, tol);
    Matrix f = select_columns(p, extreme);
    if (!has_unique_decompositions(f, tol)) {
        throw Error(ErrorKind::NonUniqueDecomposition,
                    "the " + std::to_string(f.cols()) + " extreme columns are affinely dependent");
    }
    Matrix q(f.cols(), p.cols());
    for (Index i = 0; i < p.cols(); ++i) {
        auto w = convex_decompose(p.col(i), f, tol);
        if (!w) {
            throw Error(ErrorKind::DecompositionInfeasible,
                        "column " + std::to_string(i) + " is outside the hull of the extreme columns");
        }
        q.col(i) = w->weights;
    }
    std::vector<std::string> warnings;
    near_duplicate_warnings(f, tol, "extreme columns", warnings);
    return finish(pi, build_pair(std::move(f), std::move(q), tol), Regime::AnchorQ, tol, std::move(warnings));
}

RecoveredFactorization recover_anchor_f(const ExpectedFreqMatrix& pi, const Tolerance& tol) {
    const Matrix& p = pi.matrix();
    std::vector<Index> nonzero;
    for (Index s = 0; s < p.rows(); ++s) {
        if (max_abs(p.row(s)) > tol.eq_tol) nonzero.push_back(s);
    }
    if (nonzero.empty()) throw Error(ErrorKind::DecompositionInfeasible, "every row of Pi is zero");

    const Matrix candidates = select_rows(p, nonzero);
    const IndexSet local = minimal_conic_generating_rows(candidates, tol);
    Matrix rays(static_cast<Index>(local.size()), p.cols());
    for (std::size_t k = 0; k < local.size(); ++k) {
        rays.row(static_cast<Index>(k)) = canonical_ray(candidates.row(local[k]).transpose()).transpose();
    }
    if (numeric_rank(rays, tol) != rays.rows()) {
        throw Error(ErrorKind::NonUniqueDecomposition,
                    "the " + std::to_string(rays.rows()) + " extreme rays are linearly dependent");
    }

    // Scale factors with eps' R = e'.
    const Vector eps = rays.transpose().colPivHouseholderQr().solve(Vector::Ones(p.cols()));
    const double scaling_gap = max_abs(rays.transpose() * eps - Vector::Ones(p.cols()));
    if (scaling_gap > tol.eq_tol || eps.minCoeff() <= 0.0) {
        std::ostringstream msg;
        msg << "no positive scaling makes the extreme rays column-stochastic (gap " << scaling_gap
            << ", min factor " << eps.minCoeff() << ")";
        throw Error(ErrorKind::ScalingInfeasible, msg.str());
    }
    Matrix q = eps.asDiagonal() * rays;

    Matrix f(p.rows(), q.rows());
    for (Index s = 0; s < p.rows(); ++s) {
        auto w = conic_decompose(p.row(s).transpose(), q, tol);
        if (!w) {
            throw Error(ErrorKind::DecompositionInfeasible,
                        "row " + std::to_string(s) + " is outside the cone of the extreme rays");
        }
        f.row(s) = w->weights.transpose();
    }
    std::vector<std::string> warnings;
    near_duplicate_warnings(q.transpose(), tol, "extreme rays", warnings);
    return finish(pi, build_pair(std::move(f), std::move(q), tol), Regime::AnchorF, tol, std::move(warnings));
}

RecoveredFactorization recover_unadmixed(const ExpectedFreqMatrix& pi, const Tolerance& tol) {
    const Matrix& p = pi.matrix();
    std::vector<Index> distinct;
    for (Index i = 0; i < p.cols(); ++i) {
        const bool seen = std::any_of(distinct.begin(), distinct.end(),
                                      [&](Index j) { return max_abs(p.col(i) - p.col(j)) <= tol.eq_tol; });
        if (!seen) distinct.push_back(i);
    }
    Matrix f = select_columns(p, distinct);
    Matrix q = Matrix::Zero(f.cols(), p.cols());
    for (Index i = 0; i < p.cols(); ++i) {
        std::optional<Index> match;
        for (Index k = 0; k < f.cols(); ++k) {
            if (max_abs(p.col(i) - f.col(k)) > tol.eq_tol) continue;
            if (match) {
                throw Error(ErrorKind::AmbiguousAssignment, "column " + std::to_string(i) + " matches populations " +
                                                                std::to_string(*match) + " and " + std::to_string(k));
            }
            match = k;
        }
        q(*match, i) = 1.0;
    }
    std::vector<std::string> warnings;
    near_duplicate_warnings(f, tol, "population columns", warnings);
    return finish(pi, build_pair(std::move(f), std::move(q), tol), Regime::Unadmixed, tol, std::move(warnings));
}

RecoveredFactorization recover(const ExpectedFreqMatrix& pi, Regime regime, const Tolerance& tol) {
    switch (regime) {
        case Regime::AnchorQ: return recover_anchor_q(pi, tol);
        case Regime::AnchorF: return recover_anchor_f(pi, tol);
        case Regime::Unadmixed: return recover_unadmixed(pi, tol);
    }
    throw Error(ErrorKind::ParseError, "unknown regime");
}

RecoveredFactorization recover_auto(const ExpectedFreqMatrix& pi, const Tolerance& tol) {
    std::string failures;
    for (Regime regime : {Regime::AnchorQ, Regime::AnchorF, Regime::Unadmixed}) {
        try {
            return recover(pi, regime, tol);
        } catch (const Error& e) {
            if (!failures.empty()) failures += "; ";
            failures += std::string(to_string(regime)) + ": " + e.what();
        }
    }
    throw Error(ErrorKind::DecompositionInfeasible, "no regime validates (" + failures + ")");
}

}  // namespace admixid
