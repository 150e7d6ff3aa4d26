#include "admixid/counterexamples.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "admixid/conditions.hpp"
#include "admixid/convex.hpp"
#include "admixid/equivalence.hpp"

namespace admixid {

namespace {

struct Names {
    Construction construction;
    std::string_view tag;
    std::string_view command;
};

constexpr std::array<Names, 8> kNames{{
    {Construction::QInteriorColumn, "Q_interior_column", "perturb_interior_Q_column"},
    {Construction::RRotationQ, "R_rotation_Q", "rotate_R_Q"},
    {Construction::FRowPerturbation, "F_row_perturbation", "perturb_F_row"},
    {Construction::RRotationF, "R_rotation_F", "rotate_R_F"},
    {Construction::NecessityPQ, "necessity_pq", "necessity_pq"},
    {Construction::NecessityFRows, "necessity_F_rows", "necessity_F_rows"},
    {Construction::UnadmixedDupColumn, "unadmixed_dup_column", "unadmixed_dup_column"},
    {Construction::UnadmixedMissingAnchor, "unadmixed_missing_anchor", "unadmixed_missing_anchor"},
}};

[[noreturn]] void violated(const std::string& hypothesis) {
    throw Error(ErrorKind::PreconditionViolated, hypothesis);
}

CounterexamplePair finalize(FactorPair original, FactorPair alternative, Construction construction,
                            CounterexampleParameters parameters, const Tolerance& tol) {
    const double gap = max_abs(original.f.matrix() * original.q.matrix() -
                               alternative.f.matrix() * alternative.q.matrix());
    if (gap > 10.0 * tol.eq_tol) {
        std::ostringstream msg;
        msg << to_string(construction) << ": product gap " << gap << " exceeds " << 10.0 * tol.eq_tol;
        throw Error(ErrorKind::ConstructionFailed, msg.str());
    }
    const EquivalenceVerdict verdict = are_equivalent(original, alternative, tol);
    if (verdict.equivalent()) {
        throw Error(ErrorKind::ConstructionFailed,
                    std::string(to_string(construction)) + ": alternative pair is equivalent to the original");
    }
    return CounterexamplePair{std::move(original), std::move(alternative), gap, construction, std::move(parameters),
                              verdict.reason};
}

FrequencyMatrix as_frequency(Matrix m, const Tolerance& tol, const char* what) {
    try {
        return FrequencyMatrix(std::move(m), tol);
    } catch (const Error& e) {
        throw Error(ErrorKind::ConstructionFailed, std::string(what) + ": " + e.what());
    }
}

AdmixtureMatrix as_admixture(Matrix m, const Tolerance& tol, const char* what) {
    try {
        return AdmixtureMatrix(std::move(m), tol);
    } catch (const Error& e) {
        throw Error(ErrorKind::ConstructionFailed, std::string(what) + ": " + e.what());
    }
}

void check_delta(double delta) {
    if (!(delta > 0.0 && delta < 0.5)) {
        throw Error(ErrorKind::DeltaOutOfRange, "delta must lie in (0, 1/2), got " + std::to_string(delta));
    }
}

double auto_delta(double largest_feasible) { return std::min(0.49, largest_feasible / 2.0); }

Index partner_of(Index k0) { return k0 == 0 ? 1 : 0; }

// min over entries of min(x, 1 - x).
double interior_margin(const Eigen::Ref<const Vector>& entries) {
    return std::min(entries.minCoeff(), 1.0 - entries.maxCoeff());
}

}  // namespace

std::string_view to_string(Construction c) noexcept {
    for (const auto& n : kNames) {
        if (n.construction == c) return n.tag;
    }
    return "unknown";
}

std::string_view command_name(Construction c) noexcept {
    for (const auto& n : kNames) {
        if (n.construction == c) return n.command;
    }
    return "unknown";
}

Construction parse_construction(std::string_view name) {
    for (const auto& n : kNames) {
        if (n.tag == name || n.command == name) return n.construction;
    }
    throw Error(ErrorKind::ParseError, "unknown construction '" + std::string(name) + "'");
}

Matrix rotation_q(Index k, Index partner, Index k0, double delta) {
    Matrix r = Matrix::Identity(k, k);
    r(partner, k0) = delta;
    r(k0, k0) = 1.0 - delta;
    return r;
}

Matrix rotation_q_inverse(Index k, Index partner, Index k0, double delta) {
    Matrix r = Matrix::Identity(k, k);
    r(partner, k0) = -delta / (1.0 - delta);
    r(k0, k0) = 1.0 / (1.0 - delta);
    return r;
}

Matrix rotation_f(Index k, Index partner, Index k0, double delta) {
    Matrix r = Matrix::Identity(k, k);
    r(partner, partner) = 1.0 - delta;
    r(k0, partner) = delta;
    return r;
}

Matrix rotation_f_inverse(Index k, Index partner, Index k0, double delta) {
    Matrix r = Matrix::Identity(k, k);
    r(partner, partner) = 1.0 / (1.0 - delta);
    r(k0, partner) = -delta / (1.0 - delta);
    return r;
}

CounterexamplePair perturb_interior_q_column(const FrequencyMatrix& f, const AdmixtureMatrix& q,
                                             const Tolerance& tol) {
    if (f.populations() != q.populations()) throw Error(ErrorKind::DimensionMismatch, "F and Q disagree on K");
    const Index k = f.populations();
    const Index n = q.individuals();
    if (k < 2) violated("K >= 2");
    if (n < k + 1) violated("N >= K + 1");
    if (check_indep_f(f, tol)) violated("columns of F must be affinely dependent (F not in F^in)");
    if (!check_anchor_q(q, tol).holds) violated("Q must satisfy the anchor condition");

    std::optional<Index> interior;
    for (Index i = 0; i < n && !interior; ++i) {
        if (q.matrix().col(i).minCoeff() > tol.eq_tol) interior = i;
    }
    if (!interior) violated("Q needs a column with every entry positive");

    const Vector known = q.matrix().col(*interior);
    const Vector target = f.matrix() * known;
    const ConvexWeights alt = alternative_decomposition(target, f.matrix(), ConvexWeights{known}, tol);

    Matrix q2 = q.matrix();
    q2.col(*interior) = alt.weights;
    CounterexampleParameters params;
    params.column = *interior;
    return finalize(FactorPair(f, q), FactorPair(f, as_admixture(std::move(q2), tol, "Q2")),
                    Construction::QInteriorColumn, std::move(params), tol);
}

CounterexamplePair rotate_r_q(const FrequencyMatrix& f, const AdmixtureMatrix& q, std::optional<double> delta,
                              std::optional<Index> k0, const Tolerance& tol) {
    if (f.populations() != q.populations()) throw Error(ErrorKind::DimensionMismatch, "F and Q disagree on K");
    const Index k = f.populations();
    if (k < 2) violated("K >= 2");
    if (delta) check_delta(*delta);
    if (k0 && (*k0 < 0 || *k0 >= k)) violated("k0 must be a population index");
    if (!check_indep_f(f, tol)) violated("F must be in F^in");

    const Matrix& fm = f.matrix();
    auto feasible = [&](Index col) {
        const double margin = interior_margin(fm.col(col));
        return delta ? margin >= *delta - tol.eq_tol : margin > tol.eq_tol;
    };
    std::optional<Index> chosen;
    if (k0) {
        if (feasible(*k0)) chosen = k0;
    } else {
        for (Index col = 0; col < k && !chosen; ++col) {
            if (feasible(col)) chosen = col;
        }
    }
    if (!chosen) {
        throw Error(ErrorKind::NoBoundedColumn, "no column of F stays within [delta, 1 - delta]");
    }
    const double d = delta ? *delta : auto_delta(interior_margin(fm.col(*chosen)));
    const Index partner = partner_of(*chosen);

    Matrix f2 = fm * rotation_q_inverse(k, partner, *chosen, d);
    Matrix q2 = rotation_q(k, partner, *chosen, d) * q.matrix();
    CounterexampleParameters params;
    params.delta = d;
    params.population = *chosen;
    params.partner = partner;
    return finalize(FactorPair(f, q),
                    FactorPair(as_frequency(std::move(f2), tol, "F R^-1"), as_admixture(std::move(q2), tol, "R Q")),
                    Construction::RRotationQ, std::move(params), tol);
}

CounterexamplePair perturb_f_row(const FrequencyMatrix& f, const AdmixtureMatrix& q, const Tolerance& tol) {
    if (f.populations() != q.populations()) throw Error(ErrorKind::DimensionMismatch, "F and Q disagree on K");
    const Index k = f.populations();
    if (k < 2) violated("K >= 2");
    if (f.snps() < k + 1) violated("M >= K + 1");
    if (!check_anchor_f(f, tol).holds) violated("F must satisfy the anchor condition");
    if (check_indep_q(q, tol)) violated("rows of Q must be linearly dependent (Q not in Q^in)");

    const Matrix& fm = f.matrix();
    std::optional<Index> row;
    for (Index s = 0; s < fm.rows() && !row; ++s) {
        if (interior_margin(fm.row(s).transpose()) > tol.eq_tol) row = s;
    }
    if (!row) violated("F needs a row with every entry strictly inside (0, 1)");

    const auto v = null_space_vector(q.matrix(), tol);
    if (!v) violated("Q has no left null vector");
    const double delta = auto_delta(interior_margin(fm.row(*row).transpose()));
    const double alpha = 0.5 * delta / v->cwiseAbs().maxCoeff();

    Matrix f2 = fm;
    f2.row(*row) += alpha * v->transpose();
    CounterexampleParameters params;
    params.delta = delta;
    params.alpha = alpha;
    params.direction = *v;
    params.row = *row;
    return finalize(FactorPair(f, q), FactorPair(as_frequency(std::move(f2), tol, "F2"), q),
                    Construction::FRowPerturbation, std::move(params), tol);
}

CounterexamplePair rotate_r_f(const FrequencyMatrix& f, const AdmixtureMatrix& q, std::optional<double> delta,
                              std::optional<Index> k0, const Tolerance& tol) {
    if (f.populations() != q.populations()) throw Error(ErrorKind::DimensionMismatch, "F and Q disagree on K");
    const Index k = f.populations();
    if (k < 2) violated("K >= 2");
    if (delta) check_delta(*delta);
    if (k0 && (*k0 < 0 || *k0 >= k)) violated("k0 must be a population index");
    if (!check_indep_q(q, tol)) violated("Q must be in Q^in");

    const Matrix& qm = q.matrix();
    auto feasible = [&](Index r) {
        const double low = qm.row(r).minCoeff();
        return delta ? low >= *delta - tol.eq_tol : low > tol.eq_tol;
    };
    std::optional<Index> chosen;
    if (k0) {
        if (feasible(*k0)) chosen = k0;
    } else {
        for (Index r = 0; r < k && !chosen; ++r) {
            if (feasible(r)) chosen = r;
        }
    }
    if (!chosen) throw Error(ErrorKind::NoBoundedRow, "no row of Q is bounded below by delta");
    const double d = delta ? *delta : auto_delta(qm.row(*chosen).minCoeff());
    const Index partner = partner_of(*chosen);

    Matrix f2 = f.matrix() * rotation_f(k, partner, *chosen, d);
    Matrix q2 = rotation_f_inverse(k, partner, *chosen, d) * qm;
    CounterexampleParameters params;
    params.delta = d;
    params.population = *chosen;
    params.partner = partner;
    return finalize(FactorPair(f, q),
                    FactorPair(as_frequency(std::move(f2), tol, "F R"), as_admixture(std::move(q2), tol, "R^-1 Q")),
                    Construction::RRotationF, std::move(params), tol);
}

CounterexamplePair necessity_pq(const FrequencyMatrix& f, Index n, const Tolerance& tol) {
    const Index k = f.populations();
    if (k >= n) violated("K(F) < N");
    const auto a = affine_dependence(f.matrix(), tol);
    if (!a) violated("columns of F must be affinely dependent (F not in F^in)");

    const Vector uniform = Vector::Constant(k, 1.0 / static_cast<double>(k));
    const Vector p = shift_to_boundary(uniform, *a);
    const Vector q = shift_to_boundary(uniform, -*a);

    auto assemble = [&](const Vector& first) {
        Matrix out = Matrix::Zero(k, n);
        out.col(0) = first;
        out.middleCols(1, k).setIdentity();
        for (Index i = k + 1; i < n; ++i) out(0, i) = 1.0;
        return out;
    };
    CounterexampleParameters params;
    params.direction = *a;
    return finalize(FactorPair(f, as_admixture(assemble(p), tol, "Q^p")),
                    FactorPair(f, as_admixture(assemble(q), tol, "Q^q")), Construction::NecessityPQ,
                    std::move(params), tol);
}

CounterexamplePair necessity_f_rows(const AdmixtureMatrix& q, Index m, const Tolerance& tol) {
    const Index k = q.populations();
    if (k >= m) violated("K(Q) < M");
    if (check_indep_q(q, tol)) violated("rows of Q must be linearly dependent (Q not in Q^in)");
    const auto v = null_space_vector(q.matrix(), tol);
    if (!v) violated("Q has no left null vector");

    // |delta v_i| <= 1/4 keeps the perturbed row inside [1/4, 3/4].
    const double delta = 0.25 / v->cwiseAbs().maxCoeff();
    Matrix f1 = Matrix::Zero(m, k);
    f1.row(0).setConstant(0.5);
    f1.middleRows(1, k).setIdentity();
    for (Index s = k + 1; s < m; ++s) f1(s, 0) = 1.0;
    Matrix f2 = f1;
    f2.row(0) += delta * v->transpose();

    CounterexampleParameters params;
    params.delta = delta;
    params.direction = *v;
    return finalize(FactorPair(as_frequency(std::move(f1), tol, "F1"), q),
                    FactorPair(as_frequency(std::move(f2), tol, "F2"), q), Construction::NecessityFRows,
                    std::move(params), tol);
}

CounterexamplePair unadmixed_dup_column(const FrequencyMatrix& f, Index n, const Tolerance& tol) {
    const Index k = f.populations();
    if (k < 2) violated("K >= 2");
    if (n <= k) violated("N > K");
    const Matrix& fm = f.matrix();
    std::optional<std::pair<Index, Index>> dup;
    for (Index a = 0; a < k && !dup; ++a) {
        for (Index b = a + 1; b < k && !dup; ++b) {
            if (max_abs(fm.col(a) - fm.col(b)) <= tol.eq_tol) dup = std::pair{a, b};
        }
    }
    if (!dup) throw Error(ErrorKind::NoDuplicateColumns, "F has no two identical columns");

    auto assemble = [&](Index label) {
        Matrix out = Matrix::Zero(k, n);
        out.leftCols(k).setIdentity();
        for (Index i = k; i < n; ++i) out(label, i) = 1.0;
        return out;
    };
    CounterexampleParameters params;
    params.population = dup->first;
    params.partner = dup->second;
    return finalize(FactorPair(f, as_admixture(assemble(dup->first), tol, "Q1")),
                    FactorPair(f, as_admixture(assemble(dup->second), tol, "Q2")),
                    Construction::UnadmixedDupColumn, std::move(params), tol);
}

CounterexamplePair unadmixed_missing_anchor(const FrequencyMatrix& f, const AdmixtureMatrix& q,
                                            const Tolerance& tol) {
    if (f.populations() != q.populations()) throw Error(ErrorKind::DimensionMismatch, "F and Q disagree on K");
    const Index k = f.populations();
    if (k < 2) violated("K >= 2");
    std::vector<bool> used(static_cast<std::size_t>(k), false);
    for (Index i = 0; i < q.individuals(); ++i) {
        auto label = basis_index(q.matrix().col(i), tol);
        if (!label) violated("every column of Q must be a standard basis vector");
        used[static_cast<std::size_t>(*label)] = true;
    }
    const auto missing = std::find(used.begin(), used.end(), false);
    if (missing == used.end()) violated("some e_k must be missing from the columns of Q");
    if (!check_distinct_columns(f, tol)) violated("columns of F must be mutually different");
    const Index target = static_cast<Index>(missing - used.begin());

    const Matrix& fm = f.matrix();
    auto separated = [&](const Vector& c) {
        for (Index j = 0; j < k; ++j) {
            if (max_abs(c - fm.col(j)) <= tol.eq_tol) return false;
        }
        return true;
    };
    Vector column = Vector::Ones(fm.rows()) - fm.col(target);
    for (int attempt = 0; attempt < 20 && !separated(column); ++attempt) {
        column = column.unaryExpr([](double x) { return std::fmod(x + 0.1, 1.0); });
    }
    if (!separated(column)) throw Error(ErrorKind::ConstructionFailed, "could not find a new distinct column");

    Matrix f2 = fm;
    f2.col(target) = column;
    CounterexampleParameters params;
    params.population = target;
    return finalize(FactorPair(f, q), FactorPair(as_frequency(std::move(f2), tol, "F2"), q),
                    Construction::UnadmixedMissingAnchor, std::move(params), tol);
}

}  // namespace admixid
