#include "admixid/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "admixid/conditions.hpp"

namespace admixid {

std::uint64_t SplitMix64::below(std::uint64_t bound) noexcept {
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = -bound % bound;
    while (true) {
        const std::uint64_t x = next();
        if (x >= limit) return x % bound;
    }
}

GenotypeMatrix::GenotypeMatrix(GenotypeData g) : g_(std::move(g)) {
    if (g_.size() == 0) throw Error(ErrorKind::InvalidMatrix, "genotype matrix is empty");
    if ((g_.array() > 2).any()) throw Error(ErrorKind::InvalidMatrix, "genotype entries must be 0, 1 or 2");
}

GenotypeMatrix simulate_genotypes(const Matrix& pi, Seed seed) {
    validate_matrix(pi, "Pi");
    for (Index s = 0; s < pi.rows(); ++s) {
        for (Index i = 0; i < pi.cols(); ++i) {
            if (!(pi(s, i) >= 0.0 && pi(s, i) <= 1.0)) {
                throw Error(ErrorKind::EntryOutOfRange, "Pi[" + std::to_string(s) + ", " + std::to_string(i) +
                                                            "] = " + std::to_string(pi(s, i)) + " is outside [0, 1]");
            }
        }
    }
    GenotypeData g(pi.rows(), pi.cols());
    for (Index s = 0; s < pi.rows(); ++s) {
        SplitMix64 rng(seed ^ static_cast<Seed>(s));
        for (Index i = 0; i < pi.cols(); ++i) {
            const double p = pi(s, i);
            const int first = rng.uniform() < p ? 1 : 0;
            const int second = rng.uniform() < p ? 1 : 0;
            g(s, i) = static_cast<std::uint8_t>(first + second);
        }
    }
    return GenotypeMatrix(std::move(g));
}

GenotypeMatrix simulate_genotypes(const ExpectedFreqMatrix& pi, Seed seed) {
    return simulate_genotypes(pi.matrix(), seed);
}

std::string_view to_string(ModelClass c) noexcept {
    switch (c) {
        case ModelClass::AnchorQ: return "M'";
        case ModelClass::AnchorF: return "M''";
        case ModelClass::Unadmixed: return "M'''";
    }
    return "unknown";
}

ModelClass parse_model_class(std::string_view name) {
    if (name == "M'" || name == "anchorQ") return ModelClass::AnchorQ;
    if (name == "M''" || name == "anchorF") return ModelClass::AnchorF;
    if (name == "M'''" || name == "unadmixed") return ModelClass::Unadmixed;
    throw Error(ErrorKind::ParseError, "unknown model class '" + std::string(name) + "'");
}

Index max_populations(ModelClass c, Index m, Index n) {
    switch (c) {
        case ModelClass::AnchorQ: return std::min(m + 1, n);
        case ModelClass::AnchorF: return std::min(m, n);
        case ModelClass::Unadmixed: return n;
    }
    return 0;
}

namespace {

constexpr int kMaxAttempts = 100;
constexpr double kConditioningFloor = 1e-3;

Matrix uniform_matrix(SplitMix64& rng, Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        for (Index c = 0; c < cols; ++c) m(r, c) = rng.uniform();
    }
    return m;
}

// Columns drawn from the flat Dirichlet via normalised exponentials.
Matrix dirichlet_columns(SplitMix64& rng, Index k, Index n) {
    Matrix q(k, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < k; ++j) q(j, i) = -std::log1p(-rng.uniform());
        const double total = q.col(i).sum();
        if (total > 0.0) {
            q.col(i) /= total;
        } else {
            q.col(i).setConstant(1.0 / static_cast<double>(k));
        }
    }
    return q;
}

// First k entries of a Fisher-Yates shuffle of 0..n-1.
std::vector<Index> random_positions(SplitMix64& rng, Index n, Index k) {
    std::vector<Index> pos(static_cast<std::size_t>(n));
    std::iota(pos.begin(), pos.end(), Index{0});
    for (Index i = 0; i < k; ++i) {
        const auto j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(pos[static_cast<std::size_t>(i)], pos[static_cast<std::size_t>(j)]);
    }
    pos.resize(static_cast<std::size_t>(k));
    return pos;
}

double affine_conditioning(const Matrix& f) {
    if (f.cols() <= 1) return 1.0;
    const Matrix diff = f.leftCols(f.cols() - 1).colwise() - f.col(f.cols() - 1);
    return smallest_singular_value(diff);
}

double column_separation(const Matrix& f) {
    double best = 1.0;
    for (Index a = 0; a < f.cols(); ++a) {
        for (Index b = a + 1; b < f.cols(); ++b) best = std::min(best, max_abs(f.col(a) - f.col(b)));
    }
    return best;
}

FactorPair draw_anchor_q(SplitMix64& rng, Index k, Index m, Index n, const Tolerance& tol) {
    Matrix f = uniform_matrix(rng, m, k);
    Matrix q = dirichlet_columns(rng, k, n);
    const auto anchors = random_positions(rng, n, k);
    for (Index j = 0; j < k; ++j) q.col(anchors[static_cast<std::size_t>(j)]) = unit_vector(k, j);
    if (affine_conditioning(f) < kConditioningFloor) throw Error(ErrorKind::GenerationFailed, "ill-conditioned F");
    return FactorPair(FrequencyMatrix(std::move(f), tol), AdmixtureMatrix(std::move(q), tol));
}

FactorPair draw_anchor_f(SplitMix64& rng, Index k, Index m, Index n, const Tolerance& tol) {
    Matrix f = uniform_matrix(rng, m, k);
    const auto anchors = random_positions(rng, m, k);
    for (Index j = 0; j < k; ++j) {
        // Anchor heights in [0.1, 1) keep the rows well away from zero.
        const double height = 0.1 + 0.9 * rng.uniform();
        f.row(anchors[static_cast<std::size_t>(j)]) = height * unit_vector(k, j).transpose();
    }
    Matrix q = dirichlet_columns(rng, k, n);
    if (smallest_singular_value(q.transpose()) < kConditioningFloor) {
        throw Error(ErrorKind::GenerationFailed, "ill-conditioned Q");
    }
    return FactorPair(FrequencyMatrix(std::move(f), tol), AdmixtureMatrix(std::move(q), tol));
}

FactorPair draw_unadmixed(SplitMix64& rng, Index k, Index m, Index n, const Tolerance& tol) {
    Matrix f = uniform_matrix(rng, m, k);
    Matrix q = Matrix::Zero(k, n);
    const auto anchors = random_positions(rng, n, k);
    std::vector<bool> planted(static_cast<std::size_t>(n), false);
    for (Index j = 0; j < k; ++j) {
        q(j, anchors[static_cast<std::size_t>(j)]) = 1.0;
        planted[static_cast<std::size_t>(anchors[static_cast<std::size_t>(j)])] = true;
    }
    for (Index i = 0; i < n; ++i) {
        if (!planted[static_cast<std::size_t>(i)]) q(static_cast<Index>(rng.below(static_cast<std::uint64_t>(k))), i) = 1.0;
    }
    if (column_separation(f) < kConditioningFloor) throw Error(ErrorKind::GenerationFailed, "near-identical columns");
    return FactorPair(FrequencyMatrix(std::move(f), tol), AdmixtureMatrix(std::move(q), tol));
}

}  // namespace

FactorPair generate_instance(ModelClass c, Index k, Index m, Index n, Seed seed, const Tolerance& tol) {
    if (k < 1 || m < 1 || n < 1) {
        throw Error(ErrorKind::DimensionBound, "K, M and N must be positive");
    }
    const Index bound = max_populations(c, m, n);
    if (k > bound) {
        throw Error(ErrorKind::DimensionBound, "K = " + std::to_string(k) + " exceeds " + std::to_string(bound) +
                                                   " for class " + std::string(to_string(c)));
    }

    SplitMix64 rng(seed);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        try {
            FactorPair pair = c == ModelClass::AnchorQ   ? draw_anchor_q(rng, k, m, n, tol)
                              : c == ModelClass::AnchorF ? draw_anchor_f(rng, k, m, n, tol)
                                                         : draw_unadmixed(rng, k, m, n, tol);
            const ConditionReport report = classify(pair.f, pair.q, tol);
            const bool member = c == ModelClass::AnchorQ   ? report.identifiable_anchor_q
                                : c == ModelClass::AnchorF ? report.identifiable_anchor_f
                                                           : report.identifiable_unadmixed;
            if (member) return pair;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::GenerationFailed) throw;
        }
    }
    throw Error(ErrorKind::GenerationFailed, "no member of class " + std::string(to_string(c)) + " after " +
                                                 std::to_string(kMaxAttempts) + " attempts");
}

}  // namespace admixid
