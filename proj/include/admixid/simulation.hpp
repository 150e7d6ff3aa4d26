#pragma once

#include <cstdint>
#include <string_view>

#include "admixid/matrix.hpp"

namespace admixid {

using Seed = std::uint64_t;

// SplitMix64 (Steele, Lea, Flood 2014). State advances by 0x9E3779B97F4A7C15
// and each output is the state passed through the variant-13 finalizer.
class SplitMix64 {
public:
    explicit SplitMix64(Seed seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Top 53 bits scaled into [0, 1).
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound) by rejection, bound > 0.
    std::uint64_t below(std::uint64_t bound) noexcept;

private:
    std::uint64_t state_;
};

using GenotypeData = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

// M x N genotype counts, each entry 0, 1 or 2.
class GenotypeMatrix {
public:
    explicit GenotypeMatrix(GenotypeData g);

    const GenotypeData& data() const noexcept { return g_; }
    Index snps() const noexcept { return g_.rows(); }
    Index individuals() const noexcept { return g_.cols(); }
    Matrix as_real() const { return g_.cast<double>(); }

private:
    GenotypeData g_;
};

// G[s, i] ~ Binomial(2, Pi[s, i]) as the sum of two Bernoulli draws
// (uniform() < Pi). Row s uses its own SplitMix64 seeded with seed ^ s and
// walks the row left to right. Throws EntryOutOfRange outside [0, 1].
GenotypeMatrix simulate_genotypes(const Matrix& pi, Seed seed);
GenotypeMatrix simulate_genotypes(const ExpectedFreqMatrix& pi, Seed seed);

enum class ModelClass { AnchorQ, AnchorF, Unadmixed };

std::string_view to_string(ModelClass c) noexcept;
// Accepts M', M'', M''' and anchorQ, anchorF, unadmixed.
ModelClass parse_model_class(std::string_view name);

// Largest K the class admits for M SNPs and N individuals.
Index max_populations(ModelClass c, Index m, Index n);

// Random member of the class. Entries of F are uniform, columns of Q are
// Dirichlet(1, ..., 1); anchors are planted at random positions. Draws are
// rejected until the pair classifies into the class and its independence
// condition holds with smallest singular value at least 1e-3 (100 attempts).
// Throws DimensionBound or GenerationFailed.
FactorPair generate_instance(ModelClass c, Index k, Index m, Index n, Seed seed, const Tolerance& tol = {});

}  // namespace admixid
