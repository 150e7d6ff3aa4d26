#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "admixid/convex.hpp"
#include "admixid/counterexamples.hpp"
#include "admixid/equivalence.hpp"
#include "admixid/recovery.hpp"
#include "admixid/simulation.hpp"
#include "fixtures.hpp"

using namespace admixid;

namespace {

Regime regime_for(ModelClass c) {
    switch (c) {
        case ModelClass::AnchorQ: return Regime::AnchorQ;
        case ModelClass::AnchorF: return Regime::AnchorF;
        case ModelClass::Unadmixed: return Regime::Unadmixed;
    }
    return Regime::AnchorQ;
}

}  // namespace

TEST_CASE("products of generated pairs are expected frequencies") {
    for (Seed seed = 0; seed < 50; ++seed) {
        const ModelClass c = static_cast<ModelClass>(seed % 3);
        const FactorPair p = generate_instance(c, 3, 6, 8, seed);
        const Matrix pi = p.f.matrix() * p.q.matrix();
        CHECK(pi.minCoeff() >= 0.0);
        CHECK(pi.maxCoeff() <= 1.0 + 1e-12);
        CHECK_NOTHROW(ExpectedFreqMatrix{pi});
    }
}

TEST_CASE("recovery commutes with reordering individuals") {
    for (Seed seed = 0; seed < 45; ++seed) {
        const ModelClass c = static_cast<ModelClass>(seed % 3);
        const FactorPair source = generate_instance(c, 3, 5, 7, seed);
        const Matrix pi = source.f.matrix() * source.q.matrix();

        std::vector<Index> order(7);
        std::iota(order.begin(), order.end(), Index{0});
        std::reverse(order.begin(), order.end());
        const Matrix shuffled = select_columns(pi, order);

        const RecoveredFactorization a = recover(ExpectedFreqMatrix(pi), regime_for(c));
        const RecoveredFactorization b = recover(ExpectedFreqMatrix(shuffled), regime_for(c));
        const FactorPair b_back(b.pair.f, AdmixtureMatrix(select_columns(b.pair.q.matrix(), order)));
        CAPTURE(seed);
        CHECK(are_equivalent(a.pair, b_back, Tolerance{1e-6, 1e-9}).equivalent());
    }
}

TEST_CASE("counterexample pairs share one expected frequency matrix") {
    const FrequencyMatrix f(fixtures::mat({{0.2, 0.6}, {0.5, 0.3}, {0.9, 0.4}}));
    const AdmixtureMatrix q(fixtures::mat({{1, 0, 0.3, 0.8}, {0, 1, 0.7, 0.2}}));
    const CounterexamplePair c = rotate_r_q(f, q);
    const Matrix p1 = c.original.f.matrix() * c.original.q.matrix();
    const Matrix p2 = c.alternative.f.matrix() * c.alternative.q.matrix();
    // Both pairs satisfy the anchor-individual model's other hypotheses but
    // only the original keeps every anchor, so recovery returns the original.
    const RecoveredFactorization r = recover(ExpectedFreqMatrix(p2), Regime::AnchorQ);
    CHECK(are_equivalent(c.original, r.pair, Tolerance{1e-6, 1e-9}).equivalent());
    CHECK((p1 - p2).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("equivalence is transitive along relabellings") {
    const FactorPair a = generate_instance(ModelClass::Unadmixed, 4, 5, 6, 3);
    const FactorPair b = relabel(a, PopulationPermutation{{2, 0, 3, 1}});
    const FactorPair c = relabel(b, PopulationPermutation{{1, 3, 0, 2}});
    REQUIRE(are_equivalent(a, b).equivalent());
    REQUIRE(are_equivalent(b, c).equivalent());
    CHECK(are_equivalent(a, c).equivalent());
}
