#pragma once

#include <json.hpp>

#include "admixid/conditions.hpp"
#include "admixid/counterexamples.hpp"
#include "admixid/equivalence.hpp"
#include "admixid/recovery.hpp"

// JSON views of the library's result types, as emitted by the CLI.
namespace admixid {

using Json = nlohmann::ordered_json;

// Row-major nested arrays.
Json to_json(const Matrix& m);
Json to_json(const ConditionReport& r);
Json to_json(const EquivalenceVerdict& v);
Json to_json(const CounterexampleParameters& p);
// Matrices are embedded only when asked for; the CLI writes them as CSV otherwise.
Json to_json(const CounterexamplePair& c, bool with_matrices = false);
Json to_json(const RecoveredFactorization& r, bool with_matrices = false);

}  // namespace admixid
