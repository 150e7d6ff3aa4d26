#include "admixid/error.hpp"

namespace admixid {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidMatrix: return "InvalidMatrix";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::UniqueDecomposition: return "UniqueDecomposition";
        case ErrorKind::NotOpenCombination: return "NotOpenCombination";
        case ErrorKind::NotACone: return "NotACone";
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::DecompositionInfeasible: return "DecompositionInfeasible";
        case ErrorKind::NonUniqueDecomposition: return "NonUniqueDecomposition";
        case ErrorKind::ScalingInfeasible: return "ScalingInfeasible";
        case ErrorKind::AmbiguousAssignment: return "AmbiguousAssignment";
        case ErrorKind::PreconditionViolated: return "PreconditionViolated";
        case ErrorKind::DeltaOutOfRange: return "DeltaOutOfRange";
        case ErrorKind::NoBoundedColumn: return "NoBoundedColumn";
        case ErrorKind::NoBoundedRow: return "NoBoundedRow";
        case ErrorKind::NoDuplicateColumns: return "NoDuplicateColumns";
        case ErrorKind::EntryOutOfRange: return "EntryOutOfRange";
        case ErrorKind::DimensionBound: return "DimensionBound";
        case ErrorKind::GenerationFailed: return "GenerationFailed";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ShapeError: return "ShapeError";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::ConstructionFailed: return "ConstructionFailed";
    }
    return "Unknown";
}

}  // namespace admixid
