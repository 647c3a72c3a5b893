#include "h3/error.hpp"

namespace h3 {

const char* to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DegenerateTriple: return "DegenerateTriple";
    case ErrorCode::NotAnEdge: return "NotAnEdge";
    case ErrorCode::RepeatedEdge: return "RepeatedEdge";
    case ErrorCode::RepeatedVertex: return "RepeatedVertex";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::ClosedWalk: return "ClosedWalk";
    case ErrorCode::NoSharedConsecutivePair: return "NoSharedConsecutivePair";
    case ErrorCode::NoOppositeEnds: return "NoOppositeEnds";
    case ErrorCode::EdgeOverlap: return "EdgeOverlap";
    case ErrorCode::NoExtensionAvailable: return "NoExtensionAvailable";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::ConstructionFailed: return "ConstructionFailed";
    case ErrorCode::PartitionHasMixedEdge: return "PartitionHasMixedEdge";
    case ErrorCode::NotADecomposition: return "NotADecomposition";
    case ErrorCode::GadgetConstructionFailed: return "GadgetConstructionFailed";
    case ErrorCode::IterationBudgetExceeded: return "IterationBudgetExceeded";
    case ErrorCode::CodegreeBudgetExceeded: return "CodegreeBudgetExceeded";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
    case ErrorCode::VortexFailed: return "VortexFailed";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, std::string message, std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), index_(index)
{
}

void fail(ErrorCode code, const std::string& message, std::optional<std::size_t> index)
{
    throw Error(code, message, index);
}

} // namespace h3
