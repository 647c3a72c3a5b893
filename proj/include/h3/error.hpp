#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace h3 {

enum class ErrorCode {
    OutOfRange,
    DegenerateTriple,
    NotAnEdge,
    RepeatedEdge,
    RepeatedVertex,
    TooShort,
    ClosedWalk,
    NoSharedConsecutivePair,
    NoOppositeEnds,
    EdgeOverlap,
    NoExtensionAvailable,
    BadParams,
    ConstructionFailed,
    PartitionHasMixedEdge,
    NotADecomposition,
    GadgetConstructionFailed,
    IterationBudgetExceeded,
    CodegreeBudgetExceeded,
    LimitExceeded,
    VortexFailed,
    PreconditionFailed,
    BudgetExceeded,
    ParseError,
};

const char* to_string(ErrorCode code);

// Carries a code and, where the failure has a position (walk index, step,
// path number, vortex level), that position.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::optional<std::size_t> index = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    std::optional<std::size_t> index() const noexcept { return index_; }

private:
    ErrorCode code_;
    std::optional<std::size_t> index_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message,
                       std::optional<std::size_t> index = std::nullopt);

} // namespace h3
