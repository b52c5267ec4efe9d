#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperchrom {

enum class ErrorKind {
    VertexOutOfRange,
    EmptyEdge,
    NonUniform,
    DuplicateVertexInTuple,
    PartialColoring,
    NotWithinLimit,
    SearchCapExceeded,
    BadArity,
    BudgetExceeded,
    ParamViolation,
    AttemptsExhausted,
    EdgesOverlap,
    EmptyS,
    HypothesisViolated,
    PostconditionFailed,
    AuditFailed,
    ImproperInput,
    NotF5Free,
    InternalInvariant,
    NoWitness,
    GroundTooLarge,
    ImproperColoring,
    ParseError,
};

const char* to_string(ErrorKind kind);

// Every library failure is reported through this type. `witness` carries a
// vertex list when the failure has a concrete certificate (for instance the
// F5 copy behind NotF5Free).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::vector<std::uint32_t> witness = {})
        : std::runtime_error(std::string(to_string(kind)) + ": " + message)
        , kind_(kind)
        , witness_(std::move(witness))
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    const std::vector<std::uint32_t>& witness() const noexcept { return witness_; }

private:
    ErrorKind kind_;
    std::vector<std::uint32_t> witness_;
};

} // namespace hyperchrom
