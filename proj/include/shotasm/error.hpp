#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shotasm {

enum class ErrorCode {
    MalformedJson,
    DuplicateShotId,
    UnknownLabel,
    EmbeddingDimMismatch,
    NegativeDuration,
    EmptySequence,
    KExceedsN,
    MissingEmbeddings,
    NoTransitions,
    AlphabetMismatch,
    UnknownShotId,
    ZeroVector,
    ShapeMismatch,
    InstanceTooLarge,
    NonFiniteInput,
    InvalidSpec,
    InvalidConfig,
    InvalidSequence,
    IoError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a machine-readable code so
// callers (notably the CLI) can map failure classes without parsing text.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace shotasm
