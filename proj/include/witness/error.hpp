#ifndef WITNESS_ERROR_HPP
#define WITNESS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace witness {

enum class ErrorCode {
    MalformedHeader,
    MalformedLine,
    EdgeOutOfRange,
    VertexOutOfRange,
    DuplicateEdge,
    SelfLoop,
    BagIndexOutOfRange,
    NotATree,
    WidthMismatch,
    DegreeTooHigh,
    InvalidDecomposition,
    DegenerateGeometry,
    SearchSpaceTooLarge,
    Infeasible,
    InvalidArgument,
    IoError,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedHeader: return "MalformedHeader";
        case ErrorCode::MalformedLine: return "MalformedLine";
        case ErrorCode::EdgeOutOfRange: return "EdgeOutOfRange";
        case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
        case ErrorCode::DuplicateEdge: return "DuplicateEdge";
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::BagIndexOutOfRange: return "BagIndexOutOfRange";
        case ErrorCode::NotATree: return "NotATree";
        case ErrorCode::WidthMismatch: return "WidthMismatch";
        case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
        case ErrorCode::InvalidDecomposition: return "InvalidDecomposition";
        case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
        case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

/// Thrown by every fallible operation in the library. `code()` is stable and
/// is what callers (and the CLI exit-code mapping) should switch on.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace witness

#endif
