#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace muna {

enum class ErrorKind {
    OutOfRange,
    BadArity,
    InvalidArgument,
    NotConnected,
    DanglingPort,
    Overflow,
    BackwardsEternal,
    NoCycle,
    EqualPoints,
    NotRF,
    NotCS,
    NotSeparable,
    BrokenHom,
    SeparationFailed,
    CapExceeded,
    Mismatch,
    SyntaxError,
    UndefinedNode,
    PortHasEdge,
    DuplicateName,
    UnknownName,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (and the
/// CLI's exit codes) can branch on it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    /// The message without the kind prefix.
    [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

}  // namespace muna
