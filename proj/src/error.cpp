#include "muna/error.hpp"

namespace muna {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::BadArity: return "BadArity";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::NotConnected: return "NotConnected";
        case ErrorKind::DanglingPort: return "DanglingPort";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::BackwardsEternal: return "BackwardsEternal";
        case ErrorKind::NoCycle: return "NoCycle";
        case ErrorKind::EqualPoints: return "EqualPoints";
        case ErrorKind::NotRF: return "NotRF";
        case ErrorKind::NotCS: return "NotCS";
        case ErrorKind::NotSeparable: return "NotSeparable";
        case ErrorKind::BrokenHom: return "BrokenHom";
        case ErrorKind::SeparationFailed: return "SeparationFailed";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::Mismatch: return "Mismatch";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::UndefinedNode: return "UndefinedNode";
        case ErrorKind::PortHasEdge: return "PortHasEdge";
        case ErrorKind::DuplicateName: return "DuplicateName";
        case ErrorKind::UnknownName: return "UnknownName";
    }
    return "Unknown";
}

}  // namespace muna
