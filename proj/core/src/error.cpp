#include "ksrg/error.hpp"

namespace ksrg {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::RejectDomain: return "REJECT_DOMAIN";
        case ErrorCode::RejectInconsistent: return "REJECT_INCONSISTENT";
        case ErrorCode::Capacity: return "CAPACITY";
        case ErrorCode::Geometry: return "GEOMETRY";
        case ErrorCode::OutOfRange: return "OUT_OF_RANGE";
        case ErrorCode::InsufficientEvents: return "INSUFFICIENT_EVENTS";
        case ErrorCode::Parse: return "PARSE";
        case ErrorCode::Io: return "IO";
    }
    return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace ksrg
