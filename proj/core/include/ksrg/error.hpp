#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ksrg {

enum class ErrorCode {
    RejectDomain,
    RejectInconsistent,
    Capacity,
    Geometry,
    OutOfRange,
    InsufficientEvents,
    Parse,
    Io,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code. The CLI maps codes to exit
/// statuses; library callers can switch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace ksrg
