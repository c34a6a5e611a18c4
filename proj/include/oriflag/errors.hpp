#pragma once

#include <stdexcept>
#include <string>

namespace oriflag {

enum class ErrorCode {
    InvalidArgument,
    RankMismatch,
    IndexOutOfRange,
    NotTransverse,
    NotProperSubset,
    NotSubgroup,
    NotInMbar,
    MissingMbarTheta,
    NotParabolic,
    LengthMismatch,
    W0NotTransverse,
    W0NotNormalizing,
    W0SquareNotInE,
    NotOppositionInvariant,
    NotAnIdeal,
    FixedPointClass,
    DegenerateInput,
    NotTransverseSubspaces,
    NotSpanning,
    NotProximal,
    IrrationalEntry,
    TooLarge,
    UnsupportedSpace,
    ParseError,
    VerificationMismatch,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require(bool ok, ErrorCode code, const std::string& what) {
    if (!ok) fail(code, what);
}

}  // namespace oriflag
