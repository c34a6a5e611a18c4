#include "oriflag/errors.hpp"

namespace oriflag {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::RankMismatch: return "rank-mismatch";
        case ErrorCode::IndexOutOfRange: return "index-out-of-range";
        case ErrorCode::NotTransverse: return "not-transverse";
        case ErrorCode::NotProperSubset: return "not-proper-subset";
        case ErrorCode::NotSubgroup: return "not-subgroup";
        case ErrorCode::NotInMbar: return "not-in-mbar";
        case ErrorCode::MissingMbarTheta: return "missing-mbar-theta";
        case ErrorCode::NotParabolic: return "not-parabolic";
        case ErrorCode::LengthMismatch: return "length-mismatch";
        case ErrorCode::W0NotTransverse: return "w0-not-transverse";
        case ErrorCode::W0NotNormalizing: return "w0-not-normalizing";
        case ErrorCode::W0SquareNotInE: return "w0-square-not-in-E";
        case ErrorCode::NotOppositionInvariant: return "not-opposition-invariant";
        case ErrorCode::NotAnIdeal: return "not-an-ideal";
        case ErrorCode::FixedPointClass: return "fixed-point-class";
        case ErrorCode::DegenerateInput: return "degenerate-input";
        case ErrorCode::NotTransverseSubspaces: return "not-transverse-subspaces";
        case ErrorCode::NotSpanning: return "not-spanning";
        case ErrorCode::NotProximal: return "not-proximal";
        case ErrorCode::IrrationalEntry: return "irrational-entry";
        case ErrorCode::TooLarge: return "too-large";
        case ErrorCode::UnsupportedSpace: return "unsupported-space";
        case ErrorCode::ParseError: return "parse-error";
        case ErrorCode::VerificationMismatch: return "verification-mismatch";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace oriflag
