#ifndef ANGLERANK_ERRORS_HPP
#define ANGLERANK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace anglerank {

enum class ErrorKind {
    NotMonic,
    OddDegree,
    NotPrimePower,
    FunctionalEquationViolation,
    RootModulusViolation,
    PrecisionExhausted,
    UnstableDetection,
    MalformedRow,
    InvalidArgument,
    Internal,
};

inline const char* error_kind_name(ErrorKind k)
{
    switch (k) {
        case ErrorKind::NotMonic: return "NotMonic";
        case ErrorKind::OddDegree: return "OddDegree";
        case ErrorKind::NotPrimePower: return "NotPrimePower";
        case ErrorKind::FunctionalEquationViolation: return "FunctionalEquationViolation";
        case ErrorKind::RootModulusViolation: return "RootModulusViolation";
        case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorKind::UnstableDetection: return "UnstableDetection";
        case ErrorKind::MalformedRow: return "MalformedRow";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string msg, long detail = -1)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg),
          kind_(kind), detail_(detail) {}

    ErrorKind kind() const { return kind_; }
    // FunctionalEquationViolation: failing coefficient index; MalformedRow: line number.
    long detail() const { return detail_; }

private:
    ErrorKind kind_;
    long detail_;
};

} // namespace anglerank

#endif
