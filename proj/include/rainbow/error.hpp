#ifndef RAINBOW_ERROR_HPP
#define RAINBOW_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rainbow {

enum class ErrorKind {
    ParseError,
    GeneralPositionViolation,
    DuplicatePoint,
    DegenerateInput,
    TooFewColors,
    TooManyColors,
    PreconditionViolated,
    CrossingViolation,
    InvalidPartition,
    ObstacleOnTree,
    NotSimple,
    UncoveredTarget,
    BadN,
    BadK,
    BadSpec,
    BadParams,
    IoError,
    InternalInvariant,
    CertificationFailed,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

}  // namespace rainbow

#endif
