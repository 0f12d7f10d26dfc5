#pragma once

#include <stdexcept>
#include <string>

namespace mclab {

enum class Status {
    Ok = 0,
    InvalidArgument,
    NoConvergence,
    DegenerateJacobian,
    OutOfRange,
    NotACenter,
    NoAttractingCycle,
    NotInPetal,
    OutsideDomain,
    PrecisionLoss,
    NotAntiReturn,
    NotSimplePetal,
    WrongPeriod,
    NotOnArc,
    LostSpine,
    IoError,
};

const char* status_name(Status s);

/// Domain error carrying a Status; the extern-C layer maps it to an error code.
class Error : public std::runtime_error {
public:
    Error(Status s, const std::string& what) : std::runtime_error(what), status_(s) {}
    Status status() const { return status_; }

private:
    Status status_;
};

[[noreturn]] inline void fail(Status s, const std::string& what) { throw Error(s, what); }

} // namespace mclab
