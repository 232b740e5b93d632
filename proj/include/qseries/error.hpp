#ifndef QSERIES_ERROR_HPP
#define QSERIES_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qseries {

enum class ErrorKind {
    ModeMismatch,
    ZeroFactor,
    DomainError,
    PoleError,
    DivergenceError,
    NoConvergence,
    PoleOnContour,
    HypothesisViolation,
    ZeroArgument,
    ConstraintViolation,
    UnknownIdentity,
    SamplerExhausted,
    ParseError,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline const char* kind_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::ModeMismatch: return "ModeMismatch";
    case ErrorKind::ZeroFactor: return "ZeroFactor";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::PoleError: return "PoleError";
    case ErrorKind::DivergenceError: return "DivergenceError";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::PoleOnContour: return "PoleOnContour";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::ZeroArgument: return "ZeroArgument";
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::UnknownIdentity: return "UnknownIdentity";
    case ErrorKind::SamplerExhausted: return "SamplerExhausted";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Error";
}

} // namespace qseries

#endif
