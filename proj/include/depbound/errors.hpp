#pragma once

#include <stdexcept>
#include <string>

namespace depbound {

enum class Err {
  AbsoluteContinuityViolation,
  ConvergenceFailure,
  ConvexityViolation,
  DomainMismatch,
  InvalidConfig,
  InvalidDistribution,
  InvalidPrefix,
  IoError,
  NoCrossover,
  NoStationary,
  NotContracting,
  OutOfSupport,
  PreconditionT,
  ScheduleInvalid,
  TooLarge,
  Unreachable,
  Unsupported,
  UnsupportedProcess,
  ZeroMassState,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::AbsoluteContinuityViolation: return "AbsoluteContinuityViolation";
    case Err::ConvergenceFailure: return "ConvergenceFailure";
    case Err::ConvexityViolation: return "ConvexityViolation";
    case Err::DomainMismatch: return "DomainMismatch";
    case Err::InvalidConfig: return "InvalidConfig";
    case Err::InvalidDistribution: return "InvalidDistribution";
    case Err::InvalidPrefix: return "InvalidPrefix";
    case Err::IoError: return "IoError";
    case Err::NoCrossover: return "NoCrossover";
    case Err::NoStationary: return "NoStationary";
    case Err::NotContracting: return "NotContracting";
    case Err::OutOfSupport: return "OutOfSupport";
    case Err::PreconditionT: return "PreconditionT";
    case Err::ScheduleInvalid: return "ScheduleInvalid";
    case Err::TooLarge: return "TooLarge";
    case Err::Unreachable: return "Unreachable";
    case Err::Unsupported: return "Unsupported";
    case Err::UnsupportedProcess: return "UnsupportedProcess";
    case Err::ZeroMassState: return "ZeroMassState";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

}  // namespace depbound
