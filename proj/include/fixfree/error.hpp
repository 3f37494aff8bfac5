#pragma once

#include <stdexcept>
#include <string>

namespace fixfree {

// Every rejected input in the library throws Error carrying a kind tag.
// Tests match on the kind; the command line tool maps any Error to exit 3
// with a one-line diagnostic.
enum class ErrKind {
  OutOfRange,            // argument outside its documented domain
  InputError,            // malformed text input
  KraftExceeded,         // length profile too heavy for the requested builder
  HypothesisNotMet,      // profile outside a builder's structural hypothesis
  InfiniteExpansion,     // target rational has no finite base-q expansion
  NotEulerian,           // in/out degree mismatch
  Disconnected,          // graph not connected on its non-isolated part
  NotClosedPath,         // sequence is not a closed walk at the stated order
  NotOneRegular,         // subgraph cannot be completed to a one-factor
  NotKRegular,           // decomposition input is not k-regular
  PreconditionViolated,  // structured input fails a documented precondition
  Unsupported,           // instance outside the implemented/bounded range
  Overflow,              // exact arithmetic left the 64-bit range
  Internal,              // "cannot happen" guard tripped; a bug if seen
};

inline const char* to_string(ErrKind k) {
  switch (k) {
    case ErrKind::OutOfRange: return "OutOfRange";
    case ErrKind::InputError: return "InputError";
    case ErrKind::KraftExceeded: return "KraftExceeded";
    case ErrKind::HypothesisNotMet: return "HypothesisNotMet";
    case ErrKind::InfiniteExpansion: return "InfiniteExpansion";
    case ErrKind::NotEulerian: return "NotEulerian";
    case ErrKind::Disconnected: return "Disconnected";
    case ErrKind::NotClosedPath: return "NotClosedPath";
    case ErrKind::NotOneRegular: return "NotOneRegular";
    case ErrKind::NotKRegular: return "NotKRegular";
    case ErrKind::PreconditionViolated: return "PreconditionViolated";
    case ErrKind::Unsupported: return "Unsupported";
    case ErrKind::Overflow: return "Overflow";
    case ErrKind::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}
  ErrKind kind() const { return kind_; }

 private:
  ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace fixfree
