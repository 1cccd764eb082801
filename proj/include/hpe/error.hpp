#ifndef HPE_ERROR_HPP
#define HPE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hpe {

enum class ErrorCode {
  InvalidOrder,
  InvalidDegree,
  InvalidParams,
  NotIrreducible,
  DivisionByZero,
  VariableMismatch,
  SingularMatrix,
  ZeroPolynomial,
  GenerationFailed,
  SymbolOutOfAlphabet,
  LengthMismatch,
  EncryptionFailed,
  NoValidCandidate,
  AmbiguousDecryption,
  TooLarge,
  SigningFailed,
  SigncryptionFailed,
  BadTheta,
  SolutionSpaceTooLarge,
  ParseError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::InvalidDegree: return "InvalidDegree";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::VariableMismatch: return "VariableMismatch";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::SymbolOutOfAlphabet: return "SymbolOutOfAlphabet";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EncryptionFailed: return "EncryptionFailed";
    case ErrorCode::NoValidCandidate: return "NoValidCandidate";
    case ErrorCode::AmbiguousDecryption: return "AmbiguousDecryption";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::SigningFailed: return "SigningFailed";
    case ErrorCode::SigncryptionFailed: return "SigncryptionFailed";
    case ErrorCode::BadTheta: return "BadTheta";
    case ErrorCode::SolutionSpaceTooLarge: return "SolutionSpaceTooLarge";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by decrypt() when more than one alphabet-valid message survives.
class AmbiguousDecryptionError : public Error {
 public:
  explicit AmbiguousDecryptionError(std::vector<std::string> candidates)
      : Error(ErrorCode::AmbiguousDecryption,
              std::to_string(candidates.size()) + " alphabet-valid candidates"),
        candidates_(std::move(candidates)) {}

  const std::vector<std::string>& candidates() const noexcept {
    return candidates_;
  }

 private:
  std::vector<std::string> candidates_;
};

}  // namespace hpe

#endif  // HPE_ERROR_HPP
