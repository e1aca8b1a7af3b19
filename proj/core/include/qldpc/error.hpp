#pragma once

#include <stdexcept>
#include <string>

namespace qldpc {

enum class ErrorKind {
  InvalidArgument,
  SizeMismatch,
  NoSolution,
  BothZero,
  NotAFactor,
  EvenCirculant,
  OddLength,
  UnknownId,
  MissingExternalMatrix,
  SyndromeNotInImage,
  SyndromeMismatch,
  KernelTooLarge,
  Parse,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Exception type for every recoverable failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::BothZero: return "BothZero";
    case ErrorKind::NotAFactor: return "NotAFactor";
    case ErrorKind::EvenCirculant: return "EvenCirculant";
    case ErrorKind::OddLength: return "OddLength";
    case ErrorKind::UnknownId: return "UnknownId";
    case ErrorKind::MissingExternalMatrix: return "MissingExternalMatrix";
    case ErrorKind::SyndromeNotInImage: return "SyndromeNotInImage";
    case ErrorKind::SyndromeMismatch: return "SyndromeMismatch";
    case ErrorKind::KernelTooLarge: return "KernelTooLarge";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace qldpc
