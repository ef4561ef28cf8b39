#pragma once

#include <stdexcept>
#include <string>

namespace mhiforge {

// Error variants surfaced verbatim on the CLI's stderr.
enum class Errc {
  FileNotFound,
  DimensionMismatch,
  UnsupportedFormat,
  EmptyStream,
  InsufficientFrames,
  NonFiniteInput,
  InvalidWeights,
  IncompleteTrainSet,
  BoxTooLarge,
};

constexpr const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::UnsupportedFormat: return "UnsupportedFormat";
    case Errc::EmptyStream: return "EmptyStream";
    case Errc::InsufficientFrames: return "InsufficientFrames";
    case Errc::NonFiniteInput: return "NonFiniteInput";
    case Errc::InvalidWeights: return "InvalidWeights";
    case Errc::IncompleteTrainSet: return "IncompleteTrainSet";
    case Errc::BoxTooLarge: return "BoxTooLarge";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace mhiforge
