#pragma once

#include <stdexcept>
#include <string>

namespace fdecay {

enum class Errc {
  AlphaOutOfRange,
  BetaOutOfRange,
  NonpositiveTime,
  ZeroFrequency,
  ZeroFrequencyInWindow,
  QuadratureNotConverged,
  EmptyProbeSet,
  EmptyField,
  QNotFinite,
  EtaPOutOfRange,
  DimensionMismatch,
  LevelTooDeep,
  UnsupportedShape,
  ProfileNotConverged,
  InadmissibleAlpha,
  ExponentNotSubcritical,
  InvalidArgument,
  ConfigError,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace fdecay
