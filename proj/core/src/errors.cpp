#include "fdecay/errors.hpp"

namespace fdecay {

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::AlphaOutOfRange: return "AlphaOutOfRange";
    case Errc::BetaOutOfRange: return "BetaOutOfRange";
    case Errc::NonpositiveTime: return "NonpositiveTime";
    case Errc::ZeroFrequency: return "ZeroFrequency";
    case Errc::ZeroFrequencyInWindow: return "ZeroFrequencyInWindow";
    case Errc::QuadratureNotConverged: return "QuadratureNotConverged";
    case Errc::EmptyProbeSet: return "EmptyProbeSet";
    case Errc::EmptyField: return "EmptyField";
    case Errc::QNotFinite: return "QNotFinite";
    case Errc::EtaPOutOfRange: return "EtaPOutOfRange";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::LevelTooDeep: return "LevelTooDeep";
    case Errc::UnsupportedShape: return "UnsupportedShape";
    case Errc::ProfileNotConverged: return "ProfileNotConverged";
    case Errc::InadmissibleAlpha: return "InadmissibleAlpha";
    case Errc::ExponentNotSubcritical: return "ExponentNotSubcritical";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace fdecay
