#pragma once

#include <stdexcept>
#include <string>

namespace zpf {

// Root of the library's exception hierarchy. The two intermediate classes
// map onto the CLI exit codes: ValidationError -> 2, NumericError -> 3.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  // Stable identifier, e.g. "SlopeOutOfRange". Used for row-level markers.
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

class ValidationError : public Error {
public:
  using Error::Error;
};

class NumericError : public Error {
public:
  using Error::Error;
};

#define ZPF_DEFINE_ERROR(Name, Base)                                          \
  class Name : public Base {                                                  \
  public:                                                                     \
    explicit Name(const std::string& what) : Base(#Name, what) {}            \
  };

ZPF_DEFINE_ERROR(DimensionMismatch, ValidationError)
ZPF_DEFINE_ERROR(NegativeBase, ValidationError)
ZPF_DEFINE_ERROR(BadOverride, ValidationError)
ZPF_DEFINE_ERROR(ConfigSyntax, ValidationError)
ZPF_DEFINE_ERROR(NonPositiveWavenumber, ValidationError)
ZPF_DEFINE_ERROR(PoleGamma, ValidationError)
ZPF_DEFINE_ERROR(GammaOutOfRange, ValidationError)
ZPF_DEFINE_ERROR(KolmogorovPole, ValidationError)
ZPF_DEFINE_ERROR(SlopeOutOfRange, ValidationError)
ZPF_DEFINE_ERROR(KappaOutOfRange, ValidationError)
ZPF_DEFINE_ERROR(InvalidParameter, ValidationError)
ZPF_DEFINE_ERROR(InvalidBracket, ValidationError)
ZPF_DEFINE_ERROR(EmptySweep, ValidationError)

ZPF_DEFINE_ERROR(NonFinite, NumericError)
ZPF_DEFINE_ERROR(RationalOverflow, NumericError)
ZPF_DEFINE_ERROR(NoCrossing, NumericError)
ZPF_DEFINE_ERROR(DegenerateSamples, NumericError)

#undef ZPF_DEFINE_ERROR

} // namespace zpf
