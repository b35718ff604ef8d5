#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sibgeo {

// Base of every error raised by the library. `kind()` is a stable short name
// used when an error is reported as a failed check instead of propagated.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define SIBGEO_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(#Name, what) {}  \
  }

SIBGEO_DEFINE_ERROR(UnknownIdentifier);
SIBGEO_DEFINE_ERROR(ArityError);
SIBGEO_DEFINE_ERROR(DomainError);
SIBGEO_DEFINE_ERROR(DimensionMismatch);
SIBGEO_DEFINE_ERROR(SingularMetric);
SIBGEO_DEFINE_ERROR(SignatureError);
SIBGEO_DEFINE_ERROR(DegeneratePlane);
SIBGEO_DEFINE_ERROR(NotUnit);
SIBGEO_DEFINE_ERROR(NotSymmetric);
SIBGEO_DEFINE_ERROR(TPropertiesViolated);
SIBGEO_DEFINE_ERROR(Big3Violated);
SIBGEO_DEFINE_ERROR(BadParameters);
SIBGEO_DEFINE_ERROR(ConfigError);
SIBGEO_DEFINE_ERROR(IoError);

#undef SIBGEO_DEFINE_ERROR

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& what)
      : Error("SyntaxError", what + " at offset " + std::to_string(offset)),
        offset_(offset),
        detail_(what) {}
  std::size_t offset() const noexcept { return offset_; }
  // The message without the offset suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t offset_;
  std::string detail_;
};

}  // namespace sibgeo
