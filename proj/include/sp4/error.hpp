#pragma once

#include <stdexcept>
#include <string>

namespace sp4 {

/// Base for every domain error raised by the library. `name()` is the stable
/// identifier surfaced by the command-line tool.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define SP4_DEFINE_ERROR(Type)                                      \
  class Type : public Error {                                       \
   public:                                                          \
    explicit Type(const std::string& what) : Error(#Type, what) {}  \
  };

SP4_DEFINE_ERROR(DenominatorVanishes)
SP4_DEFINE_ERROR(OrderMismatch)
SP4_DEFINE_ERROR(ExponentOverflow)
SP4_DEFINE_ERROR(BoundaryMismatch)
SP4_DEFINE_ERROR(NonTerminating)
SP4_DEFINE_ERROR(UnsupportedCrossingType)
SP4_DEFINE_ERROR(InvalidWeb)
SP4_DEFINE_ERROR(NotSimpleAtLevel)
SP4_DEFINE_ERROR(NonIntegerResult)
SP4_DEFINE_ERROR(LevelTooSmall)
SP4_DEFINE_ERROR(NotGraphGeodesic)
SP4_DEFINE_ERROR(InvalidInput)
SP4_DEFINE_ERROR(CacheError)

#undef SP4_DEFINE_ERROR

}  // namespace sp4
