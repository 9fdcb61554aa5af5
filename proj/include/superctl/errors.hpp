#pragma once

#include <stdexcept>
#include <string>

namespace superctl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SUPERCTL_ERROR(Name)          \
  class Name : public Error {         \
   public:                            \
    using Error::Error;               \
  };

SUPERCTL_ERROR(GeneratorCountError)
SUPERCTL_ERROR(ParityError)
SUPERCTL_ERROR(ShapeError)
SUPERCTL_ERROR(BerezinianUndefinedError)
SUPERCTL_ERROR(NumericError)
SUPERCTL_ERROR(RankError)
SUPERCTL_ERROR(NotClosedError)
SUPERCTL_ERROR(AlgebraMismatchError)
SUPERCTL_ERROR(NotInvariantError)
SUPERCTL_ERROR(PreconditionError)
SUPERCTL_ERROR(UnknownNameError)

#undef SUPERCTL_ERROR

/// Parse failure in a spec or schedule file; `field` names the offending JSON path.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace superctl
