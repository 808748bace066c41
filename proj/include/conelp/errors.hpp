#pragma once

#include <stdexcept>
#include <string>

namespace conelp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define CONELP_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                            \
   public:                                                               \
    using Error::Error;                                                  \
    const char* kind() const noexcept override { return #Name; }         \
  }

CONELP_DEFINE_ERROR(InvalidInput);
CONELP_DEFINE_ERROR(NumericalBreakdown);
CONELP_DEFINE_ERROR(SizeLimitExceeded);
CONELP_DEFINE_ERROR(DegenerateHomogenization);
CONELP_DEFINE_ERROR(DegenerateRecovery);
CONELP_DEFINE_ERROR(PivotLimitExceeded);
CONELP_DEFINE_ERROR(ParseError);

#undef CONELP_DEFINE_ERROR

}  // namespace conelp
