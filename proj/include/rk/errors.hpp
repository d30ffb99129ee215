#pragma once

#include <stdexcept>
#include <string>

namespace rk {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define RK_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(what) {}        \
    const char* kind() const noexcept override { return #Name; }   \
  };

RK_DEFINE_ERROR(ParseError)
RK_DEFINE_ERROR(BudgetExceeded)
RK_DEFINE_ERROR(MalformedCut)
RK_DEFINE_ERROR(InvalidName)
RK_DEFINE_ERROR(NonPositive)
RK_DEFINE_ERROR(DivisionByZero)
RK_DEFINE_ERROR(HaltedMachine)
RK_DEFINE_ERROR(NoCycleDetected)
RK_DEFINE_ERROR(FuelExhausted)
RK_DEFINE_ERROR(UnknownProgram)
RK_DEFINE_ERROR(BadEndpoints)
RK_DEFINE_ERROR(MalformedInstance)

#undef RK_DEFINE_ERROR

}  // namespace rk
