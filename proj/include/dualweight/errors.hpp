#pragma once

#include <stdexcept>
#include <string>

namespace dw {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define DW_DEFINE_ERROR(Name)                   \
  class Name : public Error {                   \
   public:                                      \
    explicit Name(const std::string& what_arg)  \
        : Error(#Name ": " + what_arg) {}       \
  }

DW_DEFINE_ERROR(DivisionByZero);
DW_DEFINE_ERROR(SingularMatrix);
DW_DEFINE_ERROR(DimensionMismatch);
DW_DEFINE_ERROR(InvalidRank);
DW_DEFINE_ERROR(InvalidGramm);
DW_DEFINE_ERROR(UnknownRoot);
DW_DEFINE_ERROR(NotProportional);
DW_DEFINE_ERROR(SubsetViolation);
DW_DEFINE_ERROR(PreconditionViolated);
DW_DEFINE_ERROR(CertificateFailure);
DW_DEFINE_ERROR(NotIrreducible);
DW_DEFINE_ERROR(InfeasibleSelection);
DW_DEFINE_ERROR(DivergenceFailure);
DW_DEFINE_ERROR(BranchMismatch);
DW_DEFINE_ERROR(InternalError);
DW_DEFINE_ERROR(FormatError);

#undef DW_DEFINE_ERROR

/// Malformed system spec string; `position` is the 0-based offending offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what_arg, std::size_t position)
      : Error("ParseError at position " + std::to_string(position) + ": " + what_arg),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace dw
