#pragma once

#include <stdexcept>
#include <string>

namespace tietz {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error
{
  public:
    using Error::Error;
};

/// Operation called for a c_h regime it does not cover.
class RegimeError : public Error
{
  public:
    using Error::Error;
};

/// Evaluation point sits on a singularity (potential wall, Green's function pole).
class SingularityError : public Error
{
  public:
    using Error::Error;
};

/// Iterative kernel did not converge within its budget.
class ConvergenceError : public Error
{
  public:
    using Error::Error;
};

/// Requested quantum number beyond the bound-state count.
class IndexError : public Error
{
  public:
    using Error::Error;
};

/// Malformed molecule file; carries the 1-based line number.
class ParseError : public Error
{
  public:
    ParseError(std::string const& what, int line)
        : Error("line " + std::to_string(line) + ": " + what)
        , line_(line)
    {
    }
    int line() const noexcept { return line_; }

  private:
    int line_;
};

} // namespace tietz
