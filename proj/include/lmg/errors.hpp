#ifndef LMG_ERRORS_HPP
#define LMG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lmg
{

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// The caller combined valid inputs in an invalid way (mismatched sector, bad config, ...).
class UsageError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative solver ran out of budget. Carries the last residual it reached.
class ConvergenceError : public std::runtime_error
{
public:
    ConvergenceError(const std::string &what, double residual)
        : std::runtime_error(what), residual_(residual)
    {
    }

    [[nodiscard]] double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// The thermodynamic-limit expansion diverges at the critical field h = 1.
class CriticalDivergence : public DomainError
{
public:
    using DomainError::DomainError;
};

/// Broken phase with gamma = 1: the bosonic expansion does not apply, use Dicke formulas.
class IsotropicBrokenPhase : public DomainError
{
public:
    using DomainError::DomainError;
};

} // namespace lmg

#endif
