#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace idealforge {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller violated an operation's precondition (k = 0, negative values,
// malformed input).
class DomainError : public Error {
public:
    using Error::Error;
};

// An exhaustive routine would exceed its configured budget.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::string what, std::size_t requested, std::size_t limit)
        : Error(what + ": requested " + std::to_string(requested) + ", limit " +
                std::to_string(limit)),
          requested_(requested), limit_(limit) {}

    std::size_t requested() const noexcept { return requested_; }
    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t requested_;
    std::size_t limit_;
};

// A derivation trace failed to re-derive its claimed count.
class CertificateError : public Error {
public:
    CertificateError(const std::string& path, const std::string& what)
        : Error("certificate invalid at " + (path.empty() ? std::string("/") : path) +
                ": " + what),
          path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

// An internal arithmetic identity that the construction guarantees did not
// hold. Always a bug.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace idealforge
