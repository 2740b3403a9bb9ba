#pragma once

#include <stdexcept>
#include <string>

namespace thue1728 {

/// Input outside an operation's mathematical domain (bad D, |det| != 1, J != 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Factorization gave up within its configured budget.
class UnfactoredError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A bounded search found nothing. `provably_empty` is set when a local obstruction was certified.
class NotFoundError : public std::runtime_error {
public:
    NotFoundError(const std::string& what, bool provably_empty)
        : std::runtime_error(what), provably_empty_(provably_empty) {}
    [[nodiscard]] bool provably_empty() const noexcept { return provably_empty_; }

private:
    bool provably_empty_;
};

/// An exact identity that must hold did not. Carries a diagnostic dump.
class IdentityFailure : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace thue1728
