#ifndef BIMS_ERRORS_HPP
#define BIMS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bims {

/// Base for all channel construction / validation failures.
class InvalidChannelError : public std::runtime_error {
 public:
  explicit InvalidChannelError(const std::string& what) : std::runtime_error(what) {}
};

/// The transition matrix admits no Gallager output pairing.
class NotSymmetricError : public InvalidChannelError {
 public:
  explicit NotSymmetricError(const std::string& what) : InvalidChannelError(what) {}
};

/// A channel-spec document is structurally malformed (bad JSON, unknown kind, missing field).
class ChannelSpecError : public std::runtime_error {
 public:
  explicit ChannelSpecError(const std::string& what) : std::runtime_error(what) {}
};

class RhoOutOfRangeError : public std::domain_error {
 public:
  explicit RhoOutOfRangeError(const std::string& what) : std::domain_error(what) {}
};

/// rho = 0 passed to an inverse map; F(0) = 1 identically, so no capacity can be recovered.
class RhoZeroError : public std::invalid_argument {
 public:
  explicit RhoZeroError(const std::string& what) : std::invalid_argument(what) {}
};

class FOutOfRangeError : public std::domain_error {
 public:
  explicit FOutOfRangeError(const std::string& what) : std::domain_error(what) {}
};

class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Requested (capacity, F) pair lies outside the feasible band.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bims

#endif  // BIMS_ERRORS_HPP
