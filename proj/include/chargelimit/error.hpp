#pragma once

#include <stdexcept>
#include <string>

namespace chargelimit {

// Raised when a physical parameter lies outside the domain of a model
// (negative temperature, zero radius, non-positive bandwidth, ...).
class DomainError : public std::domain_error {
  public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Raised for malformed user input: unit suffixes, table syntax, flags.
class ParseError : public std::invalid_argument {
  public:
    explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace chargelimit
