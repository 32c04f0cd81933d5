#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cnc {

/// Malformed input: bad file syntax, invalid graph, unsatisfied precondition
/// on user-supplied data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solver refused to run because a configured size cap would be exceeded.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::uint64_t cap)
      : std::runtime_error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}

  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t cap_;
};

}  // namespace cnc
