#pragma once

#include <stdexcept>
#include <string>

namespace sysw {

// Invalid user-supplied data: degenerate norms, malformed surfaces, out-of-range parameters.
class InputError : public std::invalid_argument {
public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A bounded search ran out of budget before producing a candidate.
class SearchExhausted : public std::runtime_error {
public:
  explicit SearchExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Curve shortening ended somewhere other than expected: a stalled closed geodesic or a frame whose
// projection is no longer simple.
class ShorteningFailure : public std::runtime_error {
public:
  explicit ShorteningFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sysw
