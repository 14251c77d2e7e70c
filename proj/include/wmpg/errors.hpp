#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace wmpg {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input game violates a structural invariant (deadlock, bad distribution, ...).
class InvalidGame : public Error {
public:
  using Error::Error;
};

/// The requested instance is outside what the configured solver can decide.
class Unsupported : public Error {
public:
  using Error::Error;
};

/// A product construction or enumeration would exceed the configured budget.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

inline constexpr std::uint64_t kDefaultStateBudget = 10'000'000;
inline constexpr std::uint64_t kMaxWindowLength = 10'000;

/// Product-state cap; WMPG_STATE_BUDGET overrides the default.
inline std::uint64_t state_budget() {
  if (const char* env = std::getenv("WMPG_STATE_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("WMPG_STATE_BUDGET is not a non-negative integer");
    }
  }
  return kDefaultStateBudget;
}

inline void check_window_length(std::uint64_t ell) {
  if (ell == 0) throw std::invalid_argument("window length must be at least 1");
  if (ell > kMaxWindowLength)
    throw BudgetExceeded("window length " + std::to_string(ell) + " exceeds the limit of " +
                         std::to_string(kMaxWindowLength));
}

}  // namespace wmpg
