#pragma once

#include <stdexcept>
#include <string>

namespace hot {

// Bad argument shape: wrong subset size, d > n, even n for a rotational tournament, ...
struct argument_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Index or rank outside its valid interval.
struct range_error : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// A quantity does not fit the fixed-width arithmetic used for ranks or determinants.
struct size_error : std::overflow_error {
  using std::overflow_error::overflow_error;
};

// A point configuration has a vanishing orientation determinant.
struct degeneracy_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Malformed HOT1 / HOTS / point-config input.
struct format_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Enumeration would exceed the configured work budget.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two independent routes to the same quantity disagreed.
struct consistency_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace hot
