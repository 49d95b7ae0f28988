#pragma once

#include <stdexcept>
#include <string>

namespace mwdiff {

// Input violates a documented precondition (non-positive width, bad kappa, ...).
class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// A constructed object fails its own consistency checks (e.g. a tabulated
// density that is not normalized).
class validation_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A numerical routine could not reach its accuracy target; carries diagnostics.
class numerical_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Problems in configuration files; message includes file/line/key context.
class config_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace mwdiff
