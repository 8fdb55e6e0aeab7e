#pragma once

#include <stdexcept>
#include <string>

namespace tilt {

/// Base of every error raised by the library. Domain failures (a set that is
/// not tilting, a complement outside the search window) derive from
/// domain_error; malformed input derives from parse_error.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class domain_error : public error {
 public:
  using error::error;
};

class parse_error : public error {
 public:
  using error::error;
};

class mismatch_error : public error {
 public:
  using error::error;
};

class not_tilting : public domain_error {
 public:
  using domain_error::domain_error;
};

class not_rigid : public domain_error {
 public:
  using domain_error::domain_error;
};

/// The mutation complement was not found among the searched candidates.
/// `reason` is "window" when widening may help and "fragment" when the whole
/// candidate band was searched (the complement lies outside the modeled
/// line-bundle + torsion universe).
class complement_not_in_window : public domain_error {
 public:
  complement_not_in_window(const std::string& what, std::string reason)
      : domain_error(what), reason_(std::move(reason)) {}
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string reason_;
};

class not_found_within_budget : public domain_error {
 public:
  using domain_error::domain_error;
};

class inexact_division : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Raised when an internal consistency check fails; always a bug.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tilt
