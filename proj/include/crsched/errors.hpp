#pragma once

#include <stdexcept>
#include <string>

namespace crsched {

// Raised when a scheduler tries to take a block that is already owned.
// Correct action-set handling never triggers it.
class AllocationConflict : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ActionNotPresent : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EmptyActionSet : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An opponent has never acted, so its action frequencies are undefined.
class NoHistory : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class EmptyInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class LengthMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigInvalid : public std::invalid_argument {
 public:
  ConfigInvalid(const std::string& field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace crsched
