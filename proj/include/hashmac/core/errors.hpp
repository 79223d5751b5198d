#pragma once

#include <stdexcept>
#include <string>

namespace hashmac {

/// Invalid or malformed scenario / command-line configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hashmac
