#pragma once

#include <stdexcept>
#include <string>

namespace rwlab {

// Status values double as CLI exit codes.
enum class Status : int {
  Ok = 0,
  ConfigError = 2,
  NumericError = 3,
  IoError = 4,
};

class Error : public std::runtime_error {
public:
  Error(Status status, const std::string& msg)
      : std::runtime_error(msg), status_(status) {}
  Status status() const { return status_; }

private:
  Status status_;
};

inline void config_error(const std::string& msg) { throw Error(Status::ConfigError, msg); }
inline void numeric_error(const std::string& msg) { throw Error(Status::NumericError, msg); }
inline void io_error(const std::string& msg) { throw Error(Status::IoError, msg); }

}  // namespace rwlab
