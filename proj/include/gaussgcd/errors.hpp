#pragma once

#include <stdexcept>
#include <string>

namespace gaussgcd {

/// Argument outside the mathematical domain of an operation (zero ideal, s too close to 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DivisionByZero : public DomainError {
 public:
  DivisionByZero() : DomainError("division by zero Gaussian integer") {}
};

/// Request exceeds a table bound or a configured scale guard.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Checked integer arithmetic would have wrapped.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

enum class CacheErrc {
  io,
  bad_magic,
  version_mismatch,
  truncated,
  corrupt,
};

inline const char* to_string(CacheErrc code) {
  switch (code) {
    case CacheErrc::io: return "io";
    case CacheErrc::bad_magic: return "bad magic";
    case CacheErrc::version_mismatch: return "version mismatch";
    case CacheErrc::truncated: return "truncated";
    case CacheErrc::corrupt: return "corrupt";
  }
  return "unknown";
}

class CacheError : public std::runtime_error {
 public:
  CacheError(CacheErrc code, const std::string& path, const std::string& detail)
      : std::runtime_error(path + ": sieve cache " + to_string(code) + ": " + detail),
        code_(code) {}

  CacheErrc code() const noexcept { return code_; }

 private:
  CacheErrc code_;
};

}  // namespace gaussgcd
