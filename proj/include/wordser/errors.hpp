#pragma once

#include <stdexcept>
#include <string>

namespace wordser {

// Bad model/config input: wrong schema, inconsistent tables, bad preconditions.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation would exceed the configured truncation order or the word-count cap.
class TruncationError : public std::runtime_error {
public:
  explicit TruncationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested a value the current arithmetic mode cannot represent exactly
// (e.g. exp(nu) in rational mode without a declared exact exponential).
class ModeError : public std::runtime_error {
public:
  explicit ModeError(const std::string& msg) : std::runtime_error(msg) {}
};

// A word-by-word solve hit a divisor inside the guard band.
class SmallDivisorError : public std::runtime_error {
public:
  SmallDivisorError(const std::string& word, double magnitude, const std::string& what_op)
      : std::runtime_error("small divisor at word [" + word + "] in " + what_op +
                           ": |divisor| = " + std::to_string(magnitude)),
        word_(word), magnitude_(magnitude) {}
  const std::string& word() const { return word_; }
  double magnitude() const { return magnitude_; }

private:
  std::string word_;
  double magnitude_;
};

// A verification suite found a violated identity (used for CLI exit code 2).
class PropertyError : public std::runtime_error {
public:
  explicit PropertyError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wordser
