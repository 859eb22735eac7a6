#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pac {

// Caller passed an argument that violates a documented precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A query observation carries no valid pixels.
class NoObservation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every rotation hypothesis was pruned away (or an empty set was scored).
class EmptyHypothesisSet : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed on-disk data. Carries the offending file and byte offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, std::size_t offset, const std::string& what)
      : std::runtime_error(file + " @ byte " + std::to_string(offset) + ": " + what),
        file_(std::move(file)),
        offset_(offset) {}

  const std::string& file() const { return file_; }
  std::size_t offset() const { return offset_; }

 private:
  std::string file_;
  std::size_t offset_;
};

}  // namespace pac
