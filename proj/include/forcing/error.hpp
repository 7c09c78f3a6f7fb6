#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace forcing {

enum class ErrorKind {
  Parse,
  NotAntichain,
  NotAmoeba,
  InvalidCondition,
  EmptyStem,
  NotInAppWindow,
  NoCapacity,
  StemsDiffer,
  LabelMismatch,
  NotSeparated,
  EllTooSmall,
  BadFamilySize,
  TooLarge,
  SlotsDiffer,
  MixedPosets,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure carrying the offending character offset.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorKind::Parse,
              "parse error at position " + std::to_string(position) + ": " + what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace forcing
