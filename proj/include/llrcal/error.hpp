// include/llrcal/error.hpp

// Copyright 2026  The llrcal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef LLRCAL_ERROR_HPP_
#define LLRCAL_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace llrcal {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or input violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A score, LLR, model or spec file could not be parsed.
class ParseError : public Error {
 public:
  ParseError(const std::string &what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        message_(what),
        line_(line) {}
  explicit ParseError(const std::string &what) : ParseError(what, 0) {}

  /// 1-based line number, 0 when not tied to a line.
  std::size_t line() const { return line_; }
  /// The message without the line prefix.
  const std::string &message() const { return message_; }

 private:
  std::string message_;
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A calibrator could not be trained (degenerate data, non-finite optimum).
class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace llrcal

#endif  // LLRCAL_ERROR_HPP_
