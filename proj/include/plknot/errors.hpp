// Copyright 2026 The plknot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace plknot {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two segments touch in a non-transversal way (collinear overlap, or an
/// endpoint lying in the other segment's interior).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// A polygon fails general-position validation.
class GeneralPositionError : public Error {
 public:
  using Error::Error;
};

class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs a resolution was handed a pseudodiagram with
/// unassigned crossings.
class PartialAssignmentError : public Error {
 public:
  using Error::Error;
};

class NoCrossingsError : public Error {
 public:
  using Error::Error;
};

class NotInfeasibleError : public Error {
 public:
  using Error::Error;
};

class InvalidSetError : public Error {
 public:
  using Error::Error;
};

class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

class ExhaustedRetriesError : public Error {
 public:
  using Error::Error;
};

/// Geometry or assignment data that parses but describes an invalid diagram.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed shadow document. `line` is 0 when the position is unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::string field)
      : Error(what), line_(line), field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

}  // namespace plknot
