// Copyright 2026 The pdscert Authors
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

#ifndef PDSCERT_ERRORS_HPP
#define PDSCERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pdscert {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands that do not fit together (element of a different group,
/// group shape an operation does not support).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A prime that does not divide the group order was asked for its Sylow part.
class EmptySylowError : public StructuralError {
 public:
  using StructuralError::StructuralError;
};

/// A stated precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A formula was applied outside its hypotheses.
class InapplicableError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// An internal consistency check failed: a value that must be an integer is
/// not, a proven identity does not hold, and so on.
class IntegrityError : public Error {
 public:
  IntegrityError(std::string stage, const std::string& what)
      : Error(stage.empty() ? what : stage + ": " + what), stage_(std::move(stage)) {}
  explicit IntegrityError(const std::string& what) : Error(what) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// Malformed textual input (group notation, element literal, set file).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace pdscert

#endif  // PDSCERT_ERRORS_HPP
