//
// Copyright 2026 The kanon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kanon {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of mismatched width or height.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A caller-supplied argument outside the operation's domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data: a table, clustering, graph, or file that breaks
/// one of its type invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An anonymized grid edits a cell to something other than "*".
class TamperError : public ValidationError {
 public:
  TamperError(std::size_t row, std::size_t column, const std::string& what)
      : ValidationError(what), row_(row), column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

/// An anonymized grid contains a group of identical rows smaller than k.
class AnonymityViolation : public ValidationError {
 public:
  AnonymityViolation(std::string pattern, std::size_t size,
                     const std::string& what)
      : ValidationError(what), pattern_(std::move(pattern)), size_(size) {}

  const std::string& pattern() const noexcept { return pattern_; }
  std::size_t size() const noexcept { return size_; }

 private:
  std::string pattern_;
  std::size_t size_;
};

/// No k-anonymous solution exists for the instance.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// A configured work or size cap would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A post-condition the algorithms guarantee did not hold. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace kanon
