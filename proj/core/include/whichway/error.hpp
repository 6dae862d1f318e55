// Copyright 2026 The whichway Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace whichway {

/// Raised when an input violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a quadrature window is too narrow for the packets it must
/// integrate (tail mass outside the window exceeds the allowed budget).
class GridError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

namespace detail {

[[noreturn]] inline void fail(const std::string& what) { throw InvalidArgument(what); }

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(what);
}

}  // namespace detail
}  // namespace whichway
