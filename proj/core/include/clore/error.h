/*
 * Copyright 2026 The clore Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CLORE_ERROR_H_
#define CLORE_ERROR_H_

#include <stdexcept>
#include <string>

namespace clore {

// Base class for every rejection raised by the library. The CLI turns these
// into a one-line diagnostic and a nonzero exit code.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument or violated precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed or unreadable file. The message carries the location.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace clore

#endif  // CLORE_ERROR_H_
