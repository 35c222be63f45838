// Copyright 2026 The qnnrobust Authors
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

#include <stdexcept>
#include <string>

namespace qnnrobust {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A value is outside its documented domain.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Shapes, sizes or indices do not fit together.
class StructuralError : public Error {
  public:
    using Error::Error;
};

/// Input bytes do not follow the expected file format.
class FormatError : public Error {
  public:
    using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
  public:
    using Error::Error;
};

/// Throws ValidationError with `message` unless `condition` holds.
void require(bool condition, const std::string &message);

} // namespace qnnrobust
