// Copyright 2026 The Typology Authors. All Rights Reserved.
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

namespace typology {

// Root of every exception thrown by the library. The C API maps each
// subclass onto one status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed CoNLL-U, JSONL, lexicon or checkpoint input.
class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// An operation that needs at least one sentence or instance got none.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

// Non-finite loss or parameters during training.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Caller broke a precondition (bad index, bad enum value, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace typology
