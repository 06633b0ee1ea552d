// Copyright 2026 The qcorr Authors
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

namespace qcorr {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violates one of its type invariants (Hermiticity, positivity,
// normalization, completeness, ...). The message names the first violation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Shapes or subsystem layouts do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Malformed input file or document.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Every restart of a search aborted.
class OptimizerError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcorr
