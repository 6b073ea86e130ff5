// Copyright 2026 The yieldplan Authors
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

#ifndef YIELDPLAN_ERRORS_H_
#define YIELDPLAN_ERRORS_H_

#include <stdexcept>
#include <string>

namespace yieldplan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown product/distribution or an out-of-range index.
class LookupError : public Error {
 public:
  using Error::Error;
};

// A level assignment that no distribution of the product is mapped to.
class MapNotTotalError : public Error {
 public:
  using Error::Error;
};

// An instance that fails validate_instance() was handed to a builder/solver.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A first-stage decision that violates capacity, level choice or level bounds.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Malformed LinearModel (bad variable reference, inverted bounds, ...).
class ModelError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class OracleTooLargeError : public Error {
 public:
  using Error::Error;
};

// Unreadable or schema-violating input file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace yieldplan

#endif  // YIELDPLAN_ERRORS_H_
