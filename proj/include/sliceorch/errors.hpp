// Copyright 2026 The sliceorch Authors
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

#ifndef SLICEORCH_ERRORS_HPP
#define SLICEORCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sliceorch {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scenario document does not match the schema. `path()` names the offending node.
class ScenarioError : public Error {
 public:
  ScenarioError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// A domain value breaks one of its type invariants.
class InvariantError : public Error {
 public:
  using Error::Error;
};

class DuplicateSlice : public Error {
 public:
  using Error::Error;
};

class IllegalTransition : public Error {
 public:
  using Error::Error;
};

class UnknownPool : public Error {
 public:
  using Error::Error;
};

class UnknownSlice : public Error {
 public:
  using Error::Error;
};

/// No (CU-UP pool, UPF pool) pair satisfies delay and capacity.
class NoFeasiblePlacement : public Error {
 public:
  using Error::Error;
};

/// Guaranteed PRB floors would exceed the cell's schedulable budget.
class AdmissionOverflow : public Error {
 public:
  using Error::Error;
};

/// Requested minimum throughput exceeds what the cell can ever deliver.
class SlaUnsatisfiable : public Error {
 public:
  using Error::Error;
};

}  // namespace sliceorch

#endif  // SLICEORCH_ERRORS_HPP
