/* Copyright 2026 The opbench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef OPBENCH_ERRORS_H_
#define OPBENCH_ERRORS_H_

#include <stdexcept>
#include <string>
#include <utility>

namespace opbench {

// Root of every error the library throws. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed JSON or a missing/mistyped field.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Unknown "version" string in a versioned file.
class VersionError : public SchemaError {
 public:
  using SchemaError::SchemaError;
};

// A structurally well-formed document that breaks an invariant. `subject()`
// names the offending node/sample id.
class ValidationError : public Error {
 public:
  ValidationError(std::string subject, const std::string& what)
      : Error(what), subject_(std::move(subject)) {}
  const std::string& subject() const { return subject_; }

 private:
  std::string subject_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class BadAttr : public Error {
 public:
  using Error::Error;
};

// Wraps a kernel failure with the node that raised it.
class ExecError : public Error {
 public:
  ExecError(std::string node_id, const std::string& what)
      : Error("node '" + node_id + "': " + what), node_id_(std::move(node_id)) {}
  const std::string& node_id() const { return node_id_; }

 private:
  std::string node_id_;
};

class InputMismatch : public Error {
 public:
  using Error::Error;
};

class AttributionError : public Error {
 public:
  using Error::Error;
};

class EmptyError : public Error {
 public:
  using Error::Error;
};

class UnrunnableSpec : public Error {
 public:
  using Error::Error;
};

class FixtureError : public Error {
 public:
  using Error::Error;
};

}  // namespace opbench

#endif  // OPBENCH_ERRORS_H_
