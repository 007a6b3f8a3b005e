// Copyright (c) 2026 The lecgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LECGEN_COMMON_ERROR_H_
#define LECGEN_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace lecgen {

// Mirrors the process exit codes and the C API status values.
enum class ErrorKind {
  kUsage = 1,
  kValidation = 2,
  kAdapter = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string &message)
      : Error(ErrorKind::kValidation, message) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string &message)
      : Error(ErrorKind::kUsage, message) {}
};

class AdapterError : public Error {
 public:
  AdapterError(const std::string &stage, const std::string &slide_id,
               const std::string &message)
      : Error(ErrorKind::kAdapter,
              "adapter failure in stage '" + stage + "' for slide '" +
                  slide_id + "': " + message),
        stage_(stage),
        slide_id_(slide_id),
        detail_(message) {}

  const std::string &stage() const { return stage_; }
  const std::string &slide_id() const { return slide_id_; }
  const std::string &detail() const { return detail_; }

 private:
  std::string stage_;
  std::string slide_id_;
  std::string detail_;
};

}  // namespace lecgen

#endif  // LECGEN_COMMON_ERROR_H_
