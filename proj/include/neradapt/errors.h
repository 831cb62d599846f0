// Copyright 2026 The neradapt Authors
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

#ifndef NERADAPT_ERRORS_H_
#define NERADAPT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace neradapt {

// Base of every error raised by the library. The command-line front end maps
// the concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (too few columns, bad JSON record, ...).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a data invariant (invalid tag transition,
// unknown tag, length mismatch, scheme mismatch, bad configuration value).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Scores outside the domain a measure is defined on.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Masked-LM backend misbehaved: malformed reply, id mismatch, ordering.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Backend unreachable, died, or timed out.
class TransportError : public Error {
 public:
  using Error::Error;
};

// Backend answered a query with an explicit error reply.
class BackendError : public Error {
 public:
  using Error::Error;
};

}  // namespace neradapt

#endif  // NERADAPT_ERRORS_H_
