// Copyright 2026 The cpforge Authors
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

namespace cpforge {

/** Base class of every exception thrown by the library. */
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonHermitianInput : public Error {
 public:
  using Error::Error;
};

class ParamOutOfRange : public Error {
 public:
  using Error::Error;
};

/** A fidelity radicand fell well below zero (state or image far outside the Bloch ball). */
class DomainError : public Error {
 public:
  using Error::Error;
};

class WeightSumError : public Error {
 public:
  using Error::Error;
};

class UnsupportedK : public Error {
 public:
  using Error::Error;
};

/** A search that is guaranteed to succeed did not; indicates a bug or a non-TP input. */
class InternalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cpforge
