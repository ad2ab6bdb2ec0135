// Copyright 2026 The pudisc Authors
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

namespace pudisc {

/// A value outside the mathematical domain of an operation (negative
/// intensity, transmittance outside [0,1], mismatched list lengths).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An experiment or stabilizer configuration that cannot be run.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A runtime consistency check failed (outcome partition, fraction range).
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace pudisc
