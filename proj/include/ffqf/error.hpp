/*
   Copyright 2026 The ffqf Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef FFQF_ERROR_HPP
#define FFQF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ffqf {

/// Invalid argument for a mathematical operation (zero divisor, reducible
/// modulus, degenerate form, ...).
class DomainError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed its configured evaluation cap.
class BudgetExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// The request is well-formed but outside what the implementation supports.
class CapabilityError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed polynomial or form literal.
class ParseError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace ffqf

#endif
