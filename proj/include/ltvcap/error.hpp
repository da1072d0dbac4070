// SPDX-License-Identifier: Apache-2.0
//
// ltvcap - regional information capacity of linear time-varying channels
// Copyright (C) 2026 The ltvcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace ltvcap {

enum class ErrorKind { validation, numerical };

// All library failures are reported through this type. `validation` means the
// caller passed inadmissible parameters; `numerical` means the computation
// itself could not meet its tolerance.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_validation(const std::string& what) {
    throw Error(ErrorKind::validation, what);
}

[[noreturn]] inline void fail_numerical(const std::string& what) {
    throw Error(ErrorKind::numerical, what);
}

} // namespace ltvcap
