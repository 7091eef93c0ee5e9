// Copyright 2026 The qkl authors
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

namespace qkl {

/// Linear system is numerically singular and no regularization was requested.
struct SingularSystemError : std::runtime_error {
    explicit SingularSystemError(const std::string& what) : std::runtime_error(what) {}
};

/// Target function is (numerically) constant, so labels cannot be normalized.
struct DegenerateTargetError : std::runtime_error {
    explicit DegenerateTargetError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested problem size exceeds the supported cap.
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Alignment is undefined (zero labels or zero kernel matrix).
struct UndefinedAlignmentError : std::runtime_error {
    explicit UndefinedAlignmentError(const std::string& what) : std::runtime_error(what) {}
};

/// File could not be written or read.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qkl
