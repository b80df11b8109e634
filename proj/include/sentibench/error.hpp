// Copyright 2026 The sentibench Authors.
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

namespace sentibench {

// Base for all library failures. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad configuration, arguments or preconditions supplied by the caller.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Unreadable or structurally invalid input data.
class DataError : public Error {
public:
    using Error::Error;
};

// Value outside the domain of an operation (e.g. a star rating of 7).
class DomainError : public Error {
public:
    using Error::Error;
};

// Numerical failure during model fitting.
class TrainingError : public Error {
public:
    TrainingError(const std::string& what, int iteration)
        : Error(what + " (iteration " + std::to_string(iteration) + ")"), iteration_(iteration) {}

    int iteration() const noexcept { return iteration_; }

private:
    int iteration_;
};

// Wraps a failure raised inside one stage of an experiment.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& what)
        : Error(stage + ": " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace sentibench
