// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace empra {

/// Violated precondition of an operation (caller bug, bad configuration).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed input file content. Carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Well-formed rows that cannot be ingested together (duplicate ids).
class IngestionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Loaded data violating a structural invariant (e.g. rank gaps in a run).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class WriteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failure talking to the model server: transport, status or contract.
class RemoteError : public std::runtime_error {
public:
    RemoteError(std::string endpoint, const std::string& cause)
        : std::runtime_error(endpoint + ": " + cause), endpoint_(std::move(endpoint)) {}

    const std::string& endpoint() const noexcept { return endpoint_; }

private:
    std::string endpoint_;
};

}  // namespace empra
