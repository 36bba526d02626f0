#pragma once

#include <stdexcept>
#include <string>

namespace simt {

// Malformed or inconsistent input data (bad JSONL, out-of-range indices,
// contract violations at parse time). CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Transport-level failure talking to a chat-completion endpoint after
// retries are exhausted. CLI maps this to exit code 3.
class EndpointError : public std::runtime_error {
public:
    explicit EndpointError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace simt
