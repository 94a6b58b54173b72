#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace viewcon {

/// Violated precondition or call contract (caller bug, not data).
class ContractError : public std::logic_error {
public:
    explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

/// Malformed or inconsistent input files. Carries one message per offending
/// line/record so callers can report everything at once.
class IngestionError : public std::runtime_error {
public:
    explicit IngestionError(const std::string& what, std::vector<std::string> details = {})
        : std::runtime_error(what), details_(std::move(details)) {}

    const std::vector<std::string>& details() const noexcept { return details_; }

private:
    std::vector<std::string> details_;
};

/// Remote judge failure (timeout, HTTP error, unparseable reply). Retryable
/// by the caller; carries the index of the candidate that failed when known.
class JudgeError : public std::runtime_error {
public:
    explicit JudgeError(const std::string& what, long candidate_index = -1,
                        std::string raw_reply = {})
        : std::runtime_error(what),
          candidate_index_(candidate_index),
          raw_reply_(std::move(raw_reply)) {}

    long candidate_index() const noexcept { return candidate_index_; }
    const std::string& raw_reply() const noexcept { return raw_reply_; }

private:
    long candidate_index_;
    std::string raw_reply_;
};

/// Non-finite values or a failed numerical validation (e.g. gradient check).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what, long parameter_index = -1)
        : std::runtime_error(what), parameter_index_(parameter_index) {}

    long parameter_index() const noexcept { return parameter_index_; }

private:
    long parameter_index_;
};

}  // namespace viewcon
