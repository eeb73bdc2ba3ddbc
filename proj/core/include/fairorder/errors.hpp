#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fairorder {

/// Base class for every recoverable error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A vote or vote set is structurally malformed (duplicate transaction,
/// bad replica numbering).
class InvalidVoteError : public Error {
 public:
  using Error::Error;
};

/// A vote is missing a transaction that the operation requires every vote
/// to contain.
class IncompleteVoteError : public Error {
 public:
  IncompleteVoteError(std::size_t replica, std::string transaction)
      : Error("replica " + std::to_string(replica) + " does not vote on transaction '" + transaction +
              "'"),
        replica_(replica),
        transaction_(std::move(transaction)) {}

  std::size_t replica() const noexcept { return replica_; }
  const std::string& transaction() const noexcept { return transaction_; }

 private:
  std::size_t replica_;
  std::string transaction_;
};

class UnknownTransactionError : public Error {
 public:
  explicit UnknownTransactionError(const std::string& transaction)
      : Error("unknown transaction '" + transaction + "'") {}
};

/// A streamed vote does not extend the vote the same replica submitted
/// previously.
class PrefixViolationError : public Error {
 public:
  PrefixViolationError(std::size_t replica, std::size_t position, const std::string& detail)
      : Error("replica " + std::to_string(replica) + " reorders its earlier vote at position " +
              std::to_string(position) + ": " + detail),
        replica_(replica),
        position_(position) {}

  std::size_t replica() const noexcept { return replica_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t replica_;
  std::size_t position_;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed; line numbers are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& detail)
      : Error("line " + std::to_string(line) + ": " + detail), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An invariant the algorithms guarantee was observed broken. Never expected
/// in a correct build; callers treat it as fatal.
class InternalFault : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fairorder
