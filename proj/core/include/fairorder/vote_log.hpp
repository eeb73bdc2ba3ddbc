#pragma once

#include "fairorder/transaction.hpp"
#include "fairorder/votes.hpp"

#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

namespace fairorder {

// Vote log: one `replica_index: txid, txid, ...` record per line. Blank lines
// and everything after `#` are ignored. Indices must be 0..n-1, each once.
// Errors are ParseError carrying the 1-based line number.

VoteSet parse_vote_log(std::istream& in);
VoteSet parse_vote_log(const std::string& text);
std::string format_vote_log(const VoteSet& votes);

// Vote stream: vote-log blocks separated by a `---` line. Each record is the
// replica's whole vote at that invocation. The first block lists every
// replica; later blocks list only the replicas whose vote changed.
std::vector<VoteSet> parse_vote_stream(std::istream& in);
std::vector<VoteSet> parse_vote_stream(const std::string& text);
std::string format_vote_stream(std::span<const VoteSet> invocations);

// Output order: one id per line, same comment rules; duplicates rejected.
TotalOrder parse_order(std::istream& in);
TotalOrder parse_order(const std::string& text);
std::string format_order(std::span<const TransactionId> order);

/// Reads a whole file; throws Error when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace fairorder
