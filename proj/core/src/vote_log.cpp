#include "fairorder/vote_log.hpp"

#include "fairorder/errors.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string_view>
#include <unordered_set>

namespace fairorder {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  return trim(line);
}

TransactionId parse_id(std::string_view token, std::size_t line) {
  if (token.empty()) throw ParseError(line, "empty transaction id");
  for (char c : token) {
    if (c == ' ' || c == '\t' || c == ':' || c == ',') {
      throw ParseError(line, "malformed transaction id '" + std::string(token) + "'");
    }
  }
  return TransactionId(std::string(token));
}

struct Record {
  std::size_t replica;
  std::vector<TransactionId> sequence;
};

Record parse_record(std::string_view text, std::size_t line) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError(line, "expected 'replica_index: txid, ...'");
  const auto index_text = trim(text.substr(0, colon));
  std::size_t replica = 0;
  const auto [ptr, ec] = std::from_chars(index_text.data(), index_text.data() + index_text.size(), replica);
  if (index_text.empty() || ec != std::errc{} || ptr != index_text.data() + index_text.size()) {
    throw ParseError(line, "bad replica index '" + std::string(index_text) + "'");
  }
  Record record{replica, {}};
  auto rest = trim(text.substr(colon + 1));
  std::unordered_set<TransactionId> seen;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto token = trim(rest.substr(0, comma));
    auto id = parse_id(token, line);
    if (!seen.insert(id).second) throw ParseError(line, "transaction '" + id.str() + "' listed twice");
    record.sequence.push_back(std::move(id));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
    if (trim(rest).empty()) throw ParseError(line, "trailing comma");
  }
  return record;
}

struct Block {
  std::map<std::size_t, std::vector<TransactionId>> records;
  std::size_t last_line = 0;
};

std::vector<Block> parse_blocks(std::istream& in, bool allow_separators) {
  std::vector<Block> blocks(1);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = strip_comment(raw);
    if (text.empty()) continue;
    if (text == "---") {
      if (!allow_separators) throw ParseError(line, "unexpected block separator");
      blocks.back().last_line = line;
      blocks.emplace_back();
      continue;
    }
    auto record = parse_record(text, line);
    if (!blocks.back().records.emplace(record.replica, std::move(record.sequence)).second) {
      throw ParseError(line, "replica " + std::to_string(record.replica) + " appears twice");
    }
    blocks.back().last_line = line;
  }
  return blocks;
}

VoteSet full_block(const Block& block) {
  std::vector<std::vector<TransactionId>> votes;
  std::size_t expected = 0;
  for (const auto& [replica, seq] : block.records) {
    if (replica != expected) {
      throw ParseError(block.last_line, "replica indices must be 0.." + std::to_string(block.records.size() - 1) +
                                            "; missing " + std::to_string(expected));
    }
    votes.push_back(seq);
    ++expected;
  }
  return VoteSet(std::move(votes));
}

std::string join_vote(std::size_t replica, std::span<const TransactionId> seq) {
  std::string out = std::to_string(replica) + ":";
  for (std::size_t i = 0; i < seq.size(); ++i) out += (i == 0 ? " " : ", ") + seq[i].str();
  return out + "\n";
}

}  // namespace

VoteSet parse_vote_log(std::istream& in) { return full_block(parse_blocks(in, false).front()); }

VoteSet parse_vote_log(const std::string& text) {
  std::istringstream in(text);
  return parse_vote_log(in);
}

std::string format_vote_log(const VoteSet& votes) {
  std::string out;
  for (std::size_t r = 0; r < votes.replica_count(); ++r) out += join_vote(r, votes.vote(r));
  return out;
}

std::vector<VoteSet> parse_vote_stream(std::istream& in) {
  auto blocks = parse_blocks(in, true);
  while (!blocks.empty() && blocks.back().records.empty()) blocks.pop_back();
  std::vector<VoteSet> result;
  if (blocks.empty()) return result;
  result.push_back(full_block(blocks.front()));
  for (std::size_t b = 1; b < blocks.size(); ++b) {
    auto votes = result.back().votes();
    for (auto& [replica, seq] : blocks[b].records) {
      if (replica >= votes.size()) {
        throw ParseError(blocks[b].last_line, "replica " + std::to_string(replica) + " was not in the first block");
      }
      votes[replica] = std::move(seq);
    }
    result.emplace_back(std::move(votes));
  }
  return result;
}

std::vector<VoteSet> parse_vote_stream(const std::string& text) {
  std::istringstream in(text);
  return parse_vote_stream(in);
}

std::string format_vote_stream(std::span<const VoteSet> invocations) {
  std::string out;
  for (std::size_t i = 0; i < invocations.size(); ++i) {
    if (i > 0) out += "---\n";
    const auto& cur = invocations[i];
    for (std::size_t r = 0; r < cur.replica_count(); ++r) {
      if (i > 0 && r < invocations[i - 1].replica_count() && invocations[i - 1].votes()[r] == cur.votes()[r]) {
        continue;
      }
      out += join_vote(r, cur.vote(r));
    }
  }
  return out;
}

TotalOrder parse_order(std::istream& in) {
  TotalOrder order;
  std::unordered_set<TransactionId> seen;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = strip_comment(raw);
    if (text.empty()) continue;
    auto id = parse_id(text, line);
    if (!seen.insert(id).second) throw ParseError(line, "transaction '" + id.str() + "' listed twice");
    order.push_back(std::move(id));
  }
  return order;
}

TotalOrder parse_order(const std::string& text) {
  std::istringstream in(text);
  return parse_order(in);
}

std::string format_order(std::span<const TransactionId> order) {
  std::string out;
  for (const auto& id : order) out += id.str() + "\n";
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace fairorder
