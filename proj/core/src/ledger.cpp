#include "fairorder/ledger.hpp"

#include "fairorder/errors.hpp"

#include <algorithm>
#include <sstream>

namespace fairorder {

std::string to_string(EdgeStatus status) {
  switch (status) {
    case EdgeStatus::AcceptedDeterminate: return "accepted";
    case EdgeStatus::Rejected: return "rejected";
    case EdgeStatus::Indeterminate: return "indeterminate";
  }
  return "?";
}

bool operator==(const LedgerEntry& a, const LedgerEntry& b) {
  return a.edge == b.edge && a.status == b.status && a.weight.count() == b.weight.count() &&
         a.weight.denominator() == b.weight.denominator() && a.seq == b.seq;
}

const LedgerEntry* DecisionLedger::find(const TxEdge& edge) const {
  auto it = entries_.find(edge);
  return it == entries_.end() ? nullptr : &it->second;
}

const LedgerEntry& DecisionLedger::record(const TxEdge& edge, EdgeStatus status, Weight weight) {
  if (status == EdgeStatus::Indeterminate) throw InvalidArgumentError("ledger holds final decisions only");
  auto [it, inserted] = entries_.emplace(edge, LedgerEntry{edge, status, weight, next_seq_});
  if (!inserted) throw InvalidArgumentError("edge " + to_string(edge) + " already decided");
  ++next_seq_;
  return it->second;
}

void DecisionLedger::restore(const LedgerEntry& entry) {
  if (entry.status == EdgeStatus::Indeterminate) throw InvalidArgumentError("ledger holds final decisions only");
  if (!entries_.emplace(entry.edge, entry).second) {
    throw InvalidArgumentError("edge " + to_string(entry.edge) + " already decided");
  }
  next_seq_ = std::max(next_seq_, entry.seq + 1);
}

std::size_t DecisionLedger::prune(const std::unordered_set<TransactionId>& emitted) {
  return std::erase_if(entries_, [&](const auto& kv) {
    return emitted.contains(kv.first.from) || emitted.contains(kv.first.to);
  });
}

std::vector<LedgerEntry> DecisionLedger::entries() const {
  std::vector<LedgerEntry> out;
  out.reserve(entries_.size());
  for (const auto& [edge, entry] : entries_) out.push_back(entry);
  std::sort(out.begin(), out.end(), [](const LedgerEntry& a, const LedgerEntry& b) {
    if (auto c = a.weight <=> b.weight; c != 0) return c > 0;
    return a.seq < b.seq;
  });
  return out;
}

std::string format_ledger_snapshot(const DecisionLedger& ledger, const TotalOrder& output) {
  std::ostringstream out;
  out << "fairorder-ledger v1\n";
  for (const auto& id : output) out << "output " << id.str() << "\n";
  for (const auto& e : ledger.entries()) {
    out << "entry " << e.edge.from.str() << " " << e.edge.to.str() << " " << to_string(e.status) << " "
        << e.weight.count() << " " << e.weight.denominator() << " " << e.seq << "\n";
  }
  return out.str();
}

LedgerSnapshot parse_ledger_snapshot(const std::string& text) {
  LedgerSnapshot snap;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) continue;
    if (!header) {
      if (raw != "fairorder-ledger v1") throw ParseError(line, "missing 'fairorder-ledger v1' header");
      header = true;
      continue;
    }
    std::istringstream fields(raw);
    std::string kind;
    fields >> kind;
    if (kind == "output") {
      std::string id;
      if (!(fields >> id)) throw ParseError(line, "output record needs an id");
      snap.output.emplace_back(id);
    } else if (kind == "entry") {
      std::string from, to, status;
      std::uint32_t num = 0, den = 0;
      std::uint64_t seq = 0;
      if (!(fields >> from >> to >> status >> num >> den >> seq) || den == 0 || num > den) {
        throw ParseError(line, "malformed entry record");
      }
      LedgerEntry e{{TransactionId(from), TransactionId(to)}, EdgeStatus::AcceptedDeterminate, Weight(num, den), seq};
      if (status == "rejected") {
        e.status = EdgeStatus::Rejected;
      } else if (status != "accepted") {
        throw ParseError(line, "unknown status '" + status + "'");
      }
      try {
        snap.ledger.restore(e);
      } catch (const InvalidArgumentError& err) {
        throw ParseError(line, err.what());
      }
    } else {
      throw ParseError(line, "unknown record '" + kind + "'");
    }
    std::string extra;
    if (fields >> extra) throw ParseError(line, "trailing field '" + extra + "'");
  }
  if (!header) throw ParseError(line, "empty ledger snapshot");
  return snap;
}

}  // namespace fairorder
