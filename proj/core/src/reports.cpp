#include "fairorder/reports.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace fairorder {

using nlohmann::ordered_json;

struct RunReport::Impl {
  ordered_json doc;
};

RunReport::RunReport(std::string command) : impl_(std::make_unique<Impl>()) {
  impl_->doc["command"] = std::move(command);
}
RunReport::~RunReport() = default;
RunReport::RunReport(RunReport&&) noexcept = default;
RunReport& RunReport::operator=(RunReport&&) noexcept = default;

std::string hex_digest(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

void RunReport::set_inputs_digest(std::uint64_t digest) { impl_->doc["inputs_digest"] = hex_digest(digest); }
void RunReport::set_seed(std::uint64_t seed) { impl_->doc["seed"] = seed; }

void RunReport::set_output(const TotalOrder& output) {
  auto arr = ordered_json::array();
  for (const auto& id : output) arr.push_back(id.str());
  impl_->doc["output"] = std::move(arr);
}

void RunReport::set_status(const std::string& status, int exit_code) {
  impl_->doc["status"] = status;
  impl_->doc["exit_code"] = exit_code;
}

void RunReport::set_value(const std::string& key, const std::string& value) { impl_->doc[key] = value; }
void RunReport::set_value(const std::string& key, std::int64_t value) { impl_->doc[key] = value; }
void RunReport::set_value(const std::string& key, bool value) { impl_->doc[key] = value; }

void RunReport::set_audit(const OrderingGraph& receipts, const std::vector<FairnessVerdict>& verdicts) {
  auto arr = ordered_json::array();
  for (const auto& v : verdicts) {
    ordered_json rec{{"gamma", to_string(v.gamma)},
                     {"delta", to_string(v.delta)},
                     {"result", v.pass ? "pass" : "violation"},
                     {"reversed_strong_pairs", v.witnesses.size() + v.violation_count}};
    if (v.violation) {
      const auto from = receipts.require_index(v.violation->from);
      ordered_json row = ordered_json::object();
      for (std::size_t x = 0; x < receipts.size(); ++x) {
        if (x != from) row[receipts.id(x).str()] = receipts.count(from, x);
      }
      rec["violation"] = {{"received_first", v.violation->from.str()},
                          {"received_second", v.violation->to.str()},
                          {"receipts", v.violation_receipts},
                          {"replicas", receipts.replica_count()},
                          {"violating_pairs", v.violation_count},
                          {"receipt_row", std::move(row)}};
    }
    auto witnesses = ordered_json::array();
    for (const auto& w : v.witnesses) {
      auto path = ordered_json::array();
      for (const auto& link : w.path) path.push_back({link.from.str(), link.to.str(), link.receipts});
      witnesses.push_back({{"pair", {w.pair.from.str(), w.pair.to.str()}}, {"receipts", w.receipts}, {"path", std::move(path)}});
    }
    rec["witnesses"] = std::move(witnesses);
    arr.push_back(std::move(rec));
  }
  impl_->doc["audit"] = std::move(arr);
}

void RunReport::set_liveness(const LivenessReport& report) {
  auto records = ordered_json::array();
  for (const auto& r : report.records) {
    ordered_json rec{{"id", r.id.str()}, {"send", r.send_time}};
    if (r.emit_time) {
      rec["emit"] = *r.emit_time;
      rec["delay"] = *r.emit_time - r.send_time;
    } else {
      rec["emit"] = nullptr;
    }
    rec["within_bound"] = r.within_bound;
    records.push_back(std::move(rec));
  }
  impl_->doc["liveness"] = {{"bound", report.bound},
                            {"max_delay", report.max_delay()},
                            {"late", report.late},
                            {"never_emitted", report.never_emitted},
                            {"records", std::move(records)}};
}

void RunReport::add_invocation(std::size_t index, const TotalOrder& emitted, std::size_t indeterminate_edges) {
  auto ids = ordered_json::array();
  for (const auto& id : emitted) ids.push_back(id.str());
  impl_->doc["invocations"].push_back(
      {{"index", index}, {"emitted", std::move(ids)}, {"indeterminate_edges", indeterminate_edges}});
}

std::string RunReport::to_json() const { return impl_->doc.dump(2) + "\n"; }

std::string audit_table(const std::vector<FairnessVerdict>& verdicts) {
  std::ostringstream out;
  out << "gamma    delta    result     reversed  detail\n";
  for (const auto& v : verdicts) {
    char line[128];
    std::snprintf(line, sizeof line, "%-8s %-8s %-10s %-9zu ", to_string(v.gamma).c_str(), to_string(v.delta).c_str(),
                  v.pass ? "pass" : "VIOLATION", v.witnesses.size() + v.violation_count);
    out << line;
    if (v.violation) {
      out << v.violation->from.str() << " received before " << v.violation->to.str() << " by " << v.violation_receipts
          << ", output reversed, no justifying path";
    }
    out << "\n";
  }
  return out.str();
}

std::string liveness_table(const LivenessReport& report) {
  std::ostringstream out;
  out << "bound " << report.bound << " ticks, max delay " << report.max_delay() << ", late " << report.late
      << ", never emitted " << report.never_emitted << "\n";
  for (const auto& r : report.records) {
    if (r.within_bound) continue;
    out << "  " << r.id.str() << " sent " << r.send_time << ": "
        << (r.emit_time ? "emitted " + std::to_string(*r.emit_time) : std::string("never emitted")) << "\n";
  }
  return out.str();
}

}  // namespace fairorder
