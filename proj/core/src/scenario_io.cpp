#include "fairorder/scenario_io.hpp"

#include "fairorder/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>
#include <unordered_set>

namespace fairorder {

using nlohmann::json;

namespace {

std::size_t line_of(const std::string& text, std::size_t byte) {
  const auto end = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
}

template <typename T>
T get_field(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidArgumentError(std::string("field '") + key + "' has the wrong type");
  }
}

std::vector<TransactionId> id_list(const json& arr, const char* what) {
  if (!arr.is_array()) throw InvalidArgumentError(std::string(what) + " must be an array of ids");
  std::vector<TransactionId> out;
  for (const auto& v : arr) {
    if (!v.is_string()) throw InvalidArgumentError(std::string(what) + " must contain strings");
    out.emplace_back(v.get<std::string>());
  }
  return out;
}

const char* kind_name(FaultStrategy::Kind k) {
  switch (k) {
    case FaultStrategy::Kind::Honest: return "honest";
    case FaultStrategy::Kind::WindowShuffle: return "window_shuffle";
    case FaultStrategy::Kind::TargetedSwap: return "targeted_swap";
    case FaultStrategy::Kind::Withholder: return "withholder";
  }
  return "honest";
}

}  // namespace

ScenarioConfig parse_scenario_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(line_of(json_text, e.byte == 0 ? 0 : e.byte - 1), "invalid JSON in scenario config");
  }
  if (!doc.is_object()) throw ParseError(1, "scenario config must be a JSON object");

  static const std::unordered_set<std::string> known{"replicas", "delta",   "round_len", "completion_rounds",
                                                     "seed",     "horizon", "rounding_denominator",
                                                     "schedule", "generate", "faults"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) throw InvalidArgumentError("unknown scenario field '" + key + "'");
  }

  ScenarioConfig c;
  c.replicas = get_field<std::size_t>(doc, "replicas", c.replicas);
  c.delta = get_field<std::uint64_t>(doc, "delta", c.delta);
  c.round_len = get_field<std::uint64_t>(doc, "round_len", c.round_len);
  c.completion_rounds = get_field<std::uint64_t>(doc, "completion_rounds", c.completion_rounds);
  c.seed = get_field<std::uint64_t>(doc, "seed", c.seed);
  c.horizon = get_field<std::uint64_t>(doc, "horizon", c.horizon);
  if (doc.contains("rounding_denominator") && !doc["rounding_denominator"].is_null()) {
    c.rounding_denominator = get_field<std::uint32_t>(doc, "rounding_denominator", 0);
  }

  if (doc.contains("schedule") && doc.contains("generate")) {
    throw InvalidArgumentError("give either 'schedule' or 'generate', not both");
  }
  if (doc.contains("schedule")) {
    const auto& s = doc["schedule"];
    if (!s.is_array()) throw InvalidArgumentError("'schedule' must be an array");
    for (const auto& item : s) {
      if (!item.is_object() || !item.contains("id") || !item["id"].is_string()) {
        throw InvalidArgumentError("schedule entries need a string 'id'");
      }
      c.schedule.push_back({get_field<std::uint64_t>(item, "send", 0), TransactionId(item["id"].get<std::string>())});
    }
  } else if (doc.contains("generate")) {
    const auto& g = doc["generate"];
    if (!g.is_object()) throw InvalidArgumentError("'generate' must be an object");
    c.schedule = generate_schedule(get_field<std::size_t>(g, "count", 0), get_field<std::uint64_t>(g, "max_gap", 0),
                                   c.seed, get_field<std::string>(g, "prefix", "t"));
  }

  if (doc.contains("faults")) {
    const auto& fs = doc["faults"];
    if (!fs.is_array()) throw InvalidArgumentError("'faults' must be an array");
    c.faults.assign(c.replicas, FaultStrategy{});
    for (const auto& item : fs) {
      if (!item.is_object()) throw InvalidArgumentError("fault entries must be objects");
      const auto replica = get_field<std::size_t>(item, "replica", c.replicas);
      if (replica >= c.replicas) throw InvalidArgumentError("fault entry has an out-of-range replica");
      const auto kind = get_field<std::string>(item, "kind", "");
      FaultStrategy f;
      if (kind == "honest") {
        f.kind = FaultStrategy::Kind::Honest;
      } else if (kind == "window_shuffle") {
        f.kind = FaultStrategy::Kind::WindowShuffle;
        f.window = get_field<std::size_t>(item, "window", 0);
      } else if (kind == "targeted_swap") {
        f.kind = FaultStrategy::Kind::TargetedSwap;
        if (!item.contains("pairs") || !item["pairs"].is_array()) {
          throw InvalidArgumentError("targeted_swap needs 'pairs'");
        }
        for (const auto& p : item["pairs"]) {
          const auto pair = id_list(p, "targeted_swap pair");
          if (pair.size() != 2) throw InvalidArgumentError("targeted_swap pairs have two ids");
          f.pairs.emplace_back(pair[0], pair[1]);
        }
      } else if (kind == "withholder") {
        f.kind = FaultStrategy::Kind::Withholder;
        f.victims = id_list(item.value("victims", json::array()), "withholder victims");
      } else {
        throw InvalidArgumentError("unknown fault kind '" + kind + "'");
      }
      c.faults[replica] = std::move(f);
    }
  }
  validate(c);
  return c;
}

std::string format_scenario_config(const ScenarioConfig& c) {
  json doc{{"replicas", c.replicas},   {"delta", c.delta}, {"round_len", c.round_len},
           {"completion_rounds", c.completion_rounds}, {"seed", c.seed}, {"horizon", c.horizon}};
  if (c.rounding_denominator) doc["rounding_denominator"] = *c.rounding_denominator;
  json schedule = json::array();
  for (const auto& tx : c.schedule) schedule.push_back({{"id", tx.id.str()}, {"send", tx.send_time}});
  doc["schedule"] = std::move(schedule);
  json faults = json::array();
  for (std::size_t r = 0; r < c.faults.size(); ++r) {
    const auto& f = c.faults[r];
    if (f.honest()) continue;
    json item{{"replica", r}, {"kind", kind_name(f.kind)}};
    if (f.kind == FaultStrategy::Kind::WindowShuffle) item["window"] = f.window;
    if (f.kind == FaultStrategy::Kind::TargetedSwap) {
      json pairs = json::array();
      for (const auto& [a, b] : f.pairs) pairs.push_back({a.str(), b.str()});
      item["pairs"] = std::move(pairs);
    }
    if (f.kind == FaultStrategy::Kind::Withholder) {
      json victims = json::array();
      for (const auto& v : f.victims) victims.push_back(v.str());
      item["victims"] = std::move(victims);
    }
    faults.push_back(std::move(item));
  }
  if (!faults.empty()) doc["faults"] = std::move(faults);
  return doc.dump(2) + "\n";
}

namespace {

struct Event {
  std::uint64_t tick;
  int rank;
  std::string kind;
  std::string payload;
};

}  // namespace

std::string format_trace(const SimTrace& trace) {
  const auto& c = trace.config;
  std::vector<Event> events;
  {
    std::ostringstream s;
    s << "replicas=" << c.replicas << " delta=" << c.delta << " round_len=" << c.round_len
      << " completion_rounds=" << c.completion_rounds << " seed=" << c.seed << " horizon=" << c.horizon
      << " rounding=" << (c.rounding_denominator ? std::to_string(*c.rounding_denominator) : "none") << " faulty=";
    const auto faulty = faulty_replicas(c);
    for (std::size_t i = 0; i < faulty.size(); ++i) s << (i ? "," : "") << faulty[i];
    events.push_back({0, -1, "scenario", s.str()});
  }
  for (const auto& tx : c.schedule) events.push_back({tx.send_time, 0, "send", tx.id.str()});
  for (std::size_t r = 0; r < trace.receipts.size(); ++r) {
    for (const auto& rec : trace.receipts[r]) events.push_back({rec.tick, 1, "receive", std::to_string(r) + " " + rec.id.str()});
  }
  std::map<std::pair<std::uint64_t, std::size_t>, std::vector<TransactionId>> fabricated;
  for (const auto& f : trace.fabrications) fabricated[{f.round, f.replica}].push_back(f.id);
  std::vector<std::size_t> reported(c.replicas, 0);
  for (const auto& round : trace.rounds) {
    for (std::size_t r = 0; r < round.votes.replica_count(); ++r) {
      const auto vote = round.votes.vote(r);
      const auto& fab = fabricated[{round.round, r}];
      const auto own_end = vote.size() - fab.size();
      for (auto k = reported[r]; k < own_end; ++k) events.push_back({round.tick, 2, "report", std::to_string(r) + " " + vote[k].str()});
      for (const auto& id : fab) events.push_back({round.tick, 3, "fabricate", std::to_string(r) + " " + id.str()});
      reported[r] = vote.size();
    }
    for (const auto& id : round.emitted) events.push_back({round.tick, 4, "emit", id.str()});
  }
  std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return a.tick != b.tick ? a.tick < b.tick : a.rank < b.rank;
  });
  std::string out;
  for (const auto& e : events) out += std::to_string(e.tick) + "\t" + e.kind + "\t" + e.payload + "\n";
  return out;
}

namespace {

std::uint64_t parse_uint(std::string_view s, std::size_t line, const char* what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

std::pair<std::size_t, TransactionId> replica_and_id(const std::string& payload, std::size_t line, std::size_t replicas) {
  const auto space = payload.find(' ');
  if (space == std::string::npos) throw ParseError(line, "expected '<replica> <id>'");
  const auto r = parse_uint(std::string_view(payload).substr(0, space), line, "replica");
  if (r >= replicas) throw ParseError(line, "replica out of range");
  const auto id = payload.substr(space + 1);
  if (id.empty() || id.find_first_of(" \t") != std::string::npos) throw ParseError(line, "bad transaction id");
  return {static_cast<std::size_t>(r), TransactionId(id)};
}

}  // namespace

TraceSummary parse_trace(const std::string& text) {
  TraceSummary t;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  bool have_scenario = false;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) continue;
    const auto tab1 = raw.find('\t');
    const auto tab2 = tab1 == std::string::npos ? std::string::npos : raw.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) throw ParseError(line, "expected 'tick<TAB>kind<TAB>payload'");
    const auto tick = parse_uint(std::string_view(raw).substr(0, tab1), line, "tick");
    const auto kind = raw.substr(tab1 + 1, tab2 - tab1 - 1);
    const auto payload = raw.substr(tab2 + 1);

    if (kind == "scenario") {
      std::istringstream fields(payload);
      std::string kv;
      while (fields >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ParseError(line, "bad scenario field '" + kv + "'");
        const auto key = kv.substr(0, eq);
        const auto value = kv.substr(eq + 1);
        if (key == "replicas") {
          t.replicas = static_cast<std::size_t>(parse_uint(value, line, "replica count"));
        } else if (key == "rounding" && value != "none") {
          t.rounding_denominator = static_cast<std::uint32_t>(parse_uint(value, line, "rounding"));
        } else if (key == "faulty" && !value.empty()) {
          std::istringstream list(value);
          std::string item;
          while (std::getline(list, item, ',')) t.faulty.push_back(static_cast<std::size_t>(parse_uint(item, line, "replica")));
        }
      }
      if (t.replicas == 0) throw ParseError(line, "scenario needs replicas >= 1");
      t.received.assign(t.replicas, {});
      t.reported.assign(t.replicas, {});
      have_scenario = true;
      continue;
    }
    if (!have_scenario) throw ParseError(line, "trace must start with a scenario event");
    if (kind == "send") {
      t.sends.push_back({tick, TransactionId(payload)});
    } else if (kind == "receive") {
      auto [r, id] = replica_and_id(payload, line, t.replicas);
      t.received[r].push_back(std::move(id));
    } else if (kind == "report") {
      auto [r, id] = replica_and_id(payload, line, t.replicas);
      t.reported[r].push_back(std::move(id));
    } else if (kind == "fabricate") {
      auto [r, id] = replica_and_id(payload, line, t.replicas);
      t.reported[r].push_back(std::move(id));
      ++t.fabrications;
    } else if (kind == "emit") {
      t.output.push_back({tick, TransactionId(payload)});
    } else {
      throw ParseError(line, "unknown event kind '" + kind + "'");
    }
  }
  if (!have_scenario) throw ParseError(line, "empty trace");
  return t;
}

ReceiptProfile TraceSummary::profile() const { return {received, faulty, VoteSet(reported)}; }

TotalOrder TraceSummary::output_order() const {
  TotalOrder out;
  for (const auto& e : output) out.push_back(e.id);
  return out;
}

}  // namespace fairorder
