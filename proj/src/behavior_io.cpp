#include "negprob/behavior_io.hpp"

#include <map>
#include <sstream>

#include "negprob/errors.hpp"

namespace negprob {

namespace {

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::vector<int> parse_ints(std::string_view text, std::size_t line) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw ParseError(line, "bad integer list '" + std::string(text) + "'");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Line {
  std::size_t number;
  std::string text;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Splits into records at separator lines; drops comments and blanks.
std::vector<std::vector<Line>> split_records(std::string_view text) {
  std::vector<std::vector<Line>> records(1);
  std::size_t number = 0, start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    ++number;
    const auto line = trim(text.substr(start, nl - start));
    start = nl + 1;
    if (line.empty() || line.front() == '#') continue;
    if (line == kRecordSeparator) {
      records.emplace_back();
      continue;
    }
    records.back().push_back({number, std::string(line)});
  }
  if (records.back().empty()) records.pop_back();
  return records;
}

Scenario parse_header(const Line& line) {
  constexpr std::string_view key = "scenario:";
  if (line.text.rfind(key, 0) != 0) throw ParseError(line.number, "expected 'scenario: ...' header");
  try {
    return parse_scenario_spec(std::string(trim(std::string_view(line.text).substr(key.size()))));
  } catch (const Error& e) {
    throw ParseError(line.number, e.what());
  }
}

// key=value tokens separated by whitespace.
std::map<std::string, std::string> fields(const Line& line) {
  std::map<std::string, std::string> out;
  std::istringstream is(line.text);
  std::string tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParseError(line.number, "expected key=value, got '" + tok + "'");
    if (!out.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second)
      throw ParseError(line.number, "duplicate key '" + tok.substr(0, eq) + "'");
  }
  return out;
}

const std::string& require(const std::map<std::string, std::string>& f, const std::string& key, std::size_t line) {
  const auto it = f.find(key);
  if (it == f.end()) throw ParseError(line, "missing '" + key + "='");
  return it->second;
}

Rational parse_value(const std::string& text, std::size_t line) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

Behavior parse_behavior_record(const std::vector<Line>& lines) {
  if (lines.empty()) throw ParseError(0, "empty behavior");
  Scenario sc = parse_header(lines.front());
  std::vector<Rational> table(sc.table_size());
  std::vector<bool> seen(table.size(), false);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const auto f = fields(line);
    if (f.size() != 3) throw ParseError(line.number, "expected settings=, outcomes= and p=");
    const auto settings = parse_ints(require(f, "settings", line.number), line.number);
    const auto outcomes = parse_ints(require(f, "outcomes", line.number), line.number);
    std::size_t idx = 0;
    try {
      idx = sc.joint_setting_index(settings) * sc.joint_outcome_count() + sc.joint_outcome_index(outcomes);
    } catch (const Error& e) {
      throw ParseError(line.number, e.what());
    }
    if (seen[idx]) throw ParseError(line.number, "entry given twice");
    seen[idx] = true;
    table[idx] = parse_value(require(f, "p", line.number), line.number);
  }
  try {
    return Behavior(std::move(sc), std::move(table));
  } catch (const ValidationError& e) {
    throw ParseError(lines.front().number, e.what());
  }
}

}  // namespace

std::string format_behavior(const Behavior& behavior) {
  const Scenario& sc = behavior.scenario();
  std::ostringstream os;
  os << "scenario: " << sc.spec_string() << '\n';
  for (std::size_t s = 0; s < sc.joint_setting_count(); ++s) {
    const auto settings = join(sc.joint_setting(s));
    for (std::size_t o = 0; o < sc.joint_outcome_count(); ++o) {
      const Rational& v = behavior.at(s, o);
      if (sgn(v) == 0) continue;
      os << "settings=" << settings << " outcomes=" << join(sc.joint_outcome(o)) << " p=" << to_string(v) << '\n';
    }
  }
  return os.str();
}

Behavior parse_behavior(std::string_view text) {
  const auto records = split_records(text);
  if (records.size() != 1) throw ParseError(0, "expected exactly one behavior, found " + std::to_string(records.size()));
  return parse_behavior_record(records.front());
}

std::string format_behavior_list(std::span<const Behavior> behaviors) {
  std::string out;
  for (std::size_t i = 0; i < behaviors.size(); ++i) {
    if (i) out += std::string(kRecordSeparator) + "\n";
    out += format_behavior(behaviors[i]);
  }
  return out;
}

std::vector<Behavior> parse_behavior_list(std::string_view text) {
  std::vector<Behavior> out;
  for (const auto& rec : split_records(text)) out.push_back(parse_behavior_record(rec));
  return out;
}

std::string format_jqpd(const QuasiDistribution& jqpd) {
  const Scenario& sc = jqpd.scenario();
  std::ostringstream os;
  os << "scenario: " << sc.spec_string() << '\n';
  for (std::uint64_t a = 0; a < sc.atom_count(); ++a) {
    if (sgn(jqpd[a]) == 0) continue;
    os << "atom=" << join(sc.assignment(a)) << " p=" << to_string(jqpd[a]) << '\n';
  }
  return os.str();
}

QuasiDistribution parse_jqpd(std::string_view text) {
  const auto records = split_records(text);
  if (records.size() != 1) throw ParseError(0, "expected exactly one quasi-distribution");
  const auto& lines = records.front();
  Scenario sc = parse_header(lines.front());
  if (sc.atom_count() > kMaxMaterializedAtoms) throw ParseError(lines.front().number, "too many atoms");
  std::vector<Rational> values(sc.atom_count());
  std::vector<bool> seen(values.size(), false);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = fields(lines[i]);
    if (f.size() != 2) throw ParseError(lines[i].number, "expected atom= and p=");
    const auto assignment = parse_ints(require(f, "atom", lines[i].number), lines[i].number);
    std::uint64_t idx = 0;
    try {
      idx = sc.atom_index(assignment);
    } catch (const Error& e) {
      throw ParseError(lines[i].number, e.what());
    }
    if (seen[idx]) throw ParseError(lines[i].number, "atom given twice");
    seen[idx] = true;
    values[idx] = parse_value(require(f, "p", lines[i].number), lines[i].number);
  }
  try {
    return QuasiDistribution(std::move(sc), std::move(values));
  } catch (const ValidationError& e) {
    throw ParseError(lines.front().number, e.what());
  }
}

}  // namespace negprob
