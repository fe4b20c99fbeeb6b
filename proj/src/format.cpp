#include "wcasc/format.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <vector>

namespace wcasc {

const char* parse_code_name(ParseCode code) {
  switch (code) {
    case ParseCode::Syntax:
      return "Syntax";
    case ParseCode::UnknownId:
      return "UnknownId";
    case ParseCode::DuplicateId:
      return "DuplicateId";
    case ParseCode::ZeroCost:
      return "ZeroCost";
    case ParseCode::IncompleteRealization:
      return "IncompleteRealization";
    case ParseCode::BadValue:
      return "BadValue";
  }
  return "Unknown";
}

ParseError::ParseError(ParseCode code, int line, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + parse_code_name(code) + ": " +
            message),
      code_(code),
      line_(line) {}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    ++number;
    std::string_view raw = text.substr(start, end - start);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
      }
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) {
        ++j;
      }
      if (j > i) {
        line.tokens.emplace_back(raw.substr(i, j - i));
      }
      i = j;
    }
    if (!line.tokens.empty()) {
      lines.push_back(std::move(line));
    }
    if (end == text.size()) {
      break;
    }
    start = end + 1;
  }
  return lines;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lines_(tokenize(text)) {}

  Instance parse() {
    if (lines_.empty() || lines_[0].tokens != std::vector<std::string>{"instance", "v1"}) {
      throw ParseError(ParseCode::Syntax, lines_.empty() ? 1 : lines_[0].number,
                       "expected header 'instance v1'");
    }
    for (std::size_t i = 1; i < lines_.size(); ++i) {
      dispatch(lines_[i]);
    }
    if (!utility_seen_) {
      throw ParseError(ParseCode::Syntax, last_line_, "missing utility declaration");
    }
    try {
      return Instance::create(std::move(data_));
    } catch (const InputError& e) {
      throw ParseError(ParseCode::BadValue, last_line_, e.what());
    }
  }

 private:
  void dispatch(const Line& line) {
    last_line_ = line.number;
    const std::string& head = line.tokens[0];
    if (head == "item") {
      parse_item(line);
    } else if (head == "state") {
      parse_state(line);
    } else if (head == "realization") {
      parse_realization(line);
    } else if (head == "utility") {
      parse_utility(line);
    } else if (head == "value") {
      parse_value(line);
    } else if (head == "element") {
      parse_element(line);
    } else if (head == "covers") {
      parse_covers(line);
    } else if (head == "entry") {
      parse_entry(line);
    } else if (head == "truncate") {
      parse_truncate(line);
    } else {
      throw ParseError(ParseCode::Syntax, line.number, "unknown directive " + head);
    }
  }

  [[noreturn]] void fail(ParseCode code, const Line& line, const std::string& msg) {
    throw ParseError(code, line.number, msg);
  }

  Rational rational(const Line& line, const std::string& token) {
    auto value = try_parse_rational(token);
    if (!value) {
      fail(ParseCode::Syntax, line, "malformed rational " + token);
    }
    return *value;
  }

  void require_known_item(const Line& line, const std::string& id) {
    if (!item_ids_.count(id)) {
      fail(ParseCode::UnknownId, line, "unknown item " + id);
    }
  }

  void require_known_state(const Line& line, const std::string& id) {
    if (!state_ids_.count(id)) {
      fail(ParseCode::UnknownId, line, "unknown state " + id);
    }
  }

  std::pair<std::string, std::string> split_assignment(const Line& line,
                                                       const std::string& token) {
    auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == token.size()) {
      fail(ParseCode::Syntax, line, "expected item=state, got " + token);
    }
    std::string item = token.substr(0, eq);
    std::string state = token.substr(eq + 1);
    require_known_item(line, item);
    require_known_state(line, state);
    return {std::move(item), std::move(state)};
  }

  void parse_item(const Line& line) {
    if (line.tokens.size() != 4 || line.tokens[2] != "cost") {
      fail(ParseCode::Syntax, line, "expected: item <id> cost <rational>");
    }
    const std::string& id = line.tokens[1];
    if (!item_ids_.insert(id).second) {
      fail(ParseCode::DuplicateId, line, "duplicate item " + id);
    }
    Rational cost = rational(line, line.tokens[3]);
    if (!(cost > 0)) {
      fail(ParseCode::ZeroCost, line, "item " + id + " needs a positive cost");
    }
    data_.items.push_back({id, std::move(cost)});
  }

  void parse_state(const Line& line) {
    if (line.tokens.size() != 2) {
      fail(ParseCode::Syntax, line, "expected: state <id>");
    }
    if (!state_ids_.insert(line.tokens[1]).second) {
      fail(ParseCode::DuplicateId, line, "duplicate state " + line.tokens[1]);
    }
    data_.states.push_back(line.tokens[1]);
  }

  void parse_realization(const Line& line) {
    if (line.tokens.size() < 6 || line.tokens[2] != "weight" ||
        line.tokens[4] != "{" || line.tokens.back() != "}") {
      fail(ParseCode::Syntax, line,
           "expected: realization <id> weight <rational> { item=state ... }");
    }
    InstanceData::RealizationData real;
    real.id = line.tokens[1];
    if (!realization_ids_.insert(real.id).second) {
      fail(ParseCode::DuplicateId, line, "duplicate realization " + real.id);
    }
    real.weight = rational(line, line.tokens[3]);
    if (!(real.weight > 0)) {
      fail(ParseCode::BadValue, line, "realization weight must be positive");
    }
    std::set<std::string> seen;
    for (std::size_t i = 5; i + 1 < line.tokens.size(); ++i) {
      auto [item, state] = split_assignment(line, line.tokens[i]);
      if (!seen.insert(item).second) {
        fail(ParseCode::DuplicateId, line,
             "realization assigns item " + item + " twice");
      }
      real.assignment.emplace_back(std::move(item), std::move(state));
    }
    if (real.assignment.size() != data_.items.size()) {
      fail(ParseCode::IncompleteRealization, line,
           "realization " + real.id + " must assign every item");
    }
    data_.realizations.push_back(std::move(real));
  }

  void parse_utility(const Line& line) {
    if (line.tokens.size() != 2) {
      fail(ParseCode::Syntax, line, "expected: utility <kind>");
    }
    if (utility_seen_) {
      fail(ParseCode::Syntax, line, "utility declared twice");
    }
    utility_seen_ = true;
    const std::string& kind = line.tokens[1];
    if (kind == "modular") {
      data_.utility_kind = InstanceData::UtilityKind::Modular;
    } else if (kind == "coverage") {
      data_.utility_kind = InstanceData::UtilityKind::Coverage;
    } else if (kind == "identification") {
      data_.utility_kind = InstanceData::UtilityKind::Identification;
    } else if (kind == "table") {
      data_.utility_kind = InstanceData::UtilityKind::Table;
    } else {
      fail(ParseCode::Syntax, line, "unknown utility kind " + kind);
    }
  }

  void require_utility(const Line& line, InstanceData::UtilityKind kind,
                       const char* directive) {
    if (!utility_seen_ || data_.utility_kind != kind) {
      fail(ParseCode::Syntax, line,
           std::string(directive) + " is only valid after its utility declaration");
    }
  }

  void parse_value(const Line& line) {
    require_utility(line, InstanceData::UtilityKind::Modular, "value");
    if (line.tokens.size() != 4) {
      fail(ParseCode::Syntax, line, "expected: value <item> <state> <rational>");
    }
    require_known_item(line, line.tokens[1]);
    require_known_state(line, line.tokens[2]);
    Rational value = rational(line, line.tokens[3]);
    if (value < 0) {
      fail(ParseCode::BadValue, line, "utility values must be nonnegative");
    }
    data_.modular_values.emplace_back(line.tokens[1], line.tokens[2], std::move(value));
  }

  void parse_element(const Line& line) {
    require_utility(line, InstanceData::UtilityKind::Coverage, "element");
    if (line.tokens.size() != 4 || line.tokens[2] != "weight") {
      fail(ParseCode::Syntax, line, "expected: element <id> weight <rational>");
    }
    if (!element_ids_.insert(line.tokens[1]).second) {
      fail(ParseCode::DuplicateId, line, "duplicate element " + line.tokens[1]);
    }
    Rational weight = rational(line, line.tokens[3]);
    if (weight < 0) {
      fail(ParseCode::BadValue, line, "element weights must be nonnegative");
    }
    data_.elements.emplace_back(line.tokens[1], std::move(weight));
  }

  void parse_covers(const Line& line) {
    require_utility(line, InstanceData::UtilityKind::Coverage, "covers");
    if (line.tokens.size() < 5 || line.tokens[3] != ":") {
      fail(ParseCode::Syntax, line,
           "expected: covers <item> <state> : <element> ...");
    }
    require_known_item(line, line.tokens[1]);
    require_known_state(line, line.tokens[2]);
    std::vector<std::string> covered;
    for (std::size_t i = 4; i < line.tokens.size(); ++i) {
      if (!element_ids_.count(line.tokens[i])) {
        fail(ParseCode::UnknownId, line, "unknown element " + line.tokens[i]);
      }
      covered.push_back(line.tokens[i]);
    }
    data_.covers.emplace_back(line.tokens[1], line.tokens[2], std::move(covered));
  }

  void parse_entry(const Line& line) {
    require_utility(line, InstanceData::UtilityKind::Table, "entry");
    if (line.tokens.size() < 4 || line.tokens[1] != "{") {
      fail(ParseCode::Syntax, line,
           "expected: entry { item=state ... } <rational>");
    }
    std::size_t close = 2;
    std::vector<std::pair<std::string, std::string>> pattern;
    while (close < line.tokens.size() && line.tokens[close] != "}") {
      pattern.push_back(split_assignment(line, line.tokens[close]));
      ++close;
    }
    if (close + 2 != line.tokens.size()) {
      fail(ParseCode::Syntax, line,
           "expected: entry { item=state ... } <rational>");
    }
    Rational value = rational(line, line.tokens[close + 1]);
    if (value < 0) {
      fail(ParseCode::BadValue, line, "utility values must be nonnegative");
    }
    data_.table_entries.emplace_back(std::move(pattern), std::move(value));
  }

  void parse_truncate(const Line& line) {
    if (line.tokens.size() != 2) {
      fail(ParseCode::Syntax, line, "expected: truncate <rational>");
    }
    if (!utility_seen_) {
      fail(ParseCode::Syntax, line, "truncate must follow the utility");
    }
    if (data_.cap.has_value()) {
      fail(ParseCode::Syntax, line, "truncate declared twice");
    }
    Rational cap = rational(line, line.tokens[1]);
    if (cap < 0) {
      fail(ParseCode::BadValue, line, "truncation cap must be nonnegative");
    }
    data_.cap = std::move(cap);
  }

  std::vector<Line> lines_;
  InstanceData data_;
  std::set<std::string> item_ids_;
  std::set<std::string> state_ids_;
  std::set<std::string> realization_ids_;
  std::set<std::string> element_ids_;
  bool utility_seen_ = false;
  int last_line_ = 1;
};

}  // namespace

Instance parse_instance(std::string_view text) { return Parser(text).parse(); }

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  out << "instance v1\n";
  for (const Item& item : instance.items()) {
    out << "item " << item.id << " cost " << to_string(item.cost) << "\n";
  }
  for (const std::string& state : instance.states()) {
    out << "state " << state << "\n";
  }
  for (const Realization& real : instance.realizations()) {
    out << "realization " << real.id << " weight " << to_string(real.weight) << " {";
    for (int e = 0; e < instance.item_count(); ++e) {
      out << " " << instance.item(e).id << "=" << instance.state_id(real.state[e]);
    }
    out << " }\n";
  }

  const Utility& utility = instance.utility();
  if (const auto* modular = std::get_if<ModularUtility>(&utility.base)) {
    out << "utility modular\n";
    for (int e = 0; e < instance.item_count(); ++e) {
      for (int s = 0; s < instance.state_count(); ++s) {
        if (modular->value[e][s] != 0) {
          out << "value " << instance.item(e).id << " " << instance.state_id(s) << " "
              << to_string(modular->value[e][s]) << "\n";
        }
      }
    }
  } else if (const auto* coverage = std::get_if<CoverageUtility>(&utility.base)) {
    out << "utility coverage\n";
    for (std::size_t g = 0; g < coverage->element_ids.size(); ++g) {
      out << "element " << coverage->element_ids[g] << " weight "
          << to_string(coverage->element_weight[g]) << "\n";
    }
    for (int e = 0; e < instance.item_count(); ++e) {
      for (int s = 0; s < instance.state_count(); ++s) {
        const auto& covered = coverage->covers[e][s];
        if (covered.empty()) {
          continue;
        }
        out << "covers " << instance.item(e).id << " " << instance.state_id(s) << " :";
        for (int g : covered) {
          out << " " << coverage->element_ids[g];
        }
        out << "\n";
      }
    }
  } else if (std::holds_alternative<IdentificationUtility>(utility.base)) {
    out << "utility identification\n";
  } else {
    const auto& table = std::get<TableUtility>(utility.base);
    out << "utility table\n";
    for (const auto& [pattern, value] : table.entries) {
      out << "entry {";
      for (Observation o : pattern) {
        out << " " << instance.item(o.item).id << "=" << instance.state_id(o.state);
      }
      out << " } " << to_string(value) << "\n";
    }
  }
  if (utility.cap.has_value()) {
    out << "truncate " << to_string(*utility.cap) << "\n";
  }
  return out.str();
}

namespace {

void render_compact(const Instance& instance, const PolicyTree& tree, int at,
                    std::string& out) {
  const PolicyNode& node = tree.node(at);
  if (node.is_stop()) {
    out += "stop";
    return;
  }
  out += instance.item(node.item).id;
  out += "(";
  bool first = true;
  for (const auto& [state, child] : node.branches) {
    if (!first) {
      out += " ";
    }
    first = false;
    out += instance.state_id(state);
    out += ":";
    render_compact(instance, tree, child, out);
  }
  out += ")";
}

void render_indented(const Instance& instance, const PolicyTree& tree, int at,
                     int depth, std::string& out) {
  const PolicyNode& node = tree.node(at);
  std::string pad(2 * static_cast<std::size_t>(depth), ' ');
  if (node.is_stop()) {
    out += pad + "stop\n";
    return;
  }
  out += pad + "select " + instance.item(node.item).id + " [cost " +
         to_string(instance.item(node.item).cost) + "]" +
         (node.fallback ? " (fallback)" : "") + "\n";
  for (const auto& [state, child] : node.branches) {
    out += pad + "  " + instance.state_id(state) + " ->\n";
    render_indented(instance, tree, child, depth + 2, out);
  }
}

}  // namespace

std::string render_tree(const Instance& instance, const PolicyTree& tree) {
  std::string out;
  render_compact(instance, tree, 0, out);
  return out;
}

std::string render_tree_indented(const Instance& instance, const PolicyTree& tree) {
  std::string out;
  render_indented(instance, tree, 0, 0, out);
  return out;
}

std::string render_observations(const Instance& instance,
                                const PartialRealization& psi) {
  std::string out = "{";
  for (const Observation& o : psi.observations()) {
    if (out.size() > 1) {
      out += " ";
    }
    out += instance.item(o.item).id + "=" + instance.state_id(o.state);
  }
  out += "}";
  return out;
}

}  // namespace wcasc
