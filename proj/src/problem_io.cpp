#include "prkit/problem_io.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace prkit {

namespace {

struct Token {
  std::string text;
  int col = 0;  // 1-based start column
};

struct Line {
  int number = 0;
  std::vector<Token> tokens;
};

// Strips comments, splits on whitespace, keeps positions.
std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream is(text);
  std::string raw;
  int number = 0;
  while (std::getline(is, raw)) {
    ++number;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    Line line;
    line.number = number;
    size_t pos = 0;
    while (pos < raw.size()) {
      while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
      size_t start = pos;
      while (pos < raw.size() && !std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
      if (pos > start)
        line.tokens.push_back({raw.substr(start, pos - start), static_cast<int>(start) + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

// "key:" or "key:value" handling: returns the remainder after the first
// colon, which may be empty.
bool split_keyword(const Token& token, const std::string& keyword, std::string* rest) {
  if (token.text.size() < keyword.size() + 1) return false;
  if (token.text.compare(0, keyword.size(), keyword) != 0) return false;
  if (token.text[keyword.size()] != ':') return false;
  *rest = token.text.substr(keyword.size() + 1);
  return true;
}

}  // namespace

Problem parse_problem(const std::string& text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, 1, "empty problem file");
  size_t cursor = 0;
  auto need_line = [&](const char* what) -> const Line& {
    if (cursor >= lines.size())
      throw ParseError(lines.back().number + 1, 1, std::string("expected ") + what);
    return lines[cursor];
  };

  Problem problem;

  {  // agents
    const Line& line = need_line("'agents:' line");
    std::string rest;
    if (!split_keyword(line.tokens[0], "agents", &rest))
      throw ParseError(line.number, line.tokens[0].col, "expected 'agents:'");
    std::vector<Token> ids;
    if (!rest.empty()) ids.push_back({rest, line.tokens[0].col});
    ids.insert(ids.end(), line.tokens.begin() + 1, line.tokens.end());
    if (ids.empty()) throw ParseError(line.number, line.tokens[0].col, "no agent ids listed");
    for (const auto& id : ids) {
      if (id.text.find(':') != std::string::npos)
        throw ParseError(line.number, id.col, "agent id must not contain ':'");
      if (problem.find_agent(id.text))
        throw ParseError(line.number, id.col, "duplicate agent id '" + id.text + "'");
      problem.agent_ids.push_back(id.text);
    }
    ++cursor;
  }

  int objects_line = 0;
  {  // objects
    const Line& line = need_line("'objects:' line");
    objects_line = line.number;
    std::string rest;
    if (!split_keyword(line.tokens[0], "objects", &rest))
      throw ParseError(line.number, line.tokens[0].col, "expected 'objects:'");
    std::vector<Token> entries;
    if (!rest.empty()) entries.push_back({rest, line.tokens[0].col});
    entries.insert(entries.end(), line.tokens.begin() + 1, line.tokens.end());
    if (entries.empty()) throw ParseError(line.number, line.tokens[0].col, "no objects listed");
    for (const auto& entry : entries) {
      const size_t colon = entry.text.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == entry.text.size())
        throw ParseError(line.number, entry.col,
                         "object entry '" + entry.text + "' is not of the form id:quota");
      const std::string id = entry.text.substr(0, colon);
      const std::string quota_text = entry.text.substr(colon + 1);
      if (problem.find_object(id))
        throw ParseError(line.number, entry.col, "duplicate object id '" + id + "'");
      int quota = 0;
      try {
        size_t used = 0;
        quota = std::stoi(quota_text, &used);
        if (used != quota_text.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError(line.number, entry.col, "quota '" + quota_text + "' is not an integer");
      }
      if (quota <= 0)
        throw ParseError(line.number, entry.col, "quota of object '" + id + "' must be positive");
      problem.object_ids.push_back(id);
      problem.quotas.push_back(quota);
    }
    ++cursor;
  }

  {  // preferences
    const Line& line = need_line("'preferences:' line");
    std::string rest;
    if (!split_keyword(line.tokens[0], "preferences", &rest) || !rest.empty())
      throw ParseError(line.number, line.tokens[0].col, "expected 'preferences:'");
    ++cursor;
  }

  problem.profile.assign(problem.n(), Preference{});
  std::vector<char> seen(problem.n(), 0);
  for (int row = 0; row < problem.n(); ++row) {
    const Line& line = need_line("a preference line for each agent");
    std::string rest;
    const std::string& head = line.tokens[0].text;
    const size_t colon = head.find(':');
    if (colon == std::string::npos)
      throw ParseError(line.number, line.tokens[0].col,
                       "expected 'agent-id: object object ...'");
    const std::string agent_id = head.substr(0, colon);
    auto agent = problem.find_agent(agent_id);
    if (!agent)
      throw ParseError(line.number, line.tokens[0].col, "unknown agent id '" + agent_id + "'");
    if (seen[*agent])
      throw ParseError(line.number, line.tokens[0].col,
                       "agent '" + agent_id + "' listed twice in preferences");
    seen[*agent] = 1;
    std::vector<Token> entries;
    if (colon + 1 < head.size())
      entries.push_back({head.substr(colon + 1), line.tokens[0].col});
    entries.insert(entries.end(), line.tokens.begin() + 1, line.tokens.end());
    if (static_cast<int>(entries.size()) != problem.m())
      throw ParseError(line.number, line.tokens[0].col,
                       "agent '" + agent_id + "' must rank exactly " +
                           std::to_string(problem.m()) + " objects");
    std::vector<ObjectIdx> order;
    order.reserve(entries.size());
    for (const auto& entry : entries) {
      auto obj = problem.find_object(entry.text);
      if (!obj)
        throw ParseError(line.number, entry.col, "unknown object id '" + entry.text + "'");
      if (std::find(order.begin(), order.end(), *obj) != order.end())
        throw ParseError(line.number, entry.col,
                         "object '" + entry.text + "' ranked twice by agent '" + agent_id + "'");
      order.push_back(*obj);
    }
    problem.profile[*agent] = Preference{std::move(order)};
    ++cursor;
  }

  if (cursor < lines.size())
    throw ParseError(lines[cursor].number, lines[cursor].tokens[0].col,
                     "unexpected content after the preference block");
  if (problem.total_quota() < problem.n())
    throw ParseError(objects_line, 1,
                     "total quota " + std::to_string(problem.total_quota()) +
                         " is below the number of agents " + std::to_string(problem.n()));
  return problem;
}

std::string render_problem(const Problem& problem) {
  std::ostringstream os;
  os << "agents:";
  for (const auto& id : problem.agent_ids) os << ' ' << id;
  os << "\nobjects:";
  for (int a = 0; a < problem.m(); ++a)
    os << ' ' << problem.object_ids[a] << ':' << problem.quotas[a];
  os << "\npreferences:\n";
  for (int i = 0; i < problem.n(); ++i) {
    os << "  " << problem.agent_ids[i] << ':';
    for (ObjectIdx a : problem.profile[i].order()) os << ' ' << problem.object_ids[a];
    os << "\n";
  }
  return os.str();
}

RandomAssignment parse_assignment_matrix(const Problem& problem, const std::string& text) {
  const auto lines = tokenize(text);
  RandomAssignment pi(problem.n(), problem.m());
  std::vector<char> seen(problem.n(), 0);
  int filled = 0;
  for (const auto& line : lines) {
    const std::string& head = line.tokens[0].text;
    const size_t colon = head.find(':');
    if (colon == std::string::npos)
      throw ParseError(line.number, line.tokens[0].col, "expected 'agent-id: share share ...'");
    const std::string agent_id = head.substr(0, colon);
    auto agent = problem.find_agent(agent_id);
    if (!agent)
      throw ParseError(line.number, line.tokens[0].col, "unknown agent id '" + agent_id + "'");
    if (seen[*agent])
      throw ParseError(line.number, line.tokens[0].col, "agent '" + agent_id + "' listed twice");
    seen[*agent] = 1;
    ++filled;
    std::vector<Token> entries;
    if (colon + 1 < head.size()) entries.push_back({head.substr(colon + 1), line.tokens[0].col});
    entries.insert(entries.end(), line.tokens.begin() + 1, line.tokens.end());
    if (static_cast<int>(entries.size()) != problem.m())
      throw ParseError(line.number, line.tokens[0].col,
                       "expected " + std::to_string(problem.m()) + " shares");
    for (int a = 0; a < problem.m(); ++a) {
      try {
        pi.at(*agent, a) = parse_rational(entries[a].text);
      } catch (const std::invalid_argument& err) {
        throw ParseError(line.number, entries[a].col, err.what());
      }
    }
  }
  if (filled != problem.n())
    throw ParseError(lines.empty() ? 1 : lines.back().number, 1,
                     "assignment must list every agent exactly once");
  return pi;
}

namespace {

void render_matrix_lines(std::ostringstream& os, const Problem& problem,
                         const RandomAssignment& pi, bool decimal, const char* prefix) {
  size_t width = 0;
  for (const auto& id : problem.agent_ids) width = std::max(width, id.size());
  for (int i = 0; i < problem.n(); ++i) {
    os << prefix << problem.agent_ids[i] << ':'
       << std::string(width - problem.agent_ids[i].size() + 1, ' ');
    for (int a = 0; a < problem.m(); ++a) {
      if (a > 0) os << ' ';
      os << (decimal ? to_decimal_string(pi.at(i, a)) : to_fraction_string(pi.at(i, a)));
    }
    os << "\n";
  }
}

}  // namespace

std::string render_assignment_matrix(const Problem& problem, const RandomAssignment& pi,
                                     NumberFormat format) {
  std::ostringstream os;
  os << "# columns:";
  for (const auto& id : problem.object_ids) os << ' ' << id;
  os << "\n";
  if (format != NumberFormat::kDecimal) render_matrix_lines(os, problem, pi, false, "");
  if (format != NumberFormat::kFractions) {
    os << "# decimal rendering (presentation only; the fractions are exact):\n";
    render_matrix_lines(os, problem, pi, true,
                        format == NumberFormat::kDecimal ? "" : "# ");
  }
  return os.str();
}

std::string render_witness(const Problem& problem, const Witness& w,
                           const std::string& indent) {
  std::ostringstream os;
  auto agent_name = [&](AgentIdx i) { return problem.agent_ids[i]; };
  auto object_name = [&](ObjectIdx a) { return problem.object_ids[a]; };
  os << indent << "witness:";
  if (w.agent_i) os << " i=" << agent_name(*w.agent_i);
  if (w.agent_j) os << " j=" << agent_name(*w.agent_j);
  if (w.object) os << " object=" << object_name(*w.object);
  if (w.object2) os << " object2=" << object_name(*w.object2);
  if (w.rank_k) os << " k=" << *w.rank_k;
  if (w.lhs) os << " lhs=" << to_fraction_string(*w.lhs);
  if (w.rhs) os << " rhs=" << to_fraction_string(*w.rhs);
  os << "\n";
  if (!w.cycle.empty()) {
    os << indent << "cycle:";
    for (const auto& [agent, object] : w.cycle)
      os << " (" << agent_name(agent) << " holds " << object_name(object) << ")";
    os << "\n";
  }
  if (w.assignment) {
    os << indent << "improving assignment:\n";
    std::ostringstream block;
    render_matrix_lines(block, problem, *w.assignment, false, (indent + "  ").c_str());
    os << block.str();
  }
  if (!w.certificate.empty()) {
    os << indent << "certificate:";
    for (const auto& y : w.certificate) os << ' ' << to_fraction_string(y);
    os << "\n";
  }
  if (!w.note.empty()) os << indent << "note: " << w.note << "\n";
  return os.str();
}

std::string render_manipulation(const Problem& problem, const ManipulationWitness& w,
                                const std::string& indent) {
  std::ostringstream os;
  auto order_names = [&](const Preference& p) {
    std::string out;
    for (ObjectIdx a : p.order()) {
      if (!out.empty()) out += ' ';
      out += problem.object_ids[a];
    }
    return out;
  };
  auto row_text = [&](const std::vector<Rational>& row) {
    std::string out;
    for (const auto& v : row) {
      if (!out.empty()) out += ' ';
      out += to_fraction_string(v);
    }
    return out;
  };
  os << indent << "manipulating agent: " << problem.agent_ids[w.agent] << "\n"
     << indent << "true preference:    " << order_names(w.truthful) << "\n"
     << indent << "misreport:          " << order_names(w.misreport) << "\n"
     << indent << "truthful row:       " << row_text(w.truthful_row) << "\n"
     << indent << "manipulated row:    " << row_text(w.manipulated_row) << "\n";
  return os.str();
}

std::string render_audit_report(const Problem& problem, const std::string& problem_label,
                                const std::string& assignment_label,
                                const RandomAssignment& pi,
                                const std::vector<AxiomVerdict>& verdicts,
                                NumberFormat format) {
  std::ostringstream os;
  os << "problem: " << problem_label << "\n";
  os << "assignment: " << assignment_label << "\n";
  os << render_assignment_matrix(problem, pi, format);
  os << "axioms:\n";
  for (const auto& verdict : verdicts) {
    os << "  " << verdict.axiom << ": " << (verdict.holds ? "holds" : "fails") << "\n";
    if (verdict.witness) os << render_witness(problem, *verdict.witness, "    ");
  }
  return os.str();
}

}  // namespace prkit
