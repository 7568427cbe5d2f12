#include "prkit/core.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace prkit {

std::string to_fraction_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

std::string to_decimal_string(const Rational& r, int digits) {
  if (digits < 0) digits = 0;
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  bool negative = num < 0;
  if (negative) num = -num;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // Round half away from zero.
  BigInt scaled = (num * scale * 2 + den) / (den * 2);
  BigInt whole = scaled / scale;
  BigInt frac = scaled % scale;
  std::ostringstream os;
  if (negative && (whole != 0 || frac != 0)) os << '-';
  os << whole;
  if (digits > 0) {
    std::string f = frac.str();
    os << '.' << std::string(static_cast<size_t>(digits) - f.size(), '0') << f;
  }
  return os.str();
}

Rational parse_rational(const std::string& text) {
  auto fail = [&] {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  };
  if (text.empty()) fail();
  std::string_view sv{text};
  size_t slash = sv.find('/');
  auto parse_int = [&](std::string_view part) -> BigInt {
    if (part.empty()) fail();
    size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) fail();
    for (size_t i = start; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') fail();
    return BigInt(std::string(part));
  };
  BigInt num = parse_int(slash == std::string_view::npos ? sv : sv.substr(0, slash));
  BigInt den = 1;
  if (slash != std::string_view::npos) {
    den = parse_int(sv.substr(slash + 1));
    if (den == 0) fail();
  }
  return Rational(num, den);
}

Preference::Preference(std::vector<ObjectIdx> order) : order_(std::move(order)) {
  const int m = static_cast<int>(order_.size());
  rank_of_.assign(m, 0);
  for (int k = 0; k < m; ++k) {
    ObjectIdx a = order_[k];
    if (a < 0 || a >= m || rank_of_[a] != 0)
      throw std::invalid_argument("preference order is not a permutation of the object set");
    rank_of_[a] = k + 1;
  }
}

int Preference::rank(ObjectIdx a) const {
  if (a < 0 || a >= static_cast<int>(rank_of_.size()))
    throw std::invalid_argument("unknown object id in rank lookup");
  return rank_of_[a];
}

int Problem::total_quota() const {
  int total = 0;
  for (int q : quotas) total += q;
  return total;
}

std::optional<AgentIdx> Problem::find_agent(const std::string& id) const {
  for (size_t i = 0; i < agent_ids.size(); ++i)
    if (agent_ids[i] == id) return static_cast<AgentIdx>(i);
  return std::nullopt;
}

std::optional<ObjectIdx> Problem::find_object(const std::string& id) const {
  for (size_t a = 0; a < object_ids.size(); ++a)
    if (object_ids[a] == id) return static_cast<ObjectIdx>(a);
  return std::nullopt;
}

Problem make_problem(std::vector<int> quotas,
                     std::vector<std::vector<ObjectIdx>> orders) {
  Problem p;
  const int m = static_cast<int>(quotas.size());
  const int n = static_cast<int>(orders.size());
  p.quotas = std::move(quotas);
  p.agent_ids.reserve(n);
  for (int i = 0; i < n; ++i) p.agent_ids.push_back(std::to_string(i + 1));
  p.object_ids.reserve(m);
  for (int a = 0; a < m; ++a) {
    if (a < 26)
      p.object_ids.push_back(std::string(1, static_cast<char>('a' + a)));
    else
      p.object_ids.push_back("o" + std::to_string(a + 1));
  }
  p.profile.reserve(n);
  for (auto& ord : orders) p.profile.emplace_back(std::move(ord));
  return p;
}

Rational RandomAssignment::row_sum(AgentIdx i) const {
  Rational s = 0;
  for (ObjectIdx a = 0; a < cols; ++a) s += at(i, a);
  return s;
}

Rational RandomAssignment::column_sum(ObjectIdx a) const {
  Rational s = 0;
  for (AgentIdx i = 0; i < rows; ++i) s += at(i, a);
  return s;
}

int DeterministicAssignment::column_count(ObjectIdx a) const {
  int c = 0;
  for (ObjectIdx held : object_of)
    if (held == a) ++c;
  return c;
}

RandomAssignment DeterministicAssignment::to_random(int num_objects) const {
  RandomAssignment pi(n(), num_objects);
  for (AgentIdx i = 0; i < n(); ++i) pi.at(i, object_of[i]) = 1;
  return pi;
}

std::vector<Violation> validate(const Problem& problem) {
  std::vector<Violation> out;
  if (problem.agent_ids.empty())
    out.push_back({Violation::Kind::kAgentsEmpty, -1, -1, "no agents"});
  if (problem.object_ids.empty())
    out.push_back({Violation::Kind::kObjectsEmpty, -1, -1, "no objects"});
  {
    std::unordered_set<std::string> seen;
    for (const auto& id : problem.agent_ids)
      if (!seen.insert(id).second)
        out.push_back({Violation::Kind::kDuplicateId, -1, -1, "duplicate agent id '" + id + "'"});
    seen.clear();
    for (const auto& id : problem.object_ids)
      if (!seen.insert(id).second)
        out.push_back({Violation::Kind::kDuplicateId, -1, -1, "duplicate object id '" + id + "'"});
  }
  if (static_cast<int>(problem.quotas.size()) != problem.m())
    out.push_back({Violation::Kind::kShapeMismatch, -1, -1, "quota list size differs from object count"});
  for (size_t a = 0; a < problem.quotas.size(); ++a)
    if (problem.quotas[a] <= 0)
      out.push_back({Violation::Kind::kQuotaNotPositive, -1, static_cast<int>(a),
                     "object '" + problem.object_ids[a] + "' has non-positive quota"});
  if (problem.total_quota() < problem.n())
    out.push_back({Violation::Kind::kSupplyShort, -1, -1,
                   "total quota " + std::to_string(problem.total_quota()) +
                       " is below the number of agents " + std::to_string(problem.n())});
  if (static_cast<int>(problem.profile.size()) != problem.n()) {
    out.push_back({Violation::Kind::kProfileSize, -1, -1, "profile size differs from agent count"});
  } else {
    for (int i = 0; i < problem.n(); ++i)
      if (problem.profile[i].num_objects() != problem.m())
        out.push_back({Violation::Kind::kPrefNotPermutation, i, -1,
                       "agent '" + problem.agent_ids[i] + "' does not rank exactly the object set"});
  }
  return out;
}

std::vector<Violation> validate_assignment(const Problem& problem,
                                           const RandomAssignment& pi) {
  std::vector<Violation> out;
  if (pi.rows != problem.n() || pi.cols != problem.m()) {
    out.push_back({Violation::Kind::kShapeMismatch, -1, -1,
                   "matrix shape " + std::to_string(pi.rows) + "x" + std::to_string(pi.cols) +
                       " does not match problem"});
    return out;
  }
  for (AgentIdx i = 0; i < pi.rows; ++i)
    for (ObjectIdx a = 0; a < pi.cols; ++a) {
      const Rational& v = pi.at(i, a);
      if (v < 0 || v > 1)
        out.push_back({Violation::Kind::kEntryRange, i, a,
                       "entry (" + problem.agent_ids[i] + "," + problem.object_ids[a] +
                           ") = " + to_fraction_string(v) + " outside [0,1]"});
    }
  for (AgentIdx i = 0; i < pi.rows; ++i) {
    Rational s = pi.row_sum(i);
    if (s != 1)
      out.push_back({Violation::Kind::kRowSum, i, -1,
                     "row of agent '" + problem.agent_ids[i] + "' sums to " + to_fraction_string(s)});
  }
  for (ObjectIdx a = 0; a < pi.cols; ++a) {
    Rational s = pi.column_sum(a);
    if (s > problem.quotas[a])
      out.push_back({Violation::Kind::kColumnQuota, -1, a,
                     "column of object '" + problem.object_ids[a] + "' sums to " +
                         to_fraction_string(s) + " > quota " + std::to_string(problem.quotas[a])});
  }
  return out;
}

std::vector<Violation> validate_deterministic(const Problem& problem,
                                              const DeterministicAssignment& d) {
  std::vector<Violation> out;
  if (d.n() != problem.n()) {
    out.push_back({Violation::Kind::kShapeMismatch, -1, -1, "assignment size differs from agent count"});
    return out;
  }
  for (AgentIdx i = 0; i < d.n(); ++i)
    if (d.object_of[i] < 0 || d.object_of[i] >= problem.m())
      out.push_back({Violation::Kind::kNotBinary, i, -1,
                     "agent '" + problem.agent_ids[i] + "' is not assigned a known object"});
  if (!out.empty()) return out;
  for (ObjectIdx a = 0; a < problem.m(); ++a)
    if (d.column_count(a) > problem.quotas[a])
      out.push_back({Violation::Kind::kColumnQuota, -1, a,
                     "object '" + problem.object_ids[a] + "' assigned to " +
                         std::to_string(d.column_count(a)) + " agents > quota " +
                         std::to_string(problem.quotas[a])});
  return out;
}

namespace {
[[noreturn]] void throw_violations(const char* what, const std::vector<Violation>& violations) {
  std::ostringstream os;
  os << what << ":";
  for (const auto& v : violations) os << "\n  - " << v.message;
  throw std::invalid_argument(os.str());
}
}  // namespace

void require_valid(const Problem& problem) {
  auto v = validate(problem);
  if (!v.empty()) throw_violations("invalid problem", v);
}

void require_valid(const Problem& problem, const RandomAssignment& pi) {
  require_valid(problem);
  auto v = validate_assignment(problem, pi);
  if (!v.empty()) throw_violations("invalid assignment", v);
}

int rank(const Preference& p, ObjectIdx a) { return p.rank(a); }

std::vector<ObjectIdx> upper_contour(const Preference& p, ObjectIdx a, bool weak) {
  const int r = p.rank(a);
  std::vector<ObjectIdx> out;
  out.reserve(static_cast<size_t>(r));
  for (int k = 1; k < r; ++k) out.push_back(p.at_rank(k));
  if (weak) out.push_back(a);
  return out;
}

Rational surplus(std::span<const Rational> row, const Preference& p, ObjectIdx a) {
  if (static_cast<int>(row.size()) != p.num_objects())
    throw std::invalid_argument("row length differs from the object count");
  const int r = p.rank(a);
  Rational s = 0;
  for (int k = 1; k <= r; ++k) s += row[static_cast<size_t>(p.at_rank(k))];
  return s;
}

std::vector<AgentIdx> equal_rank_set(const Problem& problem, ObjectIdx a, int k) {
  if (k < 1 || k > problem.m())
    throw std::invalid_argument("rank " + std::to_string(k) + " out of range 1.." +
                                std::to_string(problem.m()));
  std::vector<AgentIdx> out;
  for (AgentIdx i = 0; i < problem.n(); ++i)
    if (problem.profile[i].rank(a) == k) out.push_back(i);
  return out;
}

}  // namespace prkit
