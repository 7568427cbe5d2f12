// Domain model: problems, preferences, assignments, and the shared
// predicates (ranks, upper contour sets, surplus) every other module
// builds on. All types are immutable value types once constructed.
#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "prkit/rational.hpp"

namespace prkit {

using AgentIdx = int;
using ObjectIdx = int;

// Thrown when an exhaustive computation would exceed its configured cap.
class SizeGuardError : public std::runtime_error {
 public:
  explicit SizeGuardError(const std::string& what) : std::runtime_error(what) {}
};

// Caps for the exhaustive / brute-force machinery. These are configuration,
// not constants: callers may relax or tighten them per invocation.
struct Guards {
  int enumeration_max_agents = 8;  // n! ordering enumeration (ria, rsd)
  int misreport_max_objects = 6;   // m! misreport enumeration
  int brute_max_agents = 5;        // brute-force oracle bounds
  int brute_max_objects = 5;
  int brute_max_quota = 3;
  int lp_max_vars = 200;
  int lp_max_rows = 200;
};

// Strict total order over the object types, stored as a permutation.
// order[k] is the object at rank k+1; rank 1 is the most preferred.
class Preference {
 public:
  Preference() = default;
  // Throws std::invalid_argument unless `order` is a permutation of 0..m-1.
  explicit Preference(std::vector<ObjectIdx> order);

  int num_objects() const { return static_cast<int>(order_.size()); }
  const std::vector<ObjectIdx>& order() const { return order_; }
  ObjectIdx at_rank(int k) const { return order_.at(static_cast<size_t>(k) - 1); }

  // 1-based rank of `a`. Throws std::invalid_argument for an unknown object.
  int rank(ObjectIdx a) const;

  // True iff a is strictly preferred to b.
  bool prefers(ObjectIdx a, ObjectIdx b) const { return rank(a) < rank(b); }

  bool operator==(const Preference& other) const = default;

 private:
  std::vector<ObjectIdx> order_;
  std::vector<int> rank_of_;  // rank_of_[obj] = 1-based rank
};

struct Problem {
  std::vector<std::string> agent_ids;
  std::vector<std::string> object_ids;
  std::vector<int> quotas;          // one per object, positive
  std::vector<Preference> profile;  // one per agent

  int n() const { return static_cast<int>(agent_ids.size()); }
  int m() const { return static_cast<int>(object_ids.size()); }
  int total_quota() const;

  std::optional<AgentIdx> find_agent(const std::string& id) const;
  std::optional<ObjectIdx> find_object(const std::string& id) const;

  bool operator==(const Problem& other) const = default;
};

// Builds a problem with synthesized ids ("1","2",... / "a","b",...).
Problem make_problem(std::vector<int> quotas,
                     std::vector<std::vector<ObjectIdx>> orders);

// n x m matrix of exact probability shares, row-major.
struct RandomAssignment {
  int rows = 0;
  int cols = 0;
  std::vector<Rational> cells;

  RandomAssignment() = default;
  RandomAssignment(int n, int m)
      : rows(n), cols(m), cells(static_cast<size_t>(n) * static_cast<size_t>(m)) {}

  Rational& at(AgentIdx i, ObjectIdx a) {
    return cells[static_cast<size_t>(i) * cols + a];
  }
  const Rational& at(AgentIdx i, ObjectIdx a) const {
    return cells[static_cast<size_t>(i) * cols + a];
  }
  std::span<const Rational> row(AgentIdx i) const {
    return {cells.data() + static_cast<size_t>(i) * cols, static_cast<size_t>(cols)};
  }
  Rational row_sum(AgentIdx i) const;
  Rational column_sum(ObjectIdx a) const;

  bool operator==(const RandomAssignment& other) const = default;
};

// One object per agent; equivalent to a 0/1 matrix with unit row sums.
struct DeterministicAssignment {
  std::vector<ObjectIdx> object_of;  // object_of[i] = object assigned to agent i

  int n() const { return static_cast<int>(object_of.size()); }
  // Number of agents holding object a.
  int column_count(ObjectIdx a) const;
  RandomAssignment to_random(int num_objects) const;

  bool operator==(const DeterministicAssignment& other) const = default;
};

struct Violation {
  enum class Kind {
    kAgentsEmpty,
    kObjectsEmpty,
    kQuotaNotPositive,
    kSupplyShort,        // sum of quotas < n
    kProfileSize,
    kPrefNotPermutation,
    kDuplicateId,
    kShapeMismatch,
    kEntryRange,         // entry outside [0, 1]
    kRowSum,             // row does not sum to 1
    kColumnQuota,        // column exceeds its quota
    kNotBinary,
  };
  Kind kind;
  int agent = -1;
  int object = -1;
  std::string message;
};

// Both validators report every violated invariant instead of stopping at
// the first; an empty result means the input is well-formed.
std::vector<Violation> validate(const Problem& problem);
std::vector<Violation> validate_assignment(const Problem& problem,
                                           const RandomAssignment& pi);
std::vector<Violation> validate_deterministic(const Problem& problem,
                                              const DeterministicAssignment& d);

// Throws std::invalid_argument listing all violations, if any.
void require_valid(const Problem& problem);
void require_valid(const Problem& problem, const RandomAssignment& pi);

// 1-based rank of object a under p.
int rank(const Preference& p, ObjectIdx a);

// Strict upper contour set U(p,a) = { b : b is preferred to a }, in
// preference order; the weak variant additionally contains a itself.
std::vector<ObjectIdx> upper_contour(const Preference& p, ObjectIdx a, bool weak);

// Sum of `row` over the weak upper contour set of p at a. An agent is
// satiated at a when her surplus there equals 1.
Rational surplus(std::span<const Rational> row, const Preference& p, ObjectIdx a);

// I(a,k): the agents ranking object a exactly k-th. Throws on k out of range.
std::vector<AgentIdx> equal_rank_set(const Problem& problem, ObjectIdx a, int k);

}  // namespace prkit
