// Text formats: the human-writable problem file, exact assignment matrices,
// and the audit report. Fractions are always emitted exactly; decimals are
// presentation-only and flagged as such.
#pragma once

#include "prkit/audits.hpp"
#include "prkit/axioms.hpp"
#include "prkit/core.hpp"
#include "prkit/manipulation.hpp"

namespace prkit {

// Positioned parse failure; line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) +
                           ": " + message),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

// Problem file layout ('#' starts a comment):
//   agents: 1 2 3 4
//   objects: a:1 b:1 c:1 d:1
//   preferences:
//     1: a c b d
//     ...
// Parses to a valid problem or throws ParseError with the position.
Problem parse_problem(const std::string& text);
std::string render_problem(const Problem& problem);

enum class NumberFormat { kFractions, kDecimal, kBoth };

// Matrix block: one "agent-id: share share ..." line per agent, columns in
// object declaration order.
RandomAssignment parse_assignment_matrix(const Problem& problem, const std::string& text);
std::string render_assignment_matrix(const Problem& problem, const RandomAssignment& pi,
                                     NumberFormat format);

std::string render_witness(const Problem& problem, const Witness& witness,
                           const std::string& indent);
std::string render_manipulation(const Problem& problem, const ManipulationWitness& witness,
                                const std::string& indent);

// Stable-field-order report: problem label, assignment source, the exact
// matrix, then one verdict block per audited axiom.
std::string render_audit_report(const Problem& problem, const std::string& problem_label,
                                const std::string& assignment_label,
                                const RandomAssignment& pi,
                                const std::vector<AxiomVerdict>& verdicts,
                                NumberFormat format);

}  // namespace prkit
