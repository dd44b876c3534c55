// Formula syntax for the checker.
//
// Concrete grammar, loosest binding first:
//   formula := and ('|' and)*
//   and     := until ('&' until)*
//   until   := '<<' coalition '>>' ( ('X'|'G') unary | unary 'U' until )
//            | unary
//   unary   := '!' unary
//            | '[' coalition ']' unary          compliance operator
//            | '[[' coalition ']]' 'X' unary    sugar for !<<C>> X !φ
//            | '<<' coalition '>>' ('X'|'G') unary
//            | 'true' | proposition | '(' formula ')'
//   coalition := 'all' | '{' '}' | '{' item (',' item)* '}'
//   item      := integer | integer '-' integer
//
// 'U' is right-associative through its right operand; '|' and '&' fold
// left.  'all' expands to {1..n} at parse time, so parsing requires the
// model.

#ifndef NCHATL_FORMULA_HPP
#define NCHATL_FORMULA_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "nchatl/model.hpp"

namespace nchatl {

enum class FormulaKind {
  Top,
  Prop,
  Not,
  Or,
  And,
  Next,      // <<C>> X φ
  Globally,  // <<C>> G φ
  Until,     // <<C>> φ U ψ
  Comply,    // [C] φ
};

struct Formula {
  FormulaKind kind = FormulaKind::Top;
  std::string prop;        // Prop only
  Coalition coalition;     // Next/Globally/Until/Comply only
  std::vector<Formula> kids;

  bool operator==(const Formula& o) const;
};

Formula f_top();
Formula f_prop(std::string name);
Formula f_not(Formula f);
Formula f_or(Formula a, Formula b);
Formula f_and(Formula a, Formula b);
Formula f_next(Coalition c, Formula f);
Formula f_globally(Coalition c, Formula f);
Formula f_until(Coalition c, Formula a, Formula b);
Formula f_comply(Coalition c, Formula f);

struct ParseError : std::runtime_error {
  size_t position;  // byte offset into the input
  ParseError(const std::string& message, size_t pos);
};

// Parses against the model: propositions must be declared, agent indices
// must lie in 1..n, and 'all' expands to {1..n}.  Throws ParseError.
Formula parse_formula(const std::string& text, const Model& model);

// Canonical text; parse_formula(print_formula(f), model) == f.  Coalitions
// print as explicit sorted sets.
std::string print_formula(const Formula& f);

// Propositions or agent indices that do not fit the model; empty when the
// formula is checkable.
std::vector<std::string> validate_formula(const Model& model,
                                          const Formula& f);

}  // namespace nchatl

#endif
