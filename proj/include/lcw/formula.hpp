#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lcw/signature.hpp"
#include "lcw/value.hpp"

namespace lcw {

// ---------------------------------------------------------------------------
// Terms

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  enum Kind { Var, Const, Apply } kind;
  std::string name;
  std::vector<Term> args;  // Apply only
};

Term make_var(std::string name);
Term make_const_term(std::string name);
Term make_apply(std::string fn, std::vector<Term> args);

bool term_equal(const Term& a, const Term& b);
std::string print_term(const Term& t);

// ---------------------------------------------------------------------------
// Formulas

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  enum Kind { Const, Dist, Rel, Scale, Add, Sup, Inf } kind;
  Value value;             // Const: the literal; Scale: the factor
  std::string name;        // Rel: relation name; Sup/Inf: bound variable
  std::vector<Term> terms; // Dist (2 terms), Rel
  Formula left, right;     // Add; Scale/Sup/Inf use left as body
};

Formula make_value(Value r);
Formula make_dist(Term a, Term b);
Formula make_rel(std::string name, std::vector<Term> terms);
Formula make_scale(Value r, Formula body);
Formula make_add(Formula l, Formula r);
Formula make_sub(Formula l, Formula r);  // sugar: l + (-1)*r
Formula make_sup(std::string var, Formula body);
Formula make_inf(std::string var, Formula body);

bool formula_equal(const Formula& a, const Formula& b);

/// Canonical surface form; parse(print(f)) is structurally equal to f.
std::string print_formula(const Formula& f);

/// Free variables in first-occurrence order.
std::vector<std::string> free_variables(const Formula& f);
std::vector<std::string> term_variables(const Term& t);

/// Simultaneous renaming of free variables. Bound variables are left
/// untouched; renaming onto a bound name is rejected.
Formula rename_free(const Formula& f,
                    const std::map<std::string, std::string>& sub);
Term rename_term(const Term& t,
                 const std::map<std::string, std::string>& sub);

/// Checks declarations, arities, and the no-shadowing rule; throws
/// std::invalid_argument on violation.
void check_formula(const Formula& f, const Signature& sig);

struct SyntacticBounds {
  Value bound;                          // |eval| <= bound on valid structures
  std::map<std::string, Value> lipschitz;  // per free variable
};

/// Conservative recursive bound and per-variable Lipschitz constants
/// (against single-coordinate moves of the base metric).
SyntacticBounds syntactic_bounds(const Formula& f, const Signature& sig);

// ---------------------------------------------------------------------------
// Conditions

struct Condition {
  enum Rel { LE, EQ } rel;
  Formula left, right;
};

std::string print_condition(const Condition& c);

}  // namespace lcw
