#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lcw/formula.hpp"
#include "lcw/signature.hpp"

namespace lcw {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"),
        position(pos) {}
  size_t position;
};

/// Parses the surface syntax:
///   formula := sum ; sum := product (("+"|"-") product)* ;
///   product := [rational "*"] atom ;
///   atom := rational | "d(" term "," term ")" | NAME "(" term {"," term} ")"
///         | ("sup"|"inf") NAME "." atom | "(" formula ")" ;
/// Names resolve to a bound variable, a declared constant, or a free
/// variable; applied names resolve to functions (term position) or
/// relations (formula position).
Formula parse_formula(const std::string& text, const Signature& sig);

/// "lhs <= rhs" or "lhs = rhs"; "=" stands for the two-sided pair.
Condition parse_condition(const std::string& text, const Signature& sig);

/// Semicolon-separated condition list.
std::vector<Condition> parse_conditions(const std::string& text,
                                        const Signature& sig);

}  // namespace lcw
