#pragma once

#include <map>
#include <string>
#include <vector>

#include "lcw/formula.hpp"
#include "lcw/signature.hpp"
#include "lcw/value.hpp"

namespace lcw {

/// Assignment of points to variable names.
using Assignment = std::map<std::string, int>;

struct Violation {
  std::string axiom;          // e.g. "metric-triangle", "function-lipschitz"
  std::vector<int> witness;   // point indices witnessing the violation
  std::string detail;
};

/// A finite metric L-structure. Function and relation tables are stored
/// row-major with the last argument varying fastest.
class FiniteStructure {
 public:
  FiniteStructure(Signature sig, std::vector<std::string> labels,
                  std::vector<std::vector<Value>> metric);

  void set_constant(const std::string& name, int point);
  void set_function(const std::string& name, std::vector<int> table);
  void set_relation(const std::string& name, Vec table);
  void set_float_mode(double eps);

  const Signature& signature() const { return sig_; }
  int size() const { return int(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int p) const { return labels_[p]; }
  int point_by_label(const std::string& label) const;  // -1 if absent

  const Value& dist(int a, int b) const { return metric_[a][b]; }
  int constant(const std::string& name) const;
  const std::vector<int>& function_table(const std::string& name) const;
  const Vec& relation_table(const std::string& name) const;

  bool exact_mode() const { return exact_; }
  double eps() const { return eps_; }

  /// Flat index of a tuple, last coordinate fastest.
  size_t tuple_index(const std::vector<int>& tuple) const;
  std::vector<int> tuple_of_index(size_t idx, int arity) const;
  size_t tuple_count(int arity) const;

 private:
  Signature sig_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Value>> metric_;
  std::map<std::string, int> constants_;
  std::map<std::string, std::vector<int>> functions_;
  std::map<std::string, Vec> relations_;
  bool exact_ = true;
  double eps_ = 0.0;
};

/// Checks every structure axiom; an empty report means the structure is
/// valid. Violations are data, each with a concrete witness.
std::vector<Violation> validate_structure(const FiniteStructure& S);

int eval_term(const Term& t, const FiniteStructure& S, const Assignment& asg);

/// Recursive evaluation; sup/inf range over all points of S.
Value eval_formula(const Formula& f, const FiniteStructure& S,
                   const Assignment& asg);
Value eval_sentence(const Formula& f, const FiniteStructure& S);

/// Sum of 2^{-i} d(a_i, b_i), i starting at 0; may exceed 1 for tuples.
Value tuple_metric(const FiniteStructure& S, const std::vector<int>& a,
                   const std::vector<int>& b);

}  // namespace lcw
