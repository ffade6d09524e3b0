#include "lcw/structure.hpp"

#include <stdexcept>

namespace lcw {

FiniteStructure::FiniteStructure(Signature sig,
                                 std::vector<std::string> labels,
                                 std::vector<std::vector<Value>> metric)
    : sig_(std::move(sig)),
      labels_(std::move(labels)),
      metric_(std::move(metric)) {
  if (labels_.empty()) throw std::invalid_argument("structure needs >= 1 point");
  if (metric_.size() != labels_.size())
    throw std::invalid_argument("metric table size mismatch");
  for (auto& row : metric_)
    if (row.size() != labels_.size())
      throw std::invalid_argument("metric table size mismatch");
}

void FiniteStructure::set_constant(const std::string& name, int point) {
  if (!sig_.is_constant(name))
    throw std::invalid_argument("undeclared constant: " + name);
  if (point < 0 || point >= size())
    throw std::invalid_argument("constant point out of range: " + name);
  constants_[name] = point;
}

void FiniteStructure::set_function(const std::string& name,
                                   std::vector<int> table) {
  const FunctionSym* fn = sig_.function(name);
  if (!fn) throw std::invalid_argument("undeclared function: " + name);
  if (table.size() != tuple_count(fn->arity))
    throw std::invalid_argument("function table size mismatch: " + name);
  for (int p : table)
    if (p < 0 || p >= size())
      throw std::invalid_argument("function value out of range: " + name);
  functions_[name] = std::move(table);
}

void FiniteStructure::set_relation(const std::string& name, Vec table) {
  const RelationSym* rel = sig_.relation(name);
  if (!rel) throw std::invalid_argument("undeclared relation: " + name);
  if (table.size() != tuple_count(rel->arity))
    throw std::invalid_argument("relation table size mismatch: " + name);
  relations_[name] = std::move(table);
}

void FiniteStructure::set_float_mode(double eps) {
  exact_ = false;
  eps_ = eps;
}

int FiniteStructure::point_by_label(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (labels_[i] == label) return i;
  return -1;
}

int FiniteStructure::constant(const std::string& name) const {
  auto it = constants_.find(name);
  if (it == constants_.end())
    throw std::invalid_argument("uninterpreted constant: " + name);
  return it->second;
}

const std::vector<int>& FiniteStructure::function_table(
    const std::string& name) const {
  auto it = functions_.find(name);
  if (it == functions_.end())
    throw std::invalid_argument("uninterpreted function: " + name);
  return it->second;
}

const Vec& FiniteStructure::relation_table(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end())
    throw std::invalid_argument("uninterpreted relation: " + name);
  return it->second;
}

size_t FiniteStructure::tuple_index(const std::vector<int>& tuple) const {
  size_t idx = 0;
  for (int p : tuple) idx = idx * size() + size_t(p);
  return idx;
}

std::vector<int> FiniteStructure::tuple_of_index(size_t idx, int arity) const {
  std::vector<int> t(arity);
  for (int i = arity - 1; i >= 0; --i) {
    t[i] = int(idx % size());
    idx /= size();
  }
  return t;
}

size_t FiniteStructure::tuple_count(int arity) const {
  size_t c = 1;
  for (int i = 0; i < arity; ++i) c *= size_t(size());
  return c;
}

Value tuple_metric(const FiniteStructure& S, const std::vector<int>& a,
                   const std::vector<int>& b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("tuple_metric: length mismatch");
  Value s;
  Value w(1);
  const Value half = Value::ratio(1, 2);
  for (size_t i = 0; i < a.size(); ++i) {
    s += w * S.dist(a[i], b[i]);
    w = w * half;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<Violation> validate_structure(const FiniteStructure& S) {
  std::vector<Violation> out;
  const double eps = S.eps();
  const int n = S.size();
  const Value zero(0), one(1);

  for (int a = 0; a < n; ++a) {
    if (cmp(S.dist(a, a), zero, eps) != 0)
      out.push_back({"metric-reflexive", {a},
                     "d(" + S.label(a) + "," + S.label(a) + ") = " +
                         S.dist(a, a).str()});
    for (int b = 0; b < n; ++b) {
      if (cmp(S.dist(a, b), S.dist(b, a), eps) != 0)
        out.push_back({"metric-symmetric", {a, b},
                       S.dist(a, b).str() + " vs " + S.dist(b, a).str()});
      if (a != b && cmp(S.dist(a, b), zero, eps) <= 0)
        out.push_back({"metric-identity", {a, b},
                       "d(" + S.label(a) + "," + S.label(b) + ") = " +
                           S.dist(a, b).str()});
      if (cmp(S.dist(a, b), one, eps) > 0)
        out.push_back({"metric-diameter", {a, b},
                       "d = " + S.dist(a, b).str() + " > 1"});
      for (int c = 0; c < n; ++c) {
        if (cmp(S.dist(a, c), S.dist(a, b) + S.dist(b, c), eps) > 0)
          out.push_back(
              {"metric-triangle", {a, b, c},
               "d(" + S.label(a) + "," + S.label(c) + ") = " +
                   S.dist(a, c).str() + " > " +
                   (S.dist(a, b) + S.dist(b, c)).str()});
      }
    }
  }

  for (auto& rel : S.signature().relations()) {
    const Vec* table;
    try {
      table = &S.relation_table(rel.name);
    } catch (const std::exception& e) {
      out.push_back({"missing-interpretation", {}, e.what()});
      continue;
    }
    size_t count = S.tuple_count(rel.arity);
    for (size_t i = 0; i < count; ++i) {
      if (cmp((*table)[i].abs(), one, eps) > 0)
        out.push_back({"relation-bound", S.tuple_of_index(i, rel.arity),
                       rel.name + " = " + (*table)[i].str()});
      for (size_t j = i + 1; j < count; ++j) {
        auto ta = S.tuple_of_index(i, rel.arity);
        auto tb = S.tuple_of_index(j, rel.arity);
        Value lhs = ((*table)[i] - (*table)[j]).abs();
        Value rhs = rel.lipschitz * tuple_metric(S, ta, tb);
        if (cmp(lhs, rhs, eps) > 0) {
          std::vector<int> w = ta;
          w.insert(w.end(), tb.begin(), tb.end());
          out.push_back({"relation-lipschitz", w,
                         rel.name + ": |" + (*table)[i].str() + " - " +
                             (*table)[j].str() + "| > " + rhs.str()});
        }
      }
    }
  }

  for (auto& fn : S.signature().functions()) {
    const std::vector<int>* table;
    try {
      table = &S.function_table(fn.name);
    } catch (const std::exception& e) {
      out.push_back({"missing-interpretation", {}, e.what()});
      continue;
    }
    size_t count = S.tuple_count(fn.arity);
    for (size_t i = 0; i < count; ++i) {
      for (size_t j = i + 1; j < count; ++j) {
        auto ta = S.tuple_of_index(i, fn.arity);
        auto tb = S.tuple_of_index(j, fn.arity);
        Value lhs = S.dist((*table)[i], (*table)[j]);
        Value rhs = fn.lipschitz * tuple_metric(S, ta, tb);
        if (cmp(lhs, rhs, eps) > 0) {
          std::vector<int> w = ta;
          w.insert(w.end(), tb.begin(), tb.end());
          out.push_back({"function-lipschitz", w,
                         fn.name + ": " + lhs.str() + " > " + rhs.str()});
        }
      }
    }
  }

  for (auto& c : S.signature().constants()) {
    try {
      S.constant(c);
    } catch (const std::exception& e) {
      out.push_back({"missing-interpretation", {}, e.what()});
    }
  }

  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

int eval_term(const Term& t, const FiniteStructure& S, const Assignment& asg) {
  switch (t->kind) {
    case TermNode::Var: {
      auto it = asg.find(t->name);
      if (it == asg.end())
        throw std::invalid_argument("missing assignment for variable " +
                                    t->name);
      return it->second;
    }
    case TermNode::Const:
      return S.constant(t->name);
    case TermNode::Apply: {
      std::vector<int> pts;
      pts.reserve(t->args.size());
      for (auto& a : t->args) pts.push_back(eval_term(a, S, asg));
      return S.function_table(t->name)[S.tuple_index(pts)];
    }
  }
  throw std::logic_error("bad term node");
}

Value eval_formula(const Formula& f, const FiniteStructure& S,
                   const Assignment& asg) {
  switch (f->kind) {
    case FormulaNode::Const:
      return f->value;
    case FormulaNode::Dist:
      return S.dist(eval_term(f->terms[0], S, asg),
                    eval_term(f->terms[1], S, asg));
    case FormulaNode::Rel: {
      std::vector<int> pts;
      pts.reserve(f->terms.size());
      for (auto& t : f->terms) pts.push_back(eval_term(t, S, asg));
      return S.relation_table(f->name)[S.tuple_index(pts)];
    }
    case FormulaNode::Scale:
      return f->value * eval_formula(f->left, S, asg);
    case FormulaNode::Add:
      return eval_formula(f->left, S, asg) + eval_formula(f->right, S, asg);
    case FormulaNode::Sup:
    case FormulaNode::Inf: {
      Assignment inner = asg;
      Value best;
      for (int p = 0; p < S.size(); ++p) {
        inner[f->name] = p;
        Value v = eval_formula(f->left, S, inner);
        if (p == 0)
          best = v;
        else if (f->kind == FormulaNode::Sup ? cmp(v, best) > 0
                                             : cmp(v, best) < 0)
          best = v;
      }
      return best;
    }
  }
  throw std::logic_error("bad formula node");
}

Value eval_sentence(const Formula& f, const FiniteStructure& S) {
  return eval_formula(f, S, {});
}

}  // namespace lcw
