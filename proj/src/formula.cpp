#include "lcw/formula.hpp"

#include <algorithm>
#include <set>

namespace lcw {

Term make_var(std::string name) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Var;
  n->name = std::move(name);
  return n;
}
Term make_const_term(std::string name) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Const;
  n->name = std::move(name);
  return n;
}
Term make_apply(std::string fn, std::vector<Term> args) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Apply;
  n->name = std::move(fn);
  n->args = std::move(args);
  return n;
}

bool term_equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name) return false;
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!term_equal(a->args[i], b->args[i])) return false;
  return true;
}

std::string print_term(const Term& t) {
  if (t->kind != TermNode::Apply) return t->name;
  std::string s = t->name + "(";
  for (size_t i = 0; i < t->args.size(); ++i) {
    if (i) s += ", ";
    s += print_term(t->args[i]);
  }
  return s + ")";
}

static Formula node(FormulaNode&& n) {
  return std::make_shared<FormulaNode>(std::move(n));
}

Formula make_value(Value r) {
  FormulaNode n;
  n.kind = FormulaNode::Const;
  n.value = std::move(r);
  return node(std::move(n));
}
Formula make_dist(Term a, Term b) {
  FormulaNode n;
  n.kind = FormulaNode::Dist;
  n.terms = {std::move(a), std::move(b)};
  return node(std::move(n));
}
Formula make_rel(std::string name, std::vector<Term> terms) {
  FormulaNode n;
  n.kind = FormulaNode::Rel;
  n.name = std::move(name);
  n.terms = std::move(terms);
  return node(std::move(n));
}
Formula make_scale(Value r, Formula body) {
  FormulaNode n;
  n.kind = FormulaNode::Scale;
  n.value = std::move(r);
  n.left = std::move(body);
  return node(std::move(n));
}
Formula make_add(Formula l, Formula r) {
  FormulaNode n;
  n.kind = FormulaNode::Add;
  n.left = std::move(l);
  n.right = std::move(r);
  return node(std::move(n));
}
Formula make_sub(Formula l, Formula r) {
  return make_add(std::move(l), make_scale(Value(-1), std::move(r)));
}
Formula make_sup(std::string var, Formula body) {
  FormulaNode n;
  n.kind = FormulaNode::Sup;
  n.name = std::move(var);
  n.left = std::move(body);
  return node(std::move(n));
}
Formula make_inf(std::string var, Formula body) {
  FormulaNode n;
  n.kind = FormulaNode::Inf;
  n.name = std::move(var);
  n.left = std::move(body);
  return node(std::move(n));
}

bool formula_equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FormulaNode::Const:
      return a->value == b->value;
    case FormulaNode::Dist:
      return term_equal(a->terms[0], b->terms[0]) &&
             term_equal(a->terms[1], b->terms[1]);
    case FormulaNode::Rel: {
      if (a->name != b->name || a->terms.size() != b->terms.size())
        return false;
      for (size_t i = 0; i < a->terms.size(); ++i)
        if (!term_equal(a->terms[i], b->terms[i])) return false;
      return true;
    }
    case FormulaNode::Scale:
      return a->value == b->value && formula_equal(a->left, b->left);
    case FormulaNode::Add:
      return formula_equal(a->left, b->left) &&
             formula_equal(a->right, b->right);
    case FormulaNode::Sup:
    case FormulaNode::Inf:
      return a->name == b->name && formula_equal(a->left, b->left);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Printing. The emitted string follows the surface grammar exactly, so
// parsing it back yields a structurally identical tree.

static std::string literal(const Value& v) {
  if (!v.exact()) return v.str();
  const Rat& r = v.rat();
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

static std::string print_atom(const Formula& f);

std::string print_formula(const Formula& f) {
  switch (f->kind) {
    case FormulaNode::Add: {
      std::string l = print_formula(f->left);
      const Formula& r = f->right;
      if (r->kind == FormulaNode::Scale && r->value == Value(-1))
        return l + " - " + print_atom(r->left);
      if (r->kind == FormulaNode::Scale)
        return l + " + " + literal(r->value) + " * " + print_atom(r->left);
      if (r->kind == FormulaNode::Add) return l + " + (" + print_formula(r) + ")";
      return l + " + " + print_atom(r);
    }
    case FormulaNode::Scale:
      return literal(f->value) + " * " + print_atom(f->left);
    default:
      return print_atom(f);
  }
}

static std::string print_atom(const Formula& f) {
  switch (f->kind) {
    case FormulaNode::Const:
      return literal(f->value);
    case FormulaNode::Dist:
      return "d(" + print_term(f->terms[0]) + ", " + print_term(f->terms[1]) +
             ")";
    case FormulaNode::Rel: {
      std::string s = f->name + "(";
      for (size_t i = 0; i < f->terms.size(); ++i) {
        if (i) s += ", ";
        s += print_term(f->terms[i]);
      }
      return s + ")";
    }
    case FormulaNode::Sup:
      return "sup " + f->name + " . " + print_atom(f->left);
    case FormulaNode::Inf:
      return "inf " + f->name + " . " + print_atom(f->left);
    default:
      return "(" + print_formula(f) + ")";
  }
}

// ---------------------------------------------------------------------------

static void collect_term_vars(const Term& t, std::vector<std::string>& out) {
  if (t->kind == TermNode::Var &&
      std::find(out.begin(), out.end(), t->name) == out.end())
    out.push_back(t->name);
  for (auto& a : t->args) collect_term_vars(a, out);
}

std::vector<std::string> term_variables(const Term& t) {
  std::vector<std::string> out;
  collect_term_vars(t, out);
  return out;
}

static void collect_free(const Formula& f, std::set<std::string>& bound,
                         std::vector<std::string>& out) {
  auto add = [&](const std::string& v) {
    if (bound.count(v)) return;
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  switch (f->kind) {
    case FormulaNode::Const:
      break;
    case FormulaNode::Dist:
    case FormulaNode::Rel:
      for (auto& t : f->terms)
        for (auto& v : term_variables(t)) add(v);
      break;
    case FormulaNode::Scale:
      collect_free(f->left, bound, out);
      break;
    case FormulaNode::Add:
      collect_free(f->left, bound, out);
      collect_free(f->right, bound, out);
      break;
    case FormulaNode::Sup:
    case FormulaNode::Inf: {
      bool fresh = bound.insert(f->name).second;
      collect_free(f->left, bound, out);
      if (fresh) bound.erase(f->name);
      break;
    }
  }
}

std::vector<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound;
  std::vector<std::string> out;
  collect_free(f, bound, out);
  return out;
}

Term rename_term(const Term& t,
                 const std::map<std::string, std::string>& sub) {
  switch (t->kind) {
    case TermNode::Var: {
      auto it = sub.find(t->name);
      return it == sub.end() ? t : make_var(it->second);
    }
    case TermNode::Const:
      return t;
    case TermNode::Apply: {
      std::vector<Term> args;
      for (auto& a : t->args) args.push_back(rename_term(a, sub));
      return make_apply(t->name, std::move(args));
    }
  }
  return t;
}

Formula rename_free(const Formula& f,
                    const std::map<std::string, std::string>& sub) {
  switch (f->kind) {
    case FormulaNode::Const:
      return f;
    case FormulaNode::Dist:
      return make_dist(rename_term(f->terms[0], sub),
                       rename_term(f->terms[1], sub));
    case FormulaNode::Rel: {
      std::vector<Term> ts;
      for (auto& t : f->terms) ts.push_back(rename_term(t, sub));
      return make_rel(f->name, std::move(ts));
    }
    case FormulaNode::Scale:
      return make_scale(f->value, rename_free(f->left, sub));
    case FormulaNode::Add:
      return make_add(rename_free(f->left, sub), rename_free(f->right, sub));
    case FormulaNode::Sup:
    case FormulaNode::Inf: {
      for (auto& [from, to] : sub) {
        if (to == f->name)
          throw std::invalid_argument("renaming would capture " + to);
      }
      auto inner = sub;
      inner.erase(f->name);
      Formula body = rename_free(f->left, inner);
      return f->kind == FormulaNode::Sup ? make_sup(f->name, body)
                                         : make_inf(f->name, body);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------

static void check_term(const Term& t, const Signature& sig) {
  switch (t->kind) {
    case TermNode::Var:
      if (sig.declared(t->name))
        throw std::invalid_argument("variable name collides with symbol: " +
                                    t->name);
      break;
    case TermNode::Const:
      if (!sig.is_constant(t->name))
        throw std::invalid_argument("unknown constant: " + t->name);
      break;
    case TermNode::Apply: {
      const FunctionSym* fn = sig.function(t->name);
      if (!fn) throw std::invalid_argument("unknown function: " + t->name);
      if (int(t->args.size()) != fn->arity)
        throw std::invalid_argument("arity mismatch for " + t->name);
      for (auto& a : t->args) check_term(a, sig);
      break;
    }
  }
}

static void check_rec(const Formula& f, const Signature& sig,
                      std::set<std::string>& bound) {
  switch (f->kind) {
    case FormulaNode::Const:
      break;
    case FormulaNode::Dist:
      check_term(f->terms[0], sig);
      check_term(f->terms[1], sig);
      break;
    case FormulaNode::Rel: {
      const RelationSym* r = sig.relation(f->name);
      if (!r) throw std::invalid_argument("unknown relation: " + f->name);
      if (int(f->terms.size()) != r->arity)
        throw std::invalid_argument("arity mismatch for " + f->name);
      for (auto& t : f->terms) check_term(t, sig);
      break;
    }
    case FormulaNode::Scale:
      check_rec(f->left, sig, bound);
      break;
    case FormulaNode::Add:
      check_rec(f->left, sig, bound);
      check_rec(f->right, sig, bound);
      break;
    case FormulaNode::Sup:
    case FormulaNode::Inf: {
      if (bound.count(f->name))
        throw std::invalid_argument("rebound variable: " + f->name);
      if (sig.declared(f->name))
        throw std::invalid_argument("bound variable collides with symbol: " +
                                    f->name);
      bound.insert(f->name);
      check_rec(f->left, sig, bound);
      bound.erase(f->name);
      break;
    }
  }
}

void check_formula(const Formula& f, const Signature& sig) {
  std::set<std::string> bound;
  check_rec(f, sig, bound);
}

// ---------------------------------------------------------------------------
// Syntactic bounds

static Value half_pow(int i) { return Value(Rat(1, Int(1) << i)); }

static Value term_lip(const Term& t, const std::string& var,
                      const Signature& sig) {
  switch (t->kind) {
    case TermNode::Var:
      return Value(t->name == var ? 1 : 0);
    case TermNode::Const:
      return Value(0);
    case TermNode::Apply: {
      const FunctionSym* fn = sig.function(t->name);
      Value s;
      for (size_t i = 0; i < t->args.size(); ++i)
        s += half_pow(int(i)) * term_lip(t->args[i], var, sig);
      return fn->lipschitz * s;
    }
  }
  return Value(0);
}

SyntacticBounds syntactic_bounds(const Formula& f, const Signature& sig) {
  SyntacticBounds out;
  switch (f->kind) {
    case FormulaNode::Const:
      out.bound = f->value.abs();
      break;
    case FormulaNode::Dist: {
      out.bound = Value(1);
      for (auto& v : free_variables(f))
        out.lipschitz[v] =
            term_lip(f->terms[0], v, sig) + term_lip(f->terms[1], v, sig);
      break;
    }
    case FormulaNode::Rel: {
      out.bound = Value(1);
      const RelationSym* r = sig.relation(f->name);
      Value lam = r ? r->lipschitz : Value(1);
      for (auto& v : free_variables(f)) {
        Value s;
        for (size_t i = 0; i < f->terms.size(); ++i)
          s += half_pow(int(i)) * term_lip(f->terms[i], v, sig);
        out.lipschitz[v] = lam * s;
      }
      break;
    }
    case FormulaNode::Scale: {
      auto b = syntactic_bounds(f->left, sig);
      Value a = f->value.abs();
      out.bound = a * b.bound;
      for (auto& [v, l] : b.lipschitz) out.lipschitz[v] = a * l;
      break;
    }
    case FormulaNode::Add: {
      auto l = syntactic_bounds(f->left, sig);
      auto r = syntactic_bounds(f->right, sig);
      out.bound = l.bound + r.bound;
      out.lipschitz = l.lipschitz;
      for (auto& [v, lam] : r.lipschitz) {
        auto it = out.lipschitz.find(v);
        if (it == out.lipschitz.end())
          out.lipschitz[v] = lam;
        else
          it->second += lam;
      }
      break;
    }
    case FormulaNode::Sup:
    case FormulaNode::Inf: {
      out = syntactic_bounds(f->left, sig);
      out.lipschitz.erase(f->name);
      break;
    }
  }
  return out;
}

std::string print_condition(const Condition& c) {
  return print_formula(c.left) + (c.rel == Condition::LE ? " <= " : " = ") +
         print_formula(c.right);
}

}  // namespace lcw
