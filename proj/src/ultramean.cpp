#include "lcw/ultramean.hpp"

#include <algorithm>
#include <stdexcept>

namespace lcw {

Charge::Charge(Vec w) : weights(std::move(w)) {
  if (weights.empty()) throw std::invalid_argument("charge needs m >= 1");
  Value sum;
  for (auto& x : weights) {
    if (cmp(x, Value(0)) < 0)
      throw std::invalid_argument("charge weights must be >= 0");
    sum += x;
  }
  if (cmp(sum, Value(1), 1e-12) != 0)
    throw std::invalid_argument("charge weights must sum to 1, got " +
                                sum.str());
}

Charge Charge::point_mass(int m, int j) {
  Vec w(m, Value(0));
  w.at(j) = Value(1);
  return Charge(std::move(w));
}

Charge Charge::uniform(int m) {
  Vec w(m, Value::ratio(1, m));
  return Charge(std::move(w));
}

Value integrate(const Charge& mu, const Vec& values) {
  if (values.size() != mu.weights.size())
    throw std::invalid_argument("integrate: length mismatch");
  Value s;
  for (size_t i = 0; i < values.size(); ++i)
    s += mu.weights[i] * values[i];
  return s;
}

size_t UltrameanResult::product_index(const std::vector<int>& tuple) const {
  size_t idx = 0;
  for (size_t i = 0; i < tuple.size(); ++i)
    idx = idx * size_t(factor_sizes[i]) + size_t(tuple[i]);
  return idx;
}

int UltrameanResult::class_of_tuple(const std::vector<int>& tuple) const {
  return class_of[product_index(tuple)];
}

UltrameanResult build_ultramean(
    const std::vector<const FiniteStructure*>& factors, const Charge& mu) {
  if (factors.empty() || int(factors.size()) != mu.size())
    throw std::invalid_argument("ultramean: factor/charge size mismatch");
  const Signature& sig = factors[0]->signature();
  bool exact = mu.weights[0].exact();
  double eps = 0.0;
  for (auto* f : factors) {
    if (!(f->signature() == sig))
      throw std::invalid_argument("ultramean: signature mismatch");
    if (!validate_structure(*f).empty())
      throw std::invalid_argument("ultramean: invalid factor structure");
    if (!f->exact_mode()) exact = false;
    eps = std::max(eps, f->eps());
  }
  for (auto& w : mu.weights)
    if (!w.exact()) exact = false;

  const int m = int(factors.size());
  std::vector<int> sizes(m);
  size_t total = 1;
  for (int i = 0; i < m; ++i) {
    sizes[i] = factors[i]->size();
    total *= size_t(sizes[i]);
  }

  auto tuple_of = [&](size_t idx) {
    std::vector<int> t(m);
    for (int i = m - 1; i >= 0; --i) {
      t[i] = int(idx % size_t(sizes[i]));
      idx /= size_t(sizes[i]);
    }
    return t;
  };

  auto pseudo_dist = [&](const std::vector<int>& u,
                         const std::vector<int>& v) {
    Value s;
    for (int i = 0; i < m; ++i)
      s += mu.weights[i] * factors[i]->dist(u[i], v[i]);
    return s;
  };

  // Zero distance is transitive for a pseudo-metric, so a greedy pass in
  // lexicographic order yields classes with lex-least representatives.
  std::vector<std::vector<int>> reps;
  std::vector<int> class_of(total, -1);
  for (size_t idx = 0; idx < total; ++idx) {
    auto t = tuple_of(idx);
    int cls = -1;
    for (size_t c = 0; c < reps.size(); ++c) {
      if (cmp(pseudo_dist(t, reps[c]), Value(0), eps) == 0) {
        cls = int(c);
        break;
      }
    }
    if (cls < 0) {
      cls = int(reps.size());
      reps.push_back(t);
    }
    class_of[idx] = cls;
  }

  const int nc = int(reps.size());
  std::vector<std::string> labels(nc);
  for (int c = 0; c < nc; ++c) {
    std::string s = "[";
    for (int i = 0; i < m; ++i) s += factors[i]->label(reps[c][i]);
    labels[c] = s + "]";
  }

  std::vector<std::vector<Value>> metric(nc, std::vector<Value>(nc));
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b) metric[a][b] = pseudo_dist(reps[a], reps[b]);

  FiniteStructure Q(sig, labels, std::move(metric));
  if (!exact) Q.set_float_mode(eps > 0 ? eps : 1e-9);

  UltrameanResult result{std::move(Q), std::move(reps), std::move(class_of),
                         std::move(sizes)};
  FiniteStructure& quotient = result.quotient;

  for (auto& cname : sig.constants()) {
    std::vector<int> t(m);
    for (int i = 0; i < m; ++i) t[i] = factors[i]->constant(cname);
    quotient.set_constant(cname, result.class_of_tuple(t));
  }

  for (auto& fn : sig.functions()) {
    size_t count = quotient.tuple_count(fn.arity);
    std::vector<int> table(count);
    for (size_t idx = 0; idx < count; ++idx) {
      auto args = quotient.tuple_of_index(idx, fn.arity);
      std::vector<int> image(m);
      for (int i = 0; i < m; ++i) {
        std::vector<int> fact_args(fn.arity);
        for (int k = 0; k < fn.arity; ++k)
          fact_args[k] = result.reps[args[k]][i];
        image[i] =
            factors[i]->function_table(fn.name)[factors[i]->tuple_index(
                fact_args)];
      }
      table[idx] = result.class_of_tuple(image);
    }
    quotient.set_function(fn.name, std::move(table));
  }

  for (auto& rel : sig.relations()) {
    size_t count = quotient.tuple_count(rel.arity);
    Vec table(count);
    for (size_t idx = 0; idx < count; ++idx) {
      auto args = quotient.tuple_of_index(idx, rel.arity);
      Vec per_factor(m);
      for (int i = 0; i < m; ++i) {
        std::vector<int> fact_args(rel.arity);
        for (int k = 0; k < rel.arity; ++k)
          fact_args[k] = result.reps[args[k]][i];
        per_factor[i] =
            factors[i]->relation_table(rel.name)[factors[i]->tuple_index(
                fact_args)];
      }
      table[idx] = integrate(mu, per_factor);
    }
    quotient.set_relation(rel.name, std::move(table));
  }

  return result;
}

LosCheck check_los(const Formula& phi,
                   const std::vector<const FiniteStructure*>& factors,
                   const Charge& mu, const UltrameanResult& um,
                   const std::vector<int>& classes) {
  auto vars = free_variables(phi);
  if (vars.size() != classes.size())
    throw std::invalid_argument("check_los: arity mismatch");

  Assignment asg;
  for (size_t k = 0; k < vars.size(); ++k) asg[vars[k]] = classes[k];
  Value lhs = eval_formula(phi, um.quotient, asg);

  Vec per_factor(factors.size());
  for (size_t i = 0; i < factors.size(); ++i) {
    Assignment ai;
    for (size_t k = 0; k < vars.size(); ++k)
      ai[vars[k]] = um.reps[classes[k]][i];
    per_factor[i] = eval_formula(phi, *factors[i], ai);
  }
  Value rhs = integrate(mu, per_factor);

  double eps = um.quotient.exact_mode() ? 0.0 : um.quotient.eps();
  return LosCheck{lhs, rhs, cmp(lhs, rhs, eps) == 0};
}

}  // namespace lcw
