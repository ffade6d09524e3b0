#include "lcw/fragment.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "lcw/parser.hpp"

namespace lcw {

namespace {

constexpr int kMaxContexts = 6;
constexpr size_t kMaxTerms = 16;
constexpr size_t kMaxProbes = 128;

// table[idx] over M^m -> table over M^{m+1} ignoring the last coordinate.
Vec extend_table(const Vec& t, int npoints) {
  Vec out(t.size() * size_t(npoints));
  for (size_t i = 0; i < t.size(); ++i)
    for (int b = 0; b < npoints; ++b) out[i * npoints + b] = t[i];
  return out;
}

// sup or inf over the last coordinate of a table on M^{m+1}.
Vec project_table(const Vec& t, int npoints, bool is_sup, double eps) {
  Vec out(t.size() / size_t(npoints));
  for (size_t j = 0; j < out.size(); ++j) {
    Value best = t[j * npoints];
    for (int b = 1; b < npoints; ++b) {
      const Value& v = t[j * npoints + b];
      int c = cmp(v, best, eps);
      if (is_sup ? c > 0 : c < 0) best = v;
    }
    out[j] = best;
  }
  return out;
}

// Table of the variable renaming x_{i+1} -> x_{sigma[i]+1}: the value at
// tuple a is the original value at b with b[i] = a[sigma[i]].
Vec permute_table(const FiniteStructure& S, const Vec& t, int m,
                  const std::vector<int>& sigma) {
  Vec out(t.size());
  std::vector<int> b(m);
  for (size_t idx = 0; idx < t.size(); ++idx) {
    auto a = S.tuple_of_index(idx, m);
    for (int i = 0; i < m; ++i) b[i] = a[sigma[i]];
    out[idx] = t[S.tuple_index(b)];
  }
  return out;
}

struct Gen {
  const FiniteStructure& S;
  FragmentParams p;
  int C;
  std::vector<FragmentContext> ctx;  // index 0 unused
  std::mt19937_64 rng;
  int q_counter = 0;
  std::vector<std::set<std::string>> probe_seen;  // per context, by print

  Gen(const FiniteStructure& s, const FragmentParams& params, int depth)
      : S(s), p(params), C(depth), rng(params.seed) {
    ctx.resize(C + 1);
    probe_seen.resize(C + 1);
    for (int m = 1; m <= C; ++m) {
      ctx[m].arity = m;
      ctx[m].span = SpanBasis(S.eps());
    }
  }

  std::string fresh_bound() {
    std::string name;
    do name = "q" + std::to_string(++q_counter);
    while (S.signature().declared(name));
    return name;
  }

  // Adds the element if independent, then closes under variable
  // permutations. Returns true if anything was added.
  bool add_with_perms(int m, const Formula& f, const Vec& table) {
    if (!ctx[m].span.try_add(table)) return false;
    ctx[m].basis.push_back({f, table});
    if (m > 1) {
      std::vector<int> sigma(m);
      for (int i = 0; i < m; ++i) sigma[i] = i;
      while (std::next_permutation(sigma.begin(), sigma.end())) {
        std::map<std::string, std::string> sub;
        for (int i = 0; i < m; ++i)
          sub[Fragment::var_name(i)] = Fragment::var_name(sigma[i]);
        Vec pt = permute_table(S, table, m, sigma);
        if (ctx[m].span.try_add(pt))
          ctx[m].basis.push_back({rename_free(f, sub), std::move(pt)});
      }
    }
    return true;
  }

  void init_atoms(int m) {
    Vec ones(S.tuple_count(m), Value(1));
    add_with_perms(m, make_value(Value(1)), std::move(ones));
    auto terms = term_closure(S, m, p.term_depth);
    for (size_t i = 0; i < terms.size(); ++i) {
      for (size_t j = i + 1; j < terms.size(); ++j) {
        Vec t(terms[i].table.size());
        for (size_t k = 0; k < t.size(); ++k)
          t[k] = S.dist(terms[i].table[k], terms[j].table[k]);
        add_with_perms(m, make_dist(terms[i].term, terms[j].term),
                       std::move(t));
      }
    }
    for (auto& R : S.signature().relations()) {
      size_t combos = 1;
      for (int k = 0; k < R.arity; ++k) combos *= terms.size();
      if (combos > 4096) continue;
      const Vec& rtab = S.relation_table(R.name);
      std::vector<size_t> pick(R.arity, 0);
      for (size_t c = 0; c < combos; ++c) {
        size_t rest = c;
        for (int k = R.arity - 1; k >= 0; --k) {
          pick[k] = rest % terms.size();
          rest /= terms.size();
        }
        Vec t(S.tuple_count(m));
        std::vector<int> args(R.arity);
        for (size_t idx = 0; idx < t.size(); ++idx) {
          for (int k = 0; k < R.arity; ++k) args[k] = terms[pick[k]].table[idx];
          t[idx] = rtab[S.tuple_index(args)];
        }
        std::vector<Term> targs;
        for (int k = 0; k < R.arity; ++k) targs.push_back(terms[pick[k]].term);
        add_with_perms(m, make_rel(R.name, std::move(targs)), std::move(t));
      }
    }
  }

  bool uses_last_var(const Formula& f, int m) {
    auto fv = free_variables(f);
    return std::find(fv.begin(), fv.end(), Fragment::var_name(m - 1)) !=
           fv.end();
  }

  void record_probe(int m, const Formula& f, Vec table) {
    if (ctx[m].probes.size() >= kMaxProbes) return;
    if (!probe_seen[m].insert(print_formula(f)).second) return;
    ctx[m].probes.push_back({f, std::move(table)});
  }

  // Wraps f (a context m+1 element) in sup/inf over x_{m+1} and offers it
  // to context m; dependent results are kept as probes.
  bool quantify_into(int m, const Formula& f, const Vec& table, bool is_sup) {
    std::string q = fresh_bound();
    std::map<std::string, std::string> sub{{Fragment::var_name(m), q}};
    Formula body = rename_free(f, sub);
    Formula g = is_sup ? make_sup(q, body) : make_inf(q, body);
    Vec t = project_table(table, S.size(), is_sup, S.eps());
    if (add_with_perms(m, g, t)) return true;
    record_probe(m, g, std::move(t));
    return false;
  }

  bool quantifier_pass(int m) {
    bool changed = false;
    auto& up = ctx[m + 1];
    const size_t snapshot = up.basis.size();
    for (size_t i = 0; i < snapshot; ++i) {
      if (!uses_last_var(up.basis[i].formula, m + 1)) continue;
      changed |= quantify_into(m, up.basis[i].formula, up.basis[i].table, true);
      changed |=
          quantify_into(m, up.basis[i].formula, up.basis[i].table, false);
    }
    if (p.mode != FragmentParams::Saturated) return changed;
    for (int s = 0; s < p.samples; ++s) {
      int dim = int(up.basis.size());
      int size = 1 + int(rng() % uint64_t(std::min(dim, 3)));
      std::vector<int> idx;
      while (int(idx.size()) < size) {
        int k = int(rng() % uint64_t(dim));
        if (std::find(idx.begin(), idx.end(), k) == idx.end())
          idx.push_back(k);
      }
      Formula f;
      Vec t(S.tuple_count(m + 1), Value(0));
      for (int k : idx) {
        long num = long(rng() % 6) - 3;
        if (num >= 0) ++num;  // nonzero in [-3, 3]
        long den = 1 + long(rng() % 4);
        Value c = Value::ratio(num, den);
        Formula part = make_scale(c, up.basis[k].formula);
        f = f ? make_add(f, part) : part;
        for (size_t j = 0; j < t.size(); ++j)
          t[j] += c * up.basis[k].table[j];
      }
      if (!uses_last_var(f, m + 1)) continue;
      changed |= quantify_into(m, f, t, true);
      changed |= quantify_into(m, f, t, false);
    }
    return changed;
  }

  bool extension_pass(int m) {
    bool changed = false;
    auto& lo = ctx[m];
    const size_t snapshot = lo.basis.size();
    for (size_t i = 0; i < snapshot; ++i)
      changed |= add_with_perms(m + 1, lo.basis[i].formula,
                                extend_table(lo.basis[i].table, S.size()));
    return changed;
  }

  // Rebuilds each context so that the basis of context m is exactly the
  // first dim_m elements of context m+1 (tables extended).
  void finalize_embedding() {
    for (int m = 1; m < C; ++m) {
      std::vector<BasisElement> old = std::move(ctx[m + 1].basis);
      ctx[m + 1].basis.clear();
      ctx[m + 1].span = SpanBasis(S.eps());
      for (auto& e : ctx[m].basis) {
        Vec t = extend_table(e.table, S.size());
        if (!ctx[m + 1].span.try_add(t))
          throw std::logic_error("fragment: lost prefix embedding");
        ctx[m + 1].basis.push_back({e.formula, std::move(t)});
      }
      for (auto& e : old)
        if (ctx[m + 1].span.try_add(e.table))
          ctx[m + 1].basis.push_back(std::move(e));
    }
  }
};

}  // namespace

std::vector<TermEntry> term_closure(const FiniteStructure& S, int m,
                                    int depth_cap) {
  if (m < 1) throw std::invalid_argument("term_closure: arity must be >= 1");
  std::vector<TermEntry> out;
  auto push_unique = [&](Term t, std::vector<int> table) {
    for (auto& e : out)
      if (e.table == table) return false;
    out.push_back({std::move(t), std::move(table)});
    return true;
  };
  const size_t count = S.tuple_count(m);
  for (int i = 0; i < m; ++i) {
    std::vector<int> table(count);
    for (size_t idx = 0; idx < count; ++idx)
      table[idx] = S.tuple_of_index(idx, m)[i];
    push_unique(make_var(Fragment::var_name(i)), std::move(table));
  }
  for (auto& c : S.signature().constants())
    push_unique(make_const_term(c),
                std::vector<int>(count, S.constant(c)));

  for (int depth = 0; depth < depth_cap; ++depth) {
    bool changed = false;
    const size_t snapshot = out.size();
    for (auto& F : S.signature().functions()) {
      const auto& ftab = S.function_table(F.name);
      size_t combos = 1;
      for (int k = 0; k < F.arity; ++k) combos *= snapshot;
      std::vector<size_t> pick(F.arity);
      for (size_t c = 0; c < combos && out.size() < kMaxTerms; ++c) {
        size_t rest = c;
        for (int k = F.arity - 1; k >= 0; --k) {
          pick[k] = rest % snapshot;
          rest /= snapshot;
        }
        std::vector<int> table(count);
        std::vector<int> args(F.arity);
        for (size_t idx = 0; idx < count; ++idx) {
          for (int k = 0; k < F.arity; ++k) args[k] = out[pick[k]].table[idx];
          table[idx] = ftab[S.tuple_index(args)];
        }
        std::vector<Term> targs;
        for (int k = 0; k < F.arity; ++k) targs.push_back(out[pick[k]].term);
        changed |= push_unique(make_apply(F.name, std::move(targs)),
                               std::move(table));
      }
    }
    if (!changed || out.size() >= kMaxTerms) break;
  }
  return out;
}

Fragment generate_fragment(const FiniteStructure& S, int n,
                           const FragmentParams& p) {
  if (n < 1) throw std::invalid_argument("generate_fragment: n must be >= 1");
  if (S.tuple_count(n) > p.table_budget)
    throw std::invalid_argument("generate_fragment: context too large");

  // Listed formulas fix their own variable demand.
  std::vector<Formula> listed;
  int C = n;
  if (p.mode == FragmentParams::Listed) {
    std::vector<std::string> order;  // free names in first-appearance order
    std::vector<Formula> raw;
    for (auto& text : p.listed) {
      Formula f = parse_formula(text, S.signature());
      check_formula(f, S.signature());
      raw.push_back(f);
      for (auto& v : free_variables(f))
        if (std::find(order.begin(), order.end(), v) == order.end())
          order.push_back(v);
    }
    std::map<std::string, std::string> sub;
    for (size_t i = 0; i < order.size(); ++i)
      sub[order[i]] = Fragment::var_name(int(i));
    for (auto& f : raw) listed.push_back(rename_free(f, sub));
    C = std::max(n, int(order.size()));
  } else {
    C = n + p.extra_contexts;
  }
  C = std::min(C, kMaxContexts);
  while (C > n && S.tuple_count(C) > p.table_budget) --C;
  for (int i = 0; i < C; ++i)
    if (S.signature().declared(Fragment::var_name(i)))
      throw std::invalid_argument(
          "generate_fragment: signature reserves variable name " +
          Fragment::var_name(i));

  Gen g(S, p, C);
  bool saturated = false;

  if (p.mode == FragmentParams::Listed) {
    for (int m = 1; m <= C; ++m) {
      Vec ones(S.tuple_count(m), Value(1));
      g.add_with_perms(m, make_value(Value(1)), std::move(ones));
      for (auto& f : listed) {
        auto fv = free_variables(f);
        bool fits = true;
        for (auto& v : fv) {
          bool ok = false;
          for (int i = 0; i < m; ++i)
            if (v == Fragment::var_name(i)) ok = true;
          fits = fits && ok;
        }
        if (!fits) continue;
        Vec t(S.tuple_count(m));
        for (size_t idx = 0; idx < t.size(); ++idx) {
          auto tuple = S.tuple_of_index(idx, m);
          Assignment asg;
          for (int i = 0; i < m; ++i) asg[Fragment::var_name(i)] = tuple[i];
          t[idx] = eval_formula(f, S, asg);
        }
        if (!g.add_with_perms(m, f, t)) g.record_probe(m, f, std::move(t));
      }
    }
  } else {
    for (int m = 1; m <= C; ++m) g.init_atoms(m);
    for (int round = 0; round < p.rounds; ++round) {
      bool changed = false;
      for (int m = C - 1; m >= 1; --m) changed |= g.quantifier_pass(m);
      for (int m = 1; m < C; ++m) changed |= g.extension_pass(m);
      if (!changed) {
        saturated = true;
        break;
      }
    }
  }

  g.finalize_embedding();

  Fragment out;
  out.S_ = &S;
  out.contexts_ = std::move(g.ctx);
  out.saturated_ = saturated;
  out.params_ = p;
  return out;
}

}  // namespace lcw
