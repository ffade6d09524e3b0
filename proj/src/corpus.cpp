#include "lcw/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lcw/ultramean.hpp"

namespace lcw {

namespace {

FiniteStructure make_m2() {
  Signature sig;
  sig.add_constant("c0");
  sig.add_relation("P", 1, Value(1));
  std::vector<std::vector<Value>> d = {{Value(0), Value(1)},
                                       {Value(1), Value(0)}};
  FiniteStructure S(sig, {"a0", "a1"}, std::move(d));
  S.set_constant("c0", 0);
  S.set_relation("P", {Value(0), Value(1)});
  return S;
}

FiniteStructure make_u2() {
  FiniteStructure m2 = make_m2();
  Charge mu({Value::ratio(1, 2), Value::ratio(1, 2)});
  return build_ultramean({&m2, &m2}, mu).quotient;
}

FiniteStructure make_dc3(bool with_witness) {
  Signature sig;
  sig.add_constant("k0");
  sig.add_constant("k1");
  sig.add_constant("k2");
  const int n = with_witness ? 4 : 3;
  std::vector<std::vector<Value>> d(n, std::vector<Value>(n, Value(1)));
  for (int i = 0; i < n; ++i) d[i][i] = Value(0);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("b" + std::to_string(i));
  FiniteStructure S(sig, std::move(labels), std::move(d));
  S.set_constant("k0", 0);
  S.set_constant("k1", 1);
  S.set_constant("k2", 2);
  return S;
}

FiniteStructure make_c8() {
  const int n = 8;
  std::vector<std::vector<Value>> d(n, std::vector<Value>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int k = std::abs(i - j);
      k = std::min(k, n - k);
      d[i][j] = Value(std::sin(M_PI * k / n));
    }
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  FiniteStructure S(Signature{}, std::move(labels), std::move(d));
  S.set_float_mode(1e-9);
  return S;
}

FiniteStructure make_singleton() {
  return FiniteStructure(Signature{}, {"s0"}, {{Value(0)}});
}

}  // namespace

std::vector<std::string> corpus_names() {
  return {"M2", "U2", "DC3", "DC3-open", "C8", "singleton"};
}

CorpusEntry load_corpus(const std::string& name) {
  if (name == "M2")
    return {name, "two points at distance 1, unary P, constant c0",
            make_m2()};
  if (name == "U2")
    return {name, "uniform ultramean of two copies of M2", make_u2()};
  if (name == "DC3")
    return {name,
            "three named points pairwise at distance 1 plus an anonymous "
            "witness",
            make_dc3(true)};
  if (name == "DC3-open")
    return {name, "three named points pairwise at distance 1",
            make_dc3(false)};
  if (name == "C8")
    return {name, "eight points on a unit circle with the chord metric",
            make_c8()};
  if (name == "singleton")
    return {name, "one point", make_singleton()};
  throw std::invalid_argument("unknown corpus entry: " + name);
}

// ---------------------------------------------------------------------------
// Structure files

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

struct Sections {
  std::vector<std::string> signature, points, metric, interp, mode;
};

Sections split_sections(const std::string& text) {
  Sections s;
  std::vector<std::string>* cur = nullptr;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos)
      line.erase(pos);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks.size() == 1 && toks[0] == "SIGNATURE") cur = &s.signature;
    else if (toks.size() == 1 && toks[0] == "POINTS") cur = &s.points;
    else if (toks.size() == 1 && toks[0] == "METRIC") cur = &s.metric;
    else if (toks.size() == 1 && toks[0] == "INTERP") cur = &s.interp;
    else if (toks.size() == 1 && toks[0] == "MODE") cur = &s.mode;
    else if (cur) cur->push_back(line);
    else
      throw std::invalid_argument("structure file: content before the first "
                                  "section header (line " +
                                  std::to_string(lineno) + ")");
  }
  return s;
}

}  // namespace

FiniteStructure parse_structure_file(const std::string& text, bool validate) {
  Sections sec = split_sections(text);

  bool float_mode = false;
  double eps = 1e-9;
  for (auto& line : sec.mode) {
    auto toks = split_ws(line);
    if (toks[0] == "exact" && toks.size() == 1) float_mode = false;
    else if (toks[0] == "float" && toks.size() <= 2) {
      float_mode = true;
      if (toks.size() == 2) eps = std::stod(toks[1]);
    } else
      throw std::invalid_argument("structure file: bad MODE line: " + line);
  }
  auto num = [&](const std::string& tok) {
    Value v = parse_rational(tok);
    return float_mode ? Value(v.to_double()) : v;
  };

  Signature sig;
  for (auto& line : sec.signature) {
    auto t = split_ws(line);
    if (t.size() == 2 && t[0] == "constant") sig.add_constant(t[1]);
    else if (t.size() == 5 && t[0] == "relation" && t[3] == "lipschitz")
      sig.add_relation(t[1], std::stoi(t[2]), num(t[4]));
    else if (t.size() == 5 && t[0] == "function" && t[3] == "lipschitz")
      sig.add_function(t[1], std::stoi(t[2]), num(t[4]));
    else
      throw std::invalid_argument("structure file: bad SIGNATURE line: " +
                                  line);
  }

  std::vector<std::string> labels;
  for (auto& line : sec.points)
    for (auto& t : split_ws(line)) labels.push_back(t);
  const int n = int(labels.size());
  if (n == 0)
    throw std::invalid_argument("structure file: no points declared");

  // Lower-triangular metric rows, with or without the zero diagonal.
  std::vector<std::vector<Value>> metric(n, std::vector<Value>(n, Value(0)));
  const int rows = int(sec.metric.size());
  int first = -1;  // point index of the first listed row
  if (rows == n) first = 0;
  else if (rows == n - 1) first = 1;
  else
    throw std::invalid_argument(
        "structure file: METRIC needs " + std::to_string(n - 1) + " or " +
        std::to_string(n) + " rows, found " + std::to_string(rows));
  for (int r = 0; r < rows; ++r) {
    const int i = first + r;
    auto t = split_ws(sec.metric[size_t(r)]);
    if (int(t.size()) != i && int(t.size()) != i + 1)
      throw std::invalid_argument("structure file: METRIC row for point " +
                                  labels[size_t(i)] + " has " +
                                  std::to_string(t.size()) + " entries");
    for (int j = 0; j < i; ++j)
      metric[size_t(i)][size_t(j)] = metric[size_t(j)][size_t(i)] =
          num(t[size_t(j)]);
  }

  FiniteStructure S(sig, labels, std::move(metric));
  if (float_mode) S.set_float_mode(eps);

  auto point = [&](const std::string& label) {
    int p = S.point_by_label(label);
    if (p < 0)
      throw std::invalid_argument("structure file: unknown point " + label);
    return p;
  };

  std::map<std::string, std::vector<int>> ftables;
  std::map<std::string, Vec> rtables;
  std::map<std::string, std::vector<bool>> rset, fset;
  for (auto& fn : sig.functions()) {
    ftables[fn.name].assign(S.tuple_count(fn.arity), 0);
    fset[fn.name].assign(S.tuple_count(fn.arity), false);
  }
  for (auto& rel : sig.relations()) {
    rtables[rel.name].assign(S.tuple_count(rel.arity), Value(0));
    rset[rel.name].assign(S.tuple_count(rel.arity), false);
  }

  for (auto& line : sec.interp) {
    auto t = split_ws(line);
    auto eq = std::find(t.begin(), t.end(), "=");
    if (t.size() < 3 || eq == t.end() || eq + 2 != t.end())
      throw std::invalid_argument("structure file: bad INTERP line: " + line);
    const std::string& sym = t[0];
    const std::string& rhs = t.back();
    std::vector<int> args;
    for (auto it = t.begin() + 1; it != eq; ++it) args.push_back(point(*it));
    if (sig.is_constant(sym)) {
      if (!args.empty())
        throw std::invalid_argument("structure file: constant " + sym +
                                    " takes no arguments");
      S.set_constant(sym, point(rhs));
    } else if (auto* fn = sig.function(sym)) {
      if (int(args.size()) != fn->arity)
        throw std::invalid_argument("structure file: arity mismatch for " +
                                    sym);
      size_t idx = S.tuple_index(args);
      ftables[sym][idx] = point(rhs);
      fset[sym][idx] = true;
    } else if (auto* rel = sig.relation(sym)) {
      if (int(args.size()) != rel->arity)
        throw std::invalid_argument("structure file: arity mismatch for " +
                                    sym);
      size_t idx = S.tuple_index(args);
      rtables[sym][idx] = num(rhs);
      rset[sym][idx] = true;
    } else {
      throw std::invalid_argument("structure file: undeclared symbol " + sym);
    }
  }
  for (auto& [name, flags] : fset)
    for (size_t i = 0; i < flags.size(); ++i)
      if (!flags[i])
        throw std::invalid_argument("structure file: function " + name +
                                    " missing an interpretation entry");
  for (auto& [name, flags] : rset)
    for (size_t i = 0; i < flags.size(); ++i)
      if (!flags[i])
        throw std::invalid_argument("structure file: relation " + name +
                                    " missing an interpretation entry");
  for (auto& [name, table] : ftables) S.set_function(name, table);
  for (auto& [name, table] : rtables) S.set_relation(name, table);

  auto report = validate ? validate_structure(S) : std::vector<Violation>{};
  if (!report.empty()) {
    std::string msg = "structure file: validation failed:";
    for (auto& v : report) msg += "\n  " + v.axiom + ": " + v.detail;
    throw std::invalid_argument(msg);
  }
  return S;
}

FiniteStructure load_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_structure_file(buf.str());
}

}  // namespace lcw
