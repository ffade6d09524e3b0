// lcwb: workbench for affine continuous logic over finite metric
// structures. Commands cover evaluation, validation, ultrameans, type
// space geometry, and the property suites.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "lcw/corpus.hpp"
#include "lcw/parser.hpp"
#include "lcw/report.hpp"
#include "lcw/ultramean.hpp"

using namespace lcw;

namespace {

struct Opts {
  std::string corpus, file;
  std::string mode;
  double eps = 1e-9;
  int n = 1;
  std::string fragment_mode = "saturated";
  std::string formulas;
  int depth = 2, rounds = 8, samples = 32;
  std::uint64_t seed = 1;
  bool json = false;
  std::string out;
};

void add_structure_flags(CLI::App* cmd, Opts& o) {
  cmd->add_option("--corpus", o.corpus, "built-in structure name");
  cmd->add_option("--file", o.file, "structure file path");
  cmd->add_option("--mode", o.mode, "exact|float comparison mode override");
  cmd->add_option("--eps", o.eps, "float mode tolerance");
}

void add_fragment_flags(CLI::App* cmd, Opts& o) {
  cmd->add_option("--fragment", o.fragment_mode,
                  "listed|enumerated|saturated");
  cmd->add_option("--formulas", o.formulas,
                  "semicolon-separated formulas for listed mode");
  cmd->add_option("--depth", o.depth, "term depth cap");
  cmd->add_option("--rounds", o.rounds, "generation passes");
  cmd->add_option("--samples", o.samples, "random combinations per pass");
  cmd->add_option("--seed", o.seed, "generation seed");
}

void add_output_flags(CLI::App* cmd, Opts& o) {
  cmd->add_flag("--json", o.json, "machine-readable report");
  cmd->add_option("--out", o.out, "write the report to a file");
}

FiniteStructure load_structure(const Opts& o) {
  if (o.corpus.empty() == o.file.empty())
    throw CLI::ValidationError("exactly one of --corpus/--file is required");
  FiniteStructure S = o.corpus.empty() ? load_structure_file(o.file)
                                       : load_corpus(o.corpus).structure;
  if (o.mode == "float") S.set_float_mode(o.eps);
  else if (!o.mode.empty() && o.mode != "exact")
    throw CLI::ValidationError("--mode must be exact or float");
  return S;
}

FragmentParams fragment_params(const Opts& o) {
  FragmentParams p;
  if (o.fragment_mode == "listed") p.mode = FragmentParams::Listed;
  else if (o.fragment_mode == "enumerated") p.mode = FragmentParams::Enumerated;
  else if (o.fragment_mode == "saturated") p.mode = FragmentParams::Saturated;
  else
    throw CLI::ValidationError("--fragment must be listed|enumerated|saturated");
  p.term_depth = o.depth;
  p.rounds = o.rounds;
  p.samples = o.samples;
  p.seed = o.seed;
  std::stringstream in(o.formulas);
  std::string part;
  while (std::getline(in, part, ';'))
    if (part.find_first_not_of(" \t") != std::string::npos)
      p.listed.push_back(part);
  return p;
}

ojson inputs_json(const Opts& o) {
  ojson in;
  if (!o.corpus.empty()) in["corpus"] = o.corpus;
  if (!o.file.empty()) in["file"] = o.file;
  if (!o.mode.empty()) in["mode"] = o.mode;
  in["n"] = o.n;
  in["fragment_mode"] = o.fragment_mode;
  in["seed"] = o.seed;
  return in;
}

int finish(const Opts& o, const ojson& report, const std::string& table,
           int code) {
  std::string text = o.json ? report.dump(2) + "\n" : table;
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.out);
    if (!out) throw std::runtime_error("cannot write " + o.out);
    out << text;
  }
  return code;
}

std::vector<int> parse_labels(const FiniteStructure& S,
                              const std::string& csv) {
  std::vector<int> out;
  std::stringstream in(csv);
  std::string part;
  while (std::getline(in, part, ',')) {
    auto b = part.find_first_not_of(" \t");
    auto e = part.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    std::string label = part.substr(b, e - b + 1);
    int p = S.point_by_label(label);
    if (p < 0) throw std::invalid_argument("unknown point label: " + label);
    out.push_back(p);
  }
  return out;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

struct UltrameanInput {
  std::vector<FiniteStructure> factors;
  Charge mu{Vec{Value(1)}};
};

UltrameanInput load_factors(const std::string& factors_csv,
                            const std::string& weights_csv) {
  UltrameanInput out;
  std::stringstream in(factors_csv);
  std::string part;
  while (std::getline(in, part, ','))
    out.factors.push_back(load_corpus(part).structure);
  if (out.factors.empty())
    throw std::invalid_argument("--factors must name at least one structure");
  if (weights_csv.empty()) {
    out.mu = Charge::uniform(int(out.factors.size()));
  } else {
    Vec w;
    std::stringstream win(weights_csv);
    while (std::getline(win, part, ',')) w.push_back(parse_rational(part));
    out.mu = Charge(std::move(w));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"affine continuous logic workbench"};
  app.require_subcommand(1);

  Opts o;
  std::string formula_text, gamma_text, at_csv, subset_csv, seeds_csv;
  std::string p_csv, q_csv, factors_csv, weights_csv, strategy = "exhaustive";
  std::string suite_name;
  int cases = 100;
  bool serial = false, also_min = false;

  auto* c_eval = app.add_subcommand("eval", "evaluate a formula");
  c_eval->add_option("--formula", formula_text)->required();
  c_eval->add_option("--at", at_csv, "point labels for the free variables");

  auto* c_validate = app.add_subcommand("validate", "check structure axioms");

  auto* c_um = app.add_subcommand("ultramean", "build a charge average");
  c_um->add_option("--factors", factors_csv)->required();
  c_um->add_option("--weights", weights_csv);

  auto* c_los = app.add_subcommand("los-check", "averaging identity check");
  c_los->add_option("--factors", factors_csv)->required();
  c_los->add_option("--weights", weights_csv);
  c_los->add_option("--formula", formula_text)->required();

  auto* c_ts = app.add_subcommand("typespace", "realized type vectors");
  auto* c_ext = app.add_subcommand("extreme", "extreme type vectors");
  auto* c_face = app.add_subcommand("face", "facial partial type verdict");
  c_face->add_option("--gamma", gamma_text, "semicolon-separated conditions")
      ->required();
  auto* c_tm = app.add_subcommand("type-metric", "distance between types");
  c_tm->add_option("--p", p_csv, "realizer labels of p")->required();
  c_tm->add_option("--q", q_csv, "realizer labels of q")->required();
  auto* c_sf = app.add_subcommand("sigma-face", "pinned-pair face");
  c_sf->add_option("--p", p_csv, "realizer labels of p")->required();
  c_sf->add_option("--q", q_csv, "realizer labels of q")->required();

  auto* c_elem = app.add_subcommand("elementary", "submodel elementarity");
  c_elem->add_option("--subset", subset_csv)->required();
  auto* c_clo = app.add_subcommand("closure", "maximizer closure");
  c_clo->add_option("--seeds", seeds_csv)->required();
  c_clo->add_flag("--min", also_min, "also close under minimizers");
  auto* c_min = app.add_subcommand("minimal", "minimal elementary submodel");
  c_min->add_option("--strategy", strategy, "exhaustive|greedy");
  auto* c_xt = app.add_subcommand("extremal", "extremal structure verdict");

  auto* c_suite = app.add_subcommand("suite", "run a property suite");
  c_suite->add_option("name", suite_name)->required();
  c_suite->add_option("--cases", cases, "random cases");
  c_suite->add_flag("--serial", serial, "disable worker parallelism");

  for (auto* c : {c_eval, c_validate, c_ts, c_ext, c_face, c_tm, c_sf, c_elem,
                  c_clo, c_min, c_xt})
    add_structure_flags(c, o);
  for (auto* c : {c_ts, c_ext, c_face, c_tm, c_sf, c_elem, c_min, c_xt})
    add_fragment_flags(c, o);
  for (auto* c : {c_ts, c_ext, c_face, c_xt})
    c->add_option("--n", o.n, "context size");
  c_suite->add_option("--seed", o.seed, "case seed base");
  for (auto* c : {c_eval, c_validate, c_um, c_los, c_ts, c_ext, c_face, c_tm,
                  c_sf, c_elem, c_clo, c_min, c_xt, c_suite})
    add_output_flags(c, o);

  CLI11_PARSE(app, argc, argv);
  auto t0 = std::chrono::steady_clock::now();

  try {
    if (c_eval->parsed()) {
      FiniteStructure S = load_structure(o);
      Formula f = parse_formula(formula_text, S.signature());
      check_formula(f, S.signature());
      auto fv = free_variables(f);
      Assignment asg;
      auto pts = parse_labels(S, at_csv);
      if (pts.size() != fv.size())
        throw std::invalid_argument("--at must assign all free variables (" +
                                    std::to_string(fv.size()) + " needed)");
      for (size_t i = 0; i < fv.size(); ++i) asg[fv[i]] = pts[i];
      Value v = eval_formula(f, S, asg);
      ojson res;
      res["value"] = to_json(v);
      auto rep = report_envelope("eval", inputs_json(o), nullptr, res, {}, {},
                                 ms_since(t0));
      return finish(o, rep, "value = " + v.str() + "\n", 0);
    }

    if (c_validate->parsed()) {
      // Bypass load-time validation so defects are reported, not thrown.
      FiniteStructure S = [&] {
        if (!o.corpus.empty()) return load_corpus(o.corpus).structure;
        std::ifstream in(o.file);
        if (!in) throw std::invalid_argument("cannot read file: " + o.file);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_structure_file(buf.str(), false);
      }();
      auto report = validate_structure(S);
      ojson res;
      res["violations"] = violations_json(report);
      res["valid"] = report.empty();
      auto rep = report_envelope("validate", inputs_json(o), nullptr, res, {},
                                 {}, ms_since(t0));
      std::string table = report.empty() ? "valid\n" : "";
      for (auto& v : report) table += v.axiom + ": " + v.detail + "\n";
      return finish(o, rep, table, report.empty() ? 0 : 1);
    }

    if (c_um->parsed()) {
      auto in = load_factors(factors_csv, weights_csv);
      std::vector<const FiniteStructure*> ptrs;
      for (auto& f : in.factors) ptrs.push_back(&f);
      auto um = build_ultramean(ptrs, in.mu);
      ojson res;
      res["classes"] = um.quotient.size();
      res["labels"] = um.quotient.labels();
      ojson rels;
      for (auto& R : um.quotient.signature().relations())
        rels[R.name] = to_json(um.quotient.relation_table(R.name));
      res["relations"] = std::move(rels);
      auto rep = report_envelope("ultramean", inputs_json(o), nullptr, res, {},
                                 {}, ms_since(t0));
      std::string table;
      for (auto& l : um.quotient.labels()) table += l + "\n";
      return finish(o, rep, table, 0);
    }

    if (c_los->parsed()) {
      auto in = load_factors(factors_csv, weights_csv);
      std::vector<const FiniteStructure*> ptrs;
      for (auto& f : in.factors) ptrs.push_back(&f);
      auto um = build_ultramean(ptrs, in.mu);
      Formula f = parse_formula(formula_text, ptrs[0]->signature());
      check_formula(f, ptrs[0]->signature());
      const int m = int(free_variables(f).size());
      size_t combos = 1;
      for (int i = 0; i < m; ++i) combos *= size_t(um.quotient.size());
      if (combos > 65536)
        throw std::invalid_argument("los-check: too many class tuples");
      int failures = 0;
      ojson cexs = ojson::array();
      for (size_t c = 0; c < combos; ++c) {
        auto classes = um.quotient.tuple_of_index(c, m);
        auto chk = check_los(f, ptrs, in.mu, um, classes);
        if (!chk.equal) {
          ++failures;
          ojson e;
          e["classes"] = classes;
          e["lhs"] = to_json(chk.lhs);
          e["rhs"] = to_json(chk.rhs);
          cexs.push_back(std::move(e));
        }
      }
      ojson res;
      res["cases"] = combos;
      res["failures"] = failures;
      auto rep = report_envelope("los-check", inputs_json(o), nullptr, res, {},
                                 cexs, ms_since(t0));
      std::string table = "cases = " + std::to_string(combos) +
                          ", failures = " + std::to_string(failures) + "\n";
      return finish(o, rep, table, failures == 0 ? 0 : 1);
    }

    if (c_suite->parsed()) {
      SuiteParams sp;
      sp.random_cases = cases;
      sp.seed = o.seed;
      sp.parallel = !serial;
      std::vector<CorpusEntry> fixed;
      for (auto& name : {"M2", "U2", "DC3", "singleton"})
        fixed.push_back(load_corpus(name));
      for (auto& e : fixed) sp.fixed.push_back({e.name, &e.structure});
      SuiteReport r = run_suite(suite_name, sp);
      ojson res = suite_json(r);
      ojson in;
      in["suite"] = suite_name;
      in["cases"] = cases;
      in["seed"] = o.seed;
      auto rep = report_envelope("suite", in, nullptr, res, {},
                                 res["counterexamples"], ms_since(t0));
      std::string table = r.name + ": " + std::to_string(r.cases) +
                          " cases, " + std::to_string(r.skipped_unsaturated) +
                          " skipped, " +
                          std::to_string(r.counterexamples.size()) +
                          " counterexamples\n";
      for (auto& c : r.counterexamples)
        table += "  " + c.case_name + ": " + c.detail + "\n";
      return finish(o, rep, table, r.passed() ? 0 : 1);
    }

    // Remaining commands share a structure and a fragment.
    FiniteStructure S = load_structure(o);
    FragmentParams fp = fragment_params(o);

    if (c_elem->parsed()) {
      Fragment F = generate_fragment(S, std::max(1, o.n), fp);
      auto K = induce_submodel(S, parse_labels(S, subset_csv));
      auto r = is_elementary_submodel(S, K, F);
      ojson res;
      res["elementary"] = r.ok;
      if (!r.ok) {
        ojson w;
        w["formula"] = print_formula(r.witness);
        ojson tuple = ojson::array();
        for (int p : r.tuple) tuple.push_back(S.label(p));
        w["tuple"] = std::move(tuple);
        w["inner"] = to_json(r.inner);
        w["outer"] = to_json(r.outer);
        res["witness"] = std::move(w);
      }
      auto rep = report_envelope("elementary", inputs_json(o),
                                 fragment_json(F), res, {}, {}, ms_since(t0));
      std::string table = r.ok ? "elementary\n"
                               : "not elementary: " + print_formula(r.witness) +
                                     " differs (" + r.inner.str() + " vs " +
                                     r.outer.str() + ")\n";
      return finish(o, rep, table, r.ok ? 0 : 1);
    }

    if (c_clo->parsed()) {
      auto pts = maximizer_closure(S, parse_labels(S, seeds_csv), {},
                                   also_min);
      ojson res;
      ojson labels = ojson::array();
      for (int p : pts) labels.push_back(S.label(p));
      res["closure"] = labels;
      res["size"] = pts.size();
      auto rep = report_envelope("closure", inputs_json(o), nullptr, res, {},
                                 {}, ms_since(t0));
      std::string table;
      for (int p : pts) table += S.label(p) + "\n";
      return finish(o, rep, table, 0);
    }

    if (c_min->parsed()) {
      Fragment F = generate_fragment(S, std::max(1, o.n), fp);
      MinimalStrategy st = strategy == "greedy" ? MinimalStrategy::Greedy
                                                : MinimalStrategy::Exhaustive;
      if (strategy != "greedy" && strategy != "exhaustive")
        throw std::invalid_argument("--strategy must be exhaustive or greedy");
      auto K = minimal_submodel(S, F, st);
      ojson res;
      ojson labels = ojson::array();
      for (int p : K.points) labels.push_back(S.label(p));
      res["points"] = labels;
      res["size"] = K.points.size();
      auto rep = report_envelope("minimal", inputs_json(o), fragment_json(F),
                                 res, {}, {}, ms_since(t0));
      std::string table;
      for (int p : K.points) table += S.label(p) + "\n";
      return finish(o, rep, table, 0);
    }

    if (c_xt->parsed()) {
      Fragment F = generate_fragment(S, std::max(1, o.n), fp);
      auto r = is_extremal(S, F, o.n);
      ojson res;
      res["extremal"] = r.extremal;
      if (!r.extremal) {
        ojson w = ojson::array();
        for (int p : r.witness) w.push_back(S.label(p));
        res["witness"] = std::move(w);
        res["context"] = r.n;
      }
      auto rep = report_envelope("extremal", inputs_json(o), fragment_json(F),
                                 res, {}, {}, ms_since(t0));
      return finish(o, rep, r.extremal ? "extremal\n" : "not extremal\n",
                    r.extremal ? 0 : 1);
    }

    if (c_tm->parsed() || c_sf->parsed()) {
      auto pa = parse_labels(S, p_csv);
      auto pb = parse_labels(S, q_csv);
      if (pa.empty() || pa.size() != pb.size())
        throw std::invalid_argument("--p/--q need equal nonempty label lists");
      const int n = int(pa.size());
      Fragment F = generate_fragment(S, c_sf->parsed() ? 2 * n : n, fp);
      TypeSpace TS = realized_types(F, n);
      int pi = type_of(TS, pa), qi = type_of(TS, pb);
      if (c_tm->parsed()) {
        Value d = type_metric(TS, pi, qi);
        ojson res;
        res["distance"] = to_json(d);
        auto rep = report_envelope("type-metric", inputs_json(o),
                                   fragment_json(F), res, {}, {},
                                   ms_since(t0));
        return finish(o, rep, "distance = " + d.str() + "\n", 0);
      }
      auto r = sigma_face(F, TS, pi, qi);
      ojson res;
      res["r"] = to_json(r.r);
      res["verdict"] = verdict_json(r.verdict);
      res["marginals_ok"] = r.marginals_ok;
      ojson certs = ojson::array();
      if (r.verdict.functional) certs.push_back(functional_json(*r.verdict.functional));
      auto rep = report_envelope("sigma-face", inputs_json(o),
                                 fragment_json(F), res, certs, {},
                                 ms_since(t0));
      bool ok = r.verdict.status == FaceVerdict::Face && r.marginals_ok;
      std::string table = std::string("verdict = ") +
                          std::string(res["verdict"]["status"]) + "\n";
      return finish(o, rep, table, ok ? 0 : 1);
    }

    // typespace / extreme / face
    Fragment F = generate_fragment(S, o.n, fp);
    TypeSpace TS = realized_types(F, o.n);
    auto ext = extreme_types(TS);

    if (c_face->parsed()) {
      auto conds = parse_conditions(gamma_text, S.signature());
      auto pt = compile_partial_type(TS, conds);
      FaceVerdict v = is_face_partial_type(TS, pt);
      ojson res;
      res["verdict"] = verdict_json(v);
      ojson verts = ojson::array();
      for (int j : v.vertex_set)
        verts.push_back(type_vector_json(F, TS.vectors[size_t(j)]));
      res["vertices"] = std::move(verts);
      ojson certs = ojson::array();
      if (v.functional) certs.push_back(functional_json(*v.functional));
      auto rep = report_envelope("face", inputs_json(o), fragment_json(F), res,
                                 certs, {}, ms_since(t0));
      std::string table = std::string("verdict = ") +
                          std::string(res["verdict"]["status"]) + "\n";
      return finish(o, rep, table,
                    v.status == FaceVerdict::Face ? 0 : 1);
    }

    ojson res;
    ojson vecs = ojson::array();
    for (size_t k = 0; k < TS.vectors.size(); ++k) {
      if (c_ext->parsed() &&
          std::find(ext.begin(), ext.end(), int(k)) == ext.end())
        continue;
      ojson v = type_vector_json(F, TS.vectors[k]);
      v["index"] = k;
      vecs.push_back(std::move(v));
    }
    res["vectors"] = std::move(vecs);
    res["extreme"] = ext;
    auto rep =
        report_envelope(c_ext->parsed() ? "extreme" : "typespace",
                        inputs_json(o), fragment_json(F), res, {}, {},
                        ms_since(t0));
    std::string table;
    for (size_t k = 0; k < TS.vectors.size(); ++k) {
      bool is_ext = std::find(ext.begin(), ext.end(), int(k)) != ext.end();
      if (c_ext->parsed() && !is_ext) continue;
      Vec shown(TS.vectors[k].coords.begin() + 1, TS.vectors[k].coords.end());
      table += vec_str(shown) + (is_ext ? "  extreme" : "") + "\n";
    }
    return finish(o, rep, table, 0);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
