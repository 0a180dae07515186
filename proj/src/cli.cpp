#include "cltl/cli.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cltl/cegar.hpp"
#include "cltl/error.hpp"
#include "cltl/formula.hpp"
#include "cltl/model_io.hpp"
#include "cltl/oracle.hpp"
#include "cltl/translate.hpp"

namespace cltl {

using nlohmann::json;

// ── Report serialization ────────────────────────────────────────────────────

namespace {

template <typename T>
void put_opt(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

json to_json(const Report& r) {
  json j;
  j["mode"] = r.mode;
  j["formula"] = r.formula;
  j["fragment"] = r.fragment;
  j["outcome"] = r.outcome;
  put_opt(j, "bound", r.bound);
  put_opt(j, "witness", r.witness);
  put_opt(j, "last_candidate", r.last_candidate);
  j["cutoff"] = r.cutoff;
  j["iterations"] = r.iterations;
  j["extra_checks"] = r.extra_checks;
  if (r.trace) {
    json t = json::array();
    for (const auto& e : *r.trace) {
      json x;
      x["n"] = e.n;
      put_opt(x, "candidate", e.candidate);
      x["nonempty"] = e.nonempty;
      x["automaton_states"] = e.automaton_states;
      x["product_states"] = e.product_states;
      t.push_back(x);
    }
    j["trace"] = t;
  }
  j["formula_automaton_states"] = r.formula_automaton_states;
  j["model_states"] = r.model_states;
  put_opt(j, "oracle_agrees", r.oracle_agrees);
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  r.mode = j.at("mode").get<std::string>();
  r.formula = j.at("formula").get<std::string>();
  r.fragment = j.at("fragment").get<std::string>();
  r.outcome = j.at("outcome").get<std::string>();
  r.bound = get_opt<std::uint64_t>(j, "bound");
  r.witness = get_opt<std::string>(j, "witness");
  r.last_candidate = get_opt<std::string>(j, "last_candidate");
  r.cutoff = j.at("cutoff").get<std::uint64_t>();
  r.iterations = j.at("iterations").get<std::uint64_t>();
  r.extra_checks = j.at("extra_checks").get<std::uint64_t>();
  if (j.contains("trace")) {
    std::vector<ReportTraceEntry> t;
    for (const auto& x : j.at("trace")) {
      ReportTraceEntry e;
      e.n = x.at("n").get<std::uint64_t>();
      e.candidate = get_opt<std::string>(x, "candidate");
      e.nonempty = x.at("nonempty").get<bool>();
      e.automaton_states = x.at("automaton_states").get<std::uint64_t>();
      e.product_states = x.at("product_states").get<std::uint64_t>();
      t.push_back(e);
    }
    r.trace = std::move(t);
  }
  r.formula_automaton_states = j.at("formula_automaton_states").get<std::uint64_t>();
  r.model_states = j.at("model_states").get<std::uint64_t>();
  r.oracle_agrees = get_opt<bool>(j, "oracle_agrees");
  r.elapsed_ms = j.at("elapsed_ms").get<double>();
  return r;
}

std::string render_text(const Report& r) {
  std::ostringstream os;
  auto line = [&](const char* key, const auto& v) {
    os << key << ": " << v << '\n';
  };
  line("mode", r.mode);
  line("formula", r.formula);
  line("fragment", r.fragment);
  line("outcome", r.outcome);
  if (r.bound) line("bound", *r.bound);
  if (r.witness) line("witness", *r.witness);
  if (r.last_candidate) line("last_candidate", *r.last_candidate);
  line("cutoff", r.cutoff);
  line("iterations", r.iterations);
  line("extra_checks", r.extra_checks);
  if (r.trace) {
    for (const auto& e : *r.trace) {
      os << "trace: n=" << e.n;
      if (e.candidate) os << " candidate=" << *e.candidate;
      os << " nonempty=" << (e.nonempty ? "true" : "false")
         << " automaton_states=" << e.automaton_states
         << " product_states=" << e.product_states << '\n';
    }
  }
  line("formula_automaton_states", r.formula_automaton_states);
  line("model_states", r.model_states);
  if (r.oracle_agrees) line("oracle_agrees", *r.oracle_agrees ? "true" : "false");
  line("elapsed_ms", r.elapsed_ms);
  return os.str();
}

// ── Running a query ─────────────────────────────────────────────────────────

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open formula file `" + path + "`");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Sup: return "sup";
    case Mode::Inf: return "inf";
    case Mode::Value: return "value";
  }
  return "?";
}

std::vector<ReportTraceEntry> convert_trace(const std::vector<TraceEntry>& t) {
  std::vector<ReportTraceEntry> out;
  for (const auto& e : t) {
    ReportTraceEntry x;
    x.n = e.n;
    if (e.candidate) x.candidate = e.candidate->to_string();
    x.nonempty = e.nonempty;
    x.automaton_states = e.automaton_states;
    x.product_states = e.product_states;
    out.push_back(x);
  }
  return out;
}

// Cross-checks a bound result against the oracle on its witness word.
bool witness_confirms(Formula phi, const BoundResult& r) {
  if (!r.witness) return true;
  switch (r.outcome) {
    case Outcome::Finite:
      return oracle_value(phi, *r.witness, r.bound + 1) ==
             CappedValue::exact(r.bound);
    case Outcome::Unbounded:
      return oracle_value(phi, *r.witness, r.cutoff + 1).kind ==
             CappedValue::Kind::AboveCap;
    case Outcome::InfiniteInf: return true;
  }
  return false;
}

// No accepting run means the supremum of the empty set.
CappedValue no_run_as_zero(CappedValue v) {
  return v.kind == CappedValue::Kind::NoRun ? CappedValue::exact(0) : v;
}

// Value of `phi` on `u` computed on automata, exact up to `cap` (the same
// convention as value_inf).  LTL<= input goes through the dual:
// [[phi]](u) = [[negate_dual(phi)]]'(u) + 1, except when the dual value is 0,
// where u |- phi[0] decides between 0 and 1.
CappedValue automaton_value(Formula phi, const CounterAutomaton& sup_side,
                            const LassoWord& u, std::uint64_t cap) {
  if (classify_fragment(phi) == Fragment::CostGT)
    return no_run_as_zero(value_on_lasso(sup_side, u, cap));
  CappedValue dual = no_run_as_zero(value_on_lasso(sup_side, u, cap));
  if (dual.kind == CappedValue::Kind::AboveCap) return dual;
  if (dual.value > 0) return CappedValue::exact(dual.value + 1);
  bool zero = achieves_threshold(translate(instantiate(phi, 0)), u, 0);
  return CappedValue::exact(zero ? 0 : 1);
}

int run_checked(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  if (c.formula.has_value() == c.formula_file.has_value())
    throw UsageError("give exactly one of --formula and --formula-file");
  if (c.mode == Mode::Value) {
    if (!c.word) throw UsageError("--mode value needs --word");
    if (c.model_path) throw UsageError("--mode value takes --word, not --model");
  } else {
    if (!c.model_path) throw UsageError("--model is required in this mode");
    if (c.word) throw UsageError("--word is only used with --mode value");
  }
  if (c.cutoff && *c.cutoff == 0 && c.mode == Mode::Value)
    throw UsageError("--cutoff must be positive in value mode");

  const Formula phi = parse(c.formula ? *c.formula : read_file(*c.formula_file));
  const Fragment frag = classify_fragment(phi);
  if (frag == Fragment::Mixed)
    throw UsageError("formula mixes U<= and R>; use one cost operator family");
  if (c.mode == Mode::Inf && frag == Fragment::CostGT)
    throw UsageError("--mode inf expects an LTL<= formula");

  const Formula sup_side =
      label_counters(frag == Fragment::CostGT ? phi : negate_dual(phi));
  const CounterAutomaton a0 = translate(sup_side);
  if (c.dot_path) {
    std::ofstream dot(*c.dot_path);
    if (!dot) throw FileError("cannot write `" + *c.dot_path + "`");
    dot << to_dot(a0);
  }

  Report rep;
  rep.mode = mode_name(c.mode);
  rep.formula = print(phi);
  rep.fragment = to_string(frag);
  rep.formula_automaton_states = a0.num_states();
  int code = kExitFinite;

  if (c.mode == Mode::Value) {
    const LassoWord u = parse_lasso(*c.word);
    const std::uint64_t cap =
        c.cutoff ? *c.cutoff : u.prefix.size() + 2 * u.cycle.size() + 4;
    CappedValue v = automaton_value(phi, a0, u, cap);
    rep.cutoff = cap;
    if (v.kind == CappedValue::Kind::Exact) {
      rep.outcome = "finite";
      rep.bound = v.value;
    } else {
      rep.outcome = "above-cap";
      code = kExitUnbounded;
    }
    if (c.witness) rep.witness = format_lasso(u);
    if (c.oracle_check) rep.oracle_agrees = oracle_value(phi, u, cap) == v;
  } else {
    const CounterAutomaton model = load_model(*c.model_path);
    rep.model_states = model.num_states();
    BoundOptions opts;
    opts.cutoff = c.cutoff;
    opts.maximize = c.maximize;
    BoundResult r = c.mode == Mode::Sup ? compute_sup_bound(model, phi, opts)
                                        : compute_inf_bound(model, phi, opts);
    rep.outcome = to_string(r.outcome);
    if (r.outcome == Outcome::Finite) rep.bound = r.bound;
    if (c.witness && r.witness) rep.witness = format_lasso(*r.witness);
    if (r.last_candidate && r.outcome == Outcome::Unbounded)
      rep.last_candidate = r.last_candidate->to_string();
    rep.cutoff = r.cutoff;
    rep.iterations = r.iterations;
    rep.extra_checks = r.extra_checks;
    if (c.trace) rep.trace = convert_trace(r.trace);
    if (c.oracle_check) rep.oracle_agrees = witness_confirms(phi, r);
    code = r.outcome == Outcome::Finite      ? kExitFinite
           : r.outcome == Outcome::Unbounded ? kExitUnbounded
                                             : kExitInfiniteInf;
  }

  rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  if (c.format == Format::Json)
    out << to_json(rep).dump(2) << '\n';
  else
    out << render_text(rep);
  if (rep.oracle_agrees == false) {
    err << "error: oracle disagrees with the computed result\n";
    return kExitOracleMismatch;
  }
  return code;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return run_checked(config, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const FileError& e) {
    err << "file error: " << e.what() << '\n';
  } catch (const ValidationError& e) {
    err << "invalid model: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Sup/inf bounds of cost LTL formulas over omega-regular models"};
  app.name("cltl");
  RunConfig c;
  std::string mode = "sup", format = "text";
  app.add_option("-f,--formula", c.formula, "Formula text");
  app.add_option("--formula-file", c.formula_file, "File holding the formula");
  app.add_option("-m,--model", c.model_path, "Model automaton file");
  app.add_option("--mode", mode, "sup, inf or value")
      ->check(CLI::IsMember({"sup", "inf", "value"}));
  app.add_option("--word", c.word, "Lasso word for --mode value, e.g. \"{a} | {}\"");
  app.add_option("--cutoff", c.cutoff,
                 "Override the unboundedness cutoff (value mode: the cap)");
  app.add_flag("--witness", c.witness, "Print the witness lasso word");
  app.add_option("--dot", c.dot_path, "Write the formula's counter automaton as dot");
  app.add_flag("--oracle-check", c.oracle_check,
               "Re-check the result with the reference semantics");
  app.add_flag("--trace", c.trace, "Print the refinement trace");
  app.add_flag("--maximize", c.maximize,
               "Use the witness word's exact value in each refinement step");
  app.add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitFinite;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  c.mode = mode == "sup" ? Mode::Sup : mode == "inf" ? Mode::Inf : Mode::Value;
  c.format = format == "json" ? Format::Json : Format::Text;
  return run(c, out, err);
}

}  // namespace cltl
