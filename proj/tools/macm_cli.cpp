// macm: sample, tabulate and verify Macdonald measures on partitions.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "macm/error.hpp"
#include "macm/experiment.hpp"
#include "macm/gl_verify.hpp"
#include "macm/verify.hpp"

using json = nlohmann::ordered_json;
using namespace macm;

namespace {

constexpr int kExitVerification = 1;
constexpr int kExitConfig = 2;

struct Global {
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string tail_tol;
  std::string out;
};

struct SpecArgs {
  std::string name = "hall-littlewood-gl";
  std::string u = "1/2";
  std::string qf = "2";
  std::string x, y, q, t;
};

void add_spec_options(CLI::App* cmd, SpecArgs& s) {
  cmd->add_option("--spec", s.name, "hall-littlewood-gl, schur-q-plancherel or general")->capture_default_str();
  cmd->add_option("--u", s.u, "u in [0,1] for the named specs")->capture_default_str();
  cmd->add_option("--qf", s.qf, "field size qf > 1 for the named specs")->capture_default_str();
  cmd->add_option("--x", s.x, "general: comma list of x_i, or geom:first:ratio");
  cmd->add_option("--y", s.y, "general: comma list of y_j, or geom:first:ratio");
  cmd->add_option("--q", s.q, "general: Macdonald q");
  cmd->add_option("--t", s.t, "general: Macdonald t");
}

VariableSpec parse_variables(const std::string& text, const char* what) {
  if (text.empty()) throw Error(ErrorCode::ConfigError, std::string("general spec needs --") + what);
  if (text.rfind("geom:", 0) == 0) {
    const auto rest = text.substr(5);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::ConfigError, "expected geom:first:ratio");
    return VariableSpec::geometric(parse_rational(rest.substr(0, colon)), parse_rational(rest.substr(colon + 1)));
  }
  std::vector<Rational> values;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) values.push_back(parse_rational(item));
  return VariableSpec::finite(std::move(values));
}

MeasureSpec build_spec(const SpecArgs& s) {
  MeasureSpec spec;
  if (s.name == "hall-littlewood-gl" || s.name == "hl") {
    spec = HallLittlewoodGL{parse_rational(s.u), parse_rational(s.qf)};
  } else if (s.name == "schur-q-plancherel" || s.name == "schur") {
    spec = SchurQPlancherel{parse_rational(s.u), parse_rational(s.qf)};
  } else if (s.name == "general") {
    if (s.q.empty() || s.t.empty()) throw Error(ErrorCode::ConfigError, "general spec needs --q and --t");
    spec = GeneralSpec{parse_variables(s.x, "x"), parse_variables(s.y, "y"), {parse_rational(s.q), parse_rational(s.t)}};
  } else {
    throw Error(ErrorCode::ConfigError, "unknown spec '" + s.name + "'");
  }
  validate(spec);
  return spec;
}

Rational tail_tol(const Global& g) { return g.tail_tol.empty() ? default_tail_tolerance() : parse_rational(g.tail_tol); }

json exact(const Rational& r) { return {{"exact", to_string(r)}, {"decimal", to_double(r)}}; }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

// Writes a JSON document, or a CSV projection of its array under `rows`.
void emit(const Global& g, const json& doc, const std::string& rows = "") {
  std::ofstream file;
  if (!g.out.empty()) {
    file.open(g.out);
    if (!file) throw Error(ErrorCode::ConfigError, "cannot write " + g.out);
  }
  std::ostream& os = g.out.empty() ? std::cout : file;
  if (g.format == "json" || rows.empty()) {
    os << doc.dump(2) << "\n";
    return;
  }
  const json& table = doc.at(rows);
  if (table.empty()) return;
  auto cell = [](const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_object() && v.contains("exact")) return v["exact"].get<std::string>();
    return v.dump();
  };
  std::vector<std::string> cols;
  for (const auto& [k, v] : table.front().items()) {
    cols.push_back(k);
    if (v.is_object() && v.contains("decimal")) cols.push_back(k + "_decimal");
  }
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const auto& row : table) {
    bool first = true;
    for (const auto& [k, v] : row.items()) {
      os << (first ? "" : ",") << csv_escape(cell(v));
      first = false;
      if (v.is_object() && v.contains("decimal")) os << "," << v["decimal"].dump();
    }
    os << "\n";
  }
}

int run_sample(const Global& g, const SpecArgs& s, const std::string& sampler, std::size_t n, int steps, bool with_tableau) {
  ExperimentConfig cfg;
  cfg.spec = build_spec(s);
  cfg.sampler = parse_sampler_kind(sampler);
  cfg.tail_tol = tail_tol(g);
  cfg.kerov_steps = steps;
  cfg.seed = g.seed;
  const SamplerHandle h = make_sampler(cfg);
  const RandomSource root(g.seed);
  json records = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    RandomSource rng = root.spawn(i);
    const GrowthTrace tr = h.draw(rng);
    json rec{{"index", i},
             {"partition", tr.final_shape.to_string()},
             {"size", tr.final_shape.size()},
             {"intervals", tr.intervals},
             {"truncation_bias", exact(tr.truncation_bias)}};
    if (with_tableau && tr.tableau) rec["tableau"] = tr.tableau->to_string();
    records.push_back(std::move(rec));
  }
  emit(g, json{{"sampler", sampler}, {"spec", describe(cfg.spec)}, {"seed", g.seed}, {"samples", records}}, "samples");
  return 0;
}

int run_pmf(const Global& g, const SpecArgs& s, int n_vars, const std::vector<std::string>& shapes, int max_size) {
  const MeasureSpec spec = build_spec(s);
  std::vector<Partition> targets;
  for (const auto& text : shapes) targets.push_back(parse_partition(text));
  if (targets.empty())
    for (int k = 0; k <= max_size; ++k)
      for (auto& p : partitions_of(k, n_vars)) targets.push_back(p);
  const Rational tol = tail_tol(g);
  json rows = json::array();
  for (const auto& lam : targets) {
    const ExactProb p = pmf_truncated(spec, n_vars, lam, tol);
    rows.push_back({{"partition", lam.to_string()}, {"probability", exact(p.value)}, {"tail_bound", exact(p.tail_bound)}});
  }
  emit(g, json{{"spec", describe(spec)}, {"n_vars", n_vars}, {"rows", rows}}, "rows");
  return 0;
}

int run_verify(const Global& g, std::vector<std::string> suites) {
  if (suites.empty()) suites = suite_names();
  json out = json::array();
  json flat = json::array();
  bool ok = true;
  for (const auto& name : suites) {
    const SuiteResult r = verify(name);
    json items = json::array();
    for (const auto& it : r.items) {
      items.push_back({{"check", it.name}, {"passed", it.passed}, {"cases", it.cases}, {"detail", it.detail}});
      flat.push_back({{"suite", name}, {"check", it.name}, {"passed", it.passed}, {"cases", it.cases}, {"detail", it.detail}});
    }
    ok = ok && r.passed();
    out.push_back({{"suite", name}, {"passed", r.passed()}, {"items", items}});
  }
  emit(g, json{{"passed", ok}, {"suites", out}, {"rows", flat}}, "rows");
  return ok ? 0 : kExitVerification;
}

int run_glcheck(const Global& g, int n, long qf, const std::string& marginal, int deg, int n_max) {
  json doc;
  const auto classes = enumerate_classes(n, qf);
  json rows = json::array();
  Integer total = 0;
  for (const auto& e : classes) {
    rows.push_back({{"class", e.datum.to_string()}, {"size", e.size.get_str()}});
    total += e.size;
  }
  const Integer order = gl_order(n, qf);
  bool ok = total == order;
  doc["n"] = n;
  doc["qf"] = qf;
  doc["group_order"] = order.get_str();
  doc["class_count"] = classes.size();
  doc["sizes_sum_to_order"] = total == order;
  doc["rows"] = rows;
  if (!marginal.empty()) {
    const auto r = marginal_vs_measure(parse_partition(marginal), deg, qf, n_max);
    json coeffs = json::array();
    for (std::size_t k = 0; k < r.matches.size(); ++k)
      coeffs.push_back({{"degree", k},
                        {"group", exact(r.group_side[k])},
                        {"measure", exact(r.measure_side[k])},
                        {"match", static_cast<bool>(r.matches[k])}});
    doc["marginal"] = {{"partition", r.shape.to_string()},
                       {"slot_degree", r.degree},
                       {"n_max", r.n_max},
                       {"all_match", r.all_match()},
                       {"coefficients", coeffs},
                       {"prob_n_max", exact(r.group_probability.back())},
                       {"measure_prefix", exact(r.measure_prefix)},
                       {"limit", exact(r.limit.value)},
                       {"limit_tail_bound", exact(r.limit.tail_bound)}};
    ok = ok && r.all_match();
  }
  doc["passed"] = ok;
  emit(g, doc, "rows");
  return ok ? 0 : kExitVerification;
}

json report_json(const ComparisonReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"partition", row.shape.to_string()},
                    {"count", row.count},
                    {"empirical", row.empirical},
                    {"exact", exact(row.exact.value)},
                    {"exact_tail_bound", exact(row.exact.tail_bound)},
                    {"contribution", row.contribution}});
  json doc{{"sampler", r.sampler},
           {"spec", r.spec},
           {"n_samples", r.n_samples},
           {"seed", r.seed},
           {"stop_interval", r.stop_interval},
           {"max_tracked_size", r.max_tracked_size},
           {"truncation_bias", exact(r.truncation_bias)},
           {"untracked_count", r.untracked_count},
           {"untracked_mass", exact(r.untracked_mass)},
           {"exact_tail_bound", exact(r.exact_tail_bound)}};
  doc["tv"] = r.tv ? json(*r.tv) : json(nullptr);
  doc["tv_defined"] = r.tv.has_value();
  doc["chi_square"] = r.chi_square ? json(*r.chi_square) : json(nullptr);
  doc["degrees_of_freedom"] = r.degrees_of_freedom;
  doc["p_value"] = r.p_value ? json(*r.p_value) : json(nullptr);
  doc["rows"] = rows;
  return doc;
}

int run_experiment_cmd(const Global& g, const SpecArgs& s, const std::string& sampler, std::size_t n, int steps,
                       int max_size, unsigned threads, std::optional<double> max_tv, std::optional<double> min_p) {
  ExperimentConfig cfg;
  cfg.spec = build_spec(s);
  cfg.sampler = parse_sampler_kind(sampler);
  cfg.n_samples = n;
  cfg.seed = g.seed;
  cfg.tail_tol = tail_tol(g);
  cfg.max_tracked_size = max_size;
  cfg.kerov_steps = steps;
  cfg.threads = threads;
  cfg.format = g.format;
  cfg.out_path = g.out;
  const ComparisonReport r = run_experiment(cfg);
  json doc = report_json(r);
  bool ok = true;
  if (max_tv) ok = ok && r.tv && *r.tv < *max_tv;
  if (min_p) ok = ok && r.p_value && *r.p_value > *min_p;
  if (max_tv || min_p) doc["passed"] = ok;
  emit(g, doc, "rows");
  return ok ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sample and verify Macdonald measures on partitions"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI config file; command-line flags win");
  Global g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--tail-tol", g.tail_tol, "certified tail tolerance (default 2^-40)");
  app.add_option("--out", g.out, "output file (default stdout)");

  SpecArgs spec;
  std::string sampler = "young_tableau";
  std::size_t n_samples = 10;
  int steps = 0;
  bool with_tableau = false;
  auto* sample = app.add_subcommand("sample", "draw partitions from a sampler");
  add_spec_options(sample, spec);
  sample->add_option("--sampler", sampler, "general, hl_simplified, young_tableau, lattice_weights, kerov")->capture_default_str();
  sample->add_option("--n-samples", n_samples)->capture_default_str();
  sample->add_option("--steps", steps, "kerov walk length");
  sample->add_flag("--tableau", with_tableau, "include the recorded tableau");

  int n_vars = 4, max_size = 6;
  std::vector<std::string> shapes;
  auto* pmf = app.add_subcommand("pmf", "exact truncated probabilities P^N(λ)");
  add_spec_options(pmf, spec);
  pmf->add_option("--n-vars", n_vars, "truncation N")->capture_default_str();
  pmf->add_option("--partition", shapes, "partition such as 2,1,1 (repeatable); default all up to --max-size");
  pmf->add_option("--max-size", max_size)->capture_default_str();

  std::vector<std::string> suites;
  auto* ver = app.add_subcommand("verify", "run exact-identity suites");
  ver->add_option("--suite", suites, "partitions, qseries, kernel, measures, samplers, tableaux, gl (default all)");

  int gl_n = 3, deg = 1, n_max = 4;
  long gl_qf = 2;
  std::string marginal;
  auto* gl = app.add_subcommand("glcheck", "conjugacy classes of GL(n, q) and measure comparison");
  gl->add_option("--n", gl_n)->capture_default_str();
  gl->add_option("--qf", gl_qf)->capture_default_str();
  gl->add_option("--marginal", marginal, "partition for the slot marginal check");
  gl->add_option("--deg", deg)->capture_default_str();
  gl->add_option("--n-max", n_max)->capture_default_str();

  std::size_t exp_samples = 10000;
  int exp_max = 12;
  unsigned threads = 0;
  std::optional<double> max_tv, min_p;
  auto* exp = app.add_subcommand("experiment", "Monte Carlo comparison against the exact law");
  add_spec_options(exp, spec);
  exp->add_option("--sampler", sampler)->capture_default_str();
  exp->add_option("--n-samples", exp_samples)->capture_default_str();
  exp->add_option("--steps", steps, "kerov walk length");
  exp->add_option("--max-size", exp_max, "largest |λ| tracked")->capture_default_str();
  exp->add_option("--threads", threads, "worker threads (0: all cores)");
  exp->add_option("--max-tv", max_tv, "fail (exit 1) unless TV is below this");
  exp->add_option("--min-p", min_p, "fail (exit 1) unless the chi-square p-value exceeds this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*sample) return run_sample(g, spec, sampler, n_samples, steps, with_tableau);
    if (*pmf) return run_pmf(g, spec, n_vars, shapes, max_size);
    if (*ver) return run_verify(g, suites);
    if (*gl) return run_glcheck(g, gl_n, gl_qf, marginal, deg, n_max);
    if (*exp) return run_experiment_cmd(g, spec, sampler, exp_samples, steps, exp_max, threads, max_tv, min_p);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
