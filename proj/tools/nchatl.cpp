// Command-line front end: check formulas against a model, validate input
// files, expand a compact model to its explicit game structure, run the
// brute-force cross-validation suite, and benchmark scaling in the agent
// count.
//
// Exit codes: 0 success (and query-state verdict true), 1 query-state
// verdict false or cross-validation mismatch, 2 input parse error,
// 3 validation failure, 4 budget refusal.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nchatl/family.hpp"
#include "nchatl/formula.hpp"
#include "nchatl/model.hpp"
#include "nchatl/model_io.hpp"
#include "nchatl/oracle.hpp"
#include "nchatl/profiles.hpp"
#include "nchatl/semantics.hpp"

namespace {

using nchatl::Coalition;
using nchatl::Model;
using nchatl::NormativeSystem;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFalse = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitBudget = 4;

struct ExitWith {
  int code;
  explicit ExitWith(int c) : code(c) {}
};

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

// "all", "none", or comma-separated indices and i-j ranges.
Coalition parse_comply(const std::string& text, int n) {
  if (text == "all") return nchatl::full_coalition(n);
  if (text == "none" || text.empty()) return {};
  std::vector<int> agents;
  std::stringstream ss(text);
  std::string item;
  auto bad = [&](const std::string& what) {
    std::cerr << "error: bad --comply entry '" << what << "'\n";
    throw ExitWith(kExitParse);
  };
  while (std::getline(ss, item, ',')) {
    if (item.empty()) bad(item);
    size_t dash = item.find('-', 1);
    try {
      size_t used = 0;
      if (dash == std::string::npos) {
        int a = std::stoi(item, &used);
        if (used != item.size()) bad(item);
        agents.push_back(a);
      } else {
        int lo = std::stoi(item.substr(0, dash), &used);
        if (used != dash) bad(item);
        int hi = std::stoi(item.substr(dash + 1), &used);
        if (used != item.size() - dash - 1) bad(item);
        if (lo > hi) bad(item);
        for (int a = lo; a <= hi; ++a) agents.push_back(a);
      }
    } catch (const std::exception&) {
      bad(item);
    }
  }
  for (int a : agents)
    if (a < 1 || a > n) {
      std::cerr << "error: --comply agent " << a << " out of range 1.." << n
                << "\n";
      throw ExitWith(kExitParse);
    }
  return nchatl::make_coalition(std::move(agents));
}

std::string comply_to_string(const Coalition& c) {
  std::string out = "{";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c[i]);
  }
  return out + "}";
}

Model load_model_or_exit(const std::string& path) {
  try {
    return nchatl::load_model(path);
  } catch (const nchatl::LoadError& e) {
    std::cerr << "error: " << path << ": " << e.what() << "\n";
    throw ExitWith(kExitParse);
  }
}

NormativeSystem load_norm_or_exit(const std::string& path,
                                  const Model& model) {
  try {
    return nchatl::load_norm(path, model);
  } catch (const nchatl::LoadError& e) {
    std::cerr << "error: " << path << ": " << e.what() << "\n";
    throw ExitWith(kExitParse);
  }
}

void validate_or_exit(const Model& model, const NormativeSystem& norm) {
  auto mv = nchatl::validate_model(model);
  auto nv = nchatl::validate_norm(model, norm);
  if (mv.empty() && nv.empty()) return;
  for (const auto& v : mv) std::cerr << "model: " << v << "\n";
  for (const auto& v : nv) std::cerr << "norm: " << v << "\n";
  throw ExitWith(kExitValidation);
}

nchatl::Formula parse_formula_or_exit(const std::string& text,
                                      const Model& model) {
  try {
    return nchatl::parse_formula(text, model);
  } catch (const nchatl::ParseError& e) {
    std::cerr << "error: formula '" << text << "': " << e.what() << "\n";
    throw ExitWith(kExitParse);
  }
}

// Query file: one formula per line, '#' starts a comment, blanks skipped.
std::vector<std::string> read_queries(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    throw ExitWith(kExitParse);
  }
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    size_t a = line.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r\n");
    out.push_back(line.substr(a, b - a + 1));
  }
  return out;
}

struct CheckConfig {
  std::string model_path;
  std::string norm_path;
  std::string comply = "none";
  std::string formula;
  std::string queries_path;
  std::string state;
  std::string format = "text";
};

int cmd_check(const CheckConfig& cfg) {
  Model model = load_model_or_exit(cfg.model_path);
  NormativeSystem norm;
  if (!cfg.norm_path.empty()) norm = load_norm_or_exit(cfg.norm_path, model);
  validate_or_exit(model, norm);

  Coalition compliance = parse_comply(cfg.comply, model.agent_count);

  std::vector<std::string> texts;
  if (!cfg.formula.empty()) texts.push_back(cfg.formula);
  if (!cfg.queries_path.empty()) {
    auto more = read_queries(cfg.queries_path);
    texts.insert(texts.end(), more.begin(), more.end());
  }
  if (texts.empty()) {
    std::cerr << "error: give --formula or --queries\n";
    throw ExitWith(kExitParse);
  }

  int query_state = -1;
  if (!cfg.state.empty()) {
    query_state = model.state_index(cfg.state);
    if (query_state < 0) {
      std::cerr << "error: unknown state '" << cfg.state << "'\n";
      throw ExitWith(kExitParse);
    }
  }

  nchatl::ProfileEngine engine(model, norm);
  nchatl::CheckContext ctx{&model, &norm, compliance, &engine};

  bool all_true = true;
  json results = json::array();
  for (const auto& text : texts) {
    nchatl::Formula f = parse_formula_or_exit(text, model);
    auto start = std::chrono::steady_clock::now();
    nchatl::StateSet sat = nchatl::mcheck(ctx, f);
    double elapsed = ms_since(start);
    auto names = nchatl::state_names(model, sat);

    json r;
    r["formula"] = text;
    r["compliance"] = comply_to_string(compliance);
    r["states"] = names;
    if (query_state >= 0) {
      bool verdict = sat.contains(query_state);
      r["verdict"] = verdict;
      all_true = all_true && verdict;
    }
    r["wall_time_ms"] = elapsed;
    results.push_back(std::move(r));

    if (cfg.format == "text") {
      std::cout << "formula: " << text << "\n";
      std::cout << "states:";
      for (const auto& name : names) std::cout << " " << name;
      std::cout << "\n";
      if (query_state >= 0)
        std::cout << "verdict at " << cfg.state << ": "
                  << (sat.contains(query_state) ? "true" : "false") << "\n";
    }
  }
  if (cfg.format != "text") {
    if (results.size() == 1 && cfg.queries_path.empty())
      std::cout << results[0].dump(2) << "\n";
    else
      std::cout << json{{"results", results}}.dump(2) << "\n";
  }
  return query_state >= 0 && !all_true ? kExitFalse : kExitOk;
}

int cmd_validate(const std::string& model_path, const std::string& norm_path,
                 const std::string& format) {
  Model model = load_model_or_exit(model_path);
  NormativeSystem norm;
  if (!norm_path.empty()) norm = load_norm_or_exit(norm_path, model);
  auto mv = nchatl::validate_model(model);
  auto nv = nchatl::validate_norm(model, norm);
  if (format == "text") {
    if (mv.empty() && nv.empty()) {
      std::cout << "OK\n";
    } else {
      for (const auto& v : mv) std::cout << "model: " << v << "\n";
      for (const auto& v : nv) std::cout << "norm: " << v << "\n";
    }
  } else {
    json doc;
    doc["ok"] = mv.empty() && nv.empty();
    doc["model_violations"] = mv;
    doc["norm_violations"] = nv;
    std::cout << doc.dump(2) << "\n";
  }
  return mv.empty() && nv.empty() ? kExitOk : kExitValidation;
}

int cmd_expand(const std::string& model_path, std::uint64_t budget) {
  Model model = load_model_or_exit(model_path);
  NormativeSystem empty;
  validate_or_exit(model, empty);
  try {
    nchatl::ExplicitCgs cgs = nchatl::expand(model, budget);
    std::cout << nchatl::explicit_to_json(cgs);
  } catch (const nchatl::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  }
  return kExitOk;
}

// One cross-validation instance: compact-vs-brute profile sets on every
// (state, compliance, acting) triple, subset-condition vs matching on
// every candidate count vector, and compact-vs-naive formula evaluation.
bool cross_validate(const Model& model, const NormativeSystem& norm,
                    const nchatl::Coalition& compliance,
                    const nchatl::Coalition& acting,
                    const nchatl::Formula& formula, std::uint64_t budget,
                    nchatl::LegalCountRule rule, std::string& failure) {
  nchatl::ProfileEngine engine(model, norm, rule);
  const int n = model.agent_count;
  const auto everyone = nchatl::full_coalition(n);

  // All coalition pairs would be 4^n; sample the given pair plus all
  // single-set combinations with the full and empty sets.
  std::vector<std::pair<Coalition, Coalition>> pairs = {
      {compliance, acting},
      {compliance, nchatl::coalition_complement(acting, n)},
      {everyone, acting},
      {{}, acting},
      {compliance, everyone},
      {acting, compliance},
  };
  for (int q = 0; q < model.num_states(); ++q) {
    for (const auto& [a, b] : pairs) {
      const auto& fast = engine.compliant(q, a, b);
      auto brute = nchatl::brute_compliant_profiles(model, norm, a, q, b, budget);
      if (fast != brute) {
        failure = "compliant-set mismatch at state " +
                  model.states[static_cast<size_t>(q)].name + ", compliance " +
                  comply_to_string(a) + ", acting " + comply_to_string(b);
        return false;
      }
    }
    // Realizability test on every candidate vector for A∩B.
    const auto constrained = nchatl::coalition_intersect(compliance, acting);
    for (const auto& f2 : nchatl::partial_profiles(
             model, q, static_cast<nchatl::Count>(constrained.size()))) {
      bool fast = nchatl::hall_condition(model, norm, q, f2, constrained, rule);
      bool slow = nchatl::matching_check(model, norm, q, f2, constrained);
      if (fast != slow) {
        failure = "realizability mismatch at state " +
                  model.states[static_cast<size_t>(q)].name + ", vector " +
                  nchatl::profile_to_string(f2) + ", members " +
                  comply_to_string(constrained);
        return false;
      }
    }
  }

  nchatl::ProfileEngine check_engine(model, norm, rule);
  nchatl::CheckContext ctx{&model, &norm, compliance, &check_engine};
  nchatl::StateSet fast = nchatl::mcheck(ctx, formula);
  nchatl::StateSet naive =
      nchatl::naive_mcheck(model, norm, compliance, formula, budget);
  if (!(fast == naive)) {
    failure = "evaluation mismatch on formula " + nchatl::print_formula(formula);
    return false;
  }
  return true;
}

int cmd_oracle(std::uint64_t seed, int instances, std::uint64_t budget,
               bool fault) {
  const auto rule = fault ? nchatl::LegalCountRule::ForbiddenMeets
                          : nchatl::LegalCountRule::PermittedInside;
  nchatl::Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    Model model;
    NormativeSystem norm;
    Coalition compliance, acting;
    nchatl::Formula formula;
    if (i == 0) {
      auto fixed = nchatl::fixed_scenario();
      model = std::move(fixed.model);
      norm = std::move(fixed.norm);
      compliance = fixed.compliance;
      acting = fixed.acting;
      formula = nchatl::f_next(acting, nchatl::f_top());
    } else {
      auto inst = nchatl::random_instance(rng);
      model = std::move(inst.model);
      norm = std::move(inst.norm);
      compliance = nchatl::random_coalition(rng, model.agent_count);
      acting = nchatl::random_coalition(rng, model.agent_count);
      formula = nchatl::random_formula(rng, model, 3);
    }
    std::string failure;
    if (!cross_validate(model, norm, compliance, acting, formula, budget,
                        rule, failure)) {
      std::cout << "FAIL instance " << i << ": " << failure << "\n";
      std::cout << "model:\n" << nchatl::model_to_json(model);
      std::cout << "norm:\n" << nchatl::norm_to_json(norm, model);
      std::cout << "compliance: " << comply_to_string(compliance)
                << " acting: " << comply_to_string(acting) << "\n";
      std::cout << "formula: " << nchatl::print_formula(formula) << "\n";
      std::cout << (i) << "/" << instances << " pass\n";
      return kExitFalse;
    }
  }
  std::cout << instances << "/" << instances << " pass\n";
  return kExitOk;
}

int cmd_bench(const std::vector<int>& ns, int repetitions,
              const std::string& format) {
  if (ns.empty()) {
    std::cerr << "error: give --n with at least one agent count\n";
    throw ExitWith(kExitParse);
  }
  json rows = json::array();
  for (int n : ns) {
    if (n < 10) {
      std::cerr << "error: the benchmark family needs n >= 10, got " << n
                << "\n";
      throw ExitWith(kExitParse);
    }
    Model model = nchatl::coordination_model(n);
    NormativeSystem norm = nchatl::coordination_norm(model);
    nchatl::Formula formula = nchatl::parse_formula(
        "[{9,10}] !<<{7,8,9,10}>> X !(p1 & p2)", model);
    double best = -1;
    bool verdict = false;
    for (int r = 0; r < std::max(repetitions, 1); ++r) {
      nchatl::ProfileEngine engine(model, norm);
      nchatl::CheckContext ctx{&model, &norm, {}, &engine};
      auto start = std::chrono::steady_clock::now();
      nchatl::StateSet sat = nchatl::mcheck(ctx, formula);
      double elapsed = ms_since(start);
      verdict = sat.contains(0);
      if (best < 0 || elapsed < best) best = elapsed;
    }
    json row;
    row["n"] = n;
    row["profile_set_size"] = nchatl::count_profiles(2, n);
    row["verdict_at_q0"] = verdict;
    row["wall_time_ms"] = best;
    rows.push_back(std::move(row));
    if (format == "text")
      std::cout << "n=" << n << " profile_set_size=" << (n + 1)
                << " verdict_at_q0=" << (verdict ? "true" : "false")
                << " wall_time_ms=" << best << "\n";
  }
  if (format != "text")
    std::cout << json{{"rows", rows}}.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checker for norm-governed anonymous multi-agent games"};
  app.require_subcommand(1);

  CheckConfig check_cfg;
  auto* check = app.add_subcommand("check", "Evaluate formulas on a model");
  check->add_option("--model", check_cfg.model_path, "Model file")->required();
  check->add_option("--norm", check_cfg.norm_path, "Norm file");
  check->add_option("--comply", check_cfg.comply,
                    "Compliance coalition: list, 'all', or 'none'");
  check->add_option("--formula", check_cfg.formula, "Formula text");
  check->add_option("--queries", check_cfg.queries_path,
                    "File with one formula per line");
  check->add_option("--state", check_cfg.state, "Query state id");
  check->add_option("--format", check_cfg.format, "text or structured");

  std::string v_model, v_norm, v_format = "text";
  auto* validate = app.add_subcommand("validate", "Validate model and norm");
  validate->add_option("--model", v_model, "Model file")->required();
  validate->add_option("--norm", v_norm, "Norm file");
  validate->add_option("--format", v_format, "text or structured");

  std::string e_model;
  std::string e_format = "structured";
  std::uint64_t e_budget = nchatl::kDefaultExpandBudget;
  auto* expand = app.add_subcommand("expand", "Expand to the explicit game");
  expand->add_option("--model", e_model, "Model file")->required();
  expand->add_option("--budget", e_budget, "Max transition entries");
  expand->add_option("--format", e_format,
                     "Accepted for uniformity; output is always the explicit "
                     "game as JSON");

  std::uint64_t o_seed = 42, o_budget = nchatl::kDefaultExpandBudget;
  int o_instances = 500;
  bool o_fault = false;
  auto* oracle = app.add_subcommand(
      "oracle", "Cross-validate the fast path against brute force");
  oracle->add_option("--seed", o_seed, "Generator seed");
  oracle->add_option("--instances", o_instances, "Instance count");
  oracle->add_option("--budget", o_budget, "Enumeration budget");
  oracle->add_flag("--fault", o_fault,
                   "Inject the known-wrong legal-count variant (the suite "
                   "must then fail)");

  std::vector<int> b_ns;
  int b_reps = 3;
  std::string b_format = "text";
  auto* bench = app.add_subcommand("bench", "Time checks on a scaled family");
  bench->add_option("--n", b_ns, "Agent counts")->delimiter(',');
  bench->add_option("--instances", b_reps, "Repetitions per n");
  bench->add_option("--format", b_format, "text or structured");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    if (*check) return cmd_check(check_cfg);
    if (*validate) return cmd_validate(v_model, v_norm, v_format);
    if (*expand) return cmd_expand(e_model, e_budget);
    if (*oracle) return cmd_oracle(o_seed, o_instances, o_budget, o_fault);
    if (*bench) return cmd_bench(b_ns, b_reps, b_format);
  } catch (const ExitWith& e) {
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}
