#include "oddstop/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oddstop/core.hpp"
#include "oddstop/family.hpp"
#include "oddstop/models.hpp"
#include "oddstop/oracle.hpp"
#include "oddstop/sequence.hpp"
#include "oddstop/sim.hpp"

namespace oddstop {
namespace {

using nlohmann::json;

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) {
      throw InputError("empty entry in list '" + text + "'");
    }
    const auto e = item.find_last_not_of(" \t");
    out.push_back(item.substr(b, e - b + 1));
  }
  if (out.empty()) {
    throw InputError("empty list");
  }
  return out;
}

std::vector<Index> parse_index_list(const std::string& text) {
  std::vector<Index> out;
  for (const auto& tok : split_csv(text)) {
    std::size_t pos = 0;
    const long long v = std::stoll(tok, &pos);
    if (pos != tok.size()) {
      throw InputError("invalid integer '" + tok + "'");
    }
    out.push_back(v);
  }
  return out;
}

template <class T>
T parse_number(const std::string& text);

template <>
double parse_number<double>(const std::string& text) {
  if (text.find('/') != std::string::npos) {
    return to_double(parse_rational(text));
  }
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw InputError("invalid number '" + text + "'");
  }
  if (pos != text.size()) {
    throw InputError("invalid number '" + text + "'");
  }
  return v;
}

template <>
Rational parse_number<Rational>(const std::string& text) {
  return parse_rational(text);
}

// A problem/sequence description gathered from flags or an --input file.
struct ProblemSpec {
  std::string kind;  // explicit | table | constant | secretary | group
  std::vector<std::string> numbers;
  std::string constant_text;
  Index n = 0;
  std::vector<Index> sizes;
  bool exact = false;
};

struct CommonOpts {
  std::string p_text;
  std::string input_path;
  std::string constant_text;
  Index n = 0;
  Index secretary_n = 0;
  bool secretary_flag = false;
  std::string sizes_text;
  bool exact = false;
  bool as_json = false;
};

void add_problem_options(CLI::App* cmd, CommonOpts& opts, bool sequence_mode) {
  cmd->add_option("--p", opts.p_text,
                  "comma-separated success probabilities; decimal or n/d "
                  "(n/d entries force exact mode)");
  cmd->add_option("--input", opts.input_path, "JSON problem description file");
  cmd->add_option("--constant", opts.constant_text,
                  "constant success probability");
  if (sequence_mode) {
    cmd->add_flag("--secretary", opts.secretary_flag,
                  "the sequence p_k = 1/k");
  } else {
    cmd->add_option("--secretary", opts.secretary_n,
                    "secretary problem with the given horizon");
    cmd->add_option("--n", opts.n, "horizon (with --constant)");
  }
  cmd->add_option("--sizes", opts.sizes_text,
                  "comma-separated group-interview sizes");
  cmd->add_flag("--exact", opts.exact, "exact rational arithmetic");
  cmd->add_flag("--json", opts.as_json, "machine-readable output");
}

std::string json_number_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return j.dump();
  throw InputError("expected a number or a number string, got " + j.dump());
}

ProblemSpec spec_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open input file '" + path + "'");
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("invalid JSON in '" + path + "': " + e.what());
  }
  ProblemSpec spec;
  if (!j.contains("kind")) {
    throw InputError("input file is missing the 'kind' field");
  }
  spec.kind = j.at("kind").get<std::string>();
  if (spec.kind == "explicit" || spec.kind == "table") {
    if (!j.contains("p")) {
      throw InputError("kind '" + spec.kind + "' needs a 'p' array");
    }
    for (const auto& entry : j.at("p")) {
      spec.numbers.push_back(json_number_text(entry));
    }
  } else if (spec.kind == "constant") {
    if (!j.contains("value")) {
      throw InputError("kind 'constant' needs a 'value' field");
    }
    spec.constant_text = json_number_text(j.at("value"));
    spec.n = j.value("n", 0);
  } else if (spec.kind == "secretary") {
    spec.n = j.value("n", 0);
  } else if (spec.kind == "group") {
    if (!j.contains("sizes")) {
      throw InputError("kind 'group' needs a 'sizes' array");
    }
    for (const auto& entry : j.at("sizes")) {
      spec.sizes.push_back(entry.get<Index>());
    }
  } else {
    throw InputError("unknown problem kind '" + spec.kind + "'");
  }
  if (j.value("mode", "") == "exact") spec.exact = true;
  return spec;
}

bool has_rational_token(const ProblemSpec& spec) {
  for (const auto& s : spec.numbers) {
    if (s.find('/') != std::string::npos) return true;
  }
  return spec.constant_text.find('/') != std::string::npos;
}

ProblemSpec resolve_spec(const CommonOpts& opts, bool sequence_mode) {
  const int sources = !opts.p_text.empty() + !opts.input_path.empty() +
                      !opts.constant_text.empty() +
                      (opts.secretary_n > 0 || opts.secretary_flag) +
                      !opts.sizes_text.empty();
  if (sources != 1) {
    throw InputError(
        "specify exactly one problem source among --p, --input, --constant, "
        "--secretary, --sizes");
  }
  ProblemSpec spec;
  if (!opts.input_path.empty()) {
    spec = spec_from_file(opts.input_path);
  } else if (!opts.p_text.empty()) {
    spec.kind = sequence_mode ? "table" : "explicit";
    spec.numbers = split_csv(opts.p_text);
  } else if (!opts.constant_text.empty()) {
    spec.kind = "constant";
    spec.constant_text = opts.constant_text;
    spec.n = opts.n;
  } else if (opts.secretary_n > 0 || opts.secretary_flag) {
    spec.kind = "secretary";
    spec.n = opts.secretary_n;
  } else {
    spec.kind = "group";
    spec.sizes = parse_index_list(opts.sizes_text);
  }
  if (opts.exact || has_rational_token(spec)) spec.exact = true;
  return spec;
}

template <class T>
OddsProblem<T> make_problem(const ProblemSpec& spec) {
  if (spec.kind == "explicit" || spec.kind == "table") {
    std::vector<T> p;
    p.reserve(spec.numbers.size());
    for (const auto& s : spec.numbers) p.push_back(parse_number<T>(s));
    return OddsProblem<T>::from(std::move(p));
  }
  if (spec.kind == "constant") {
    if (spec.n < 1) {
      throw InputError("--constant needs a horizon --n >= 1");
    }
    std::vector<T> p(static_cast<std::size_t>(spec.n),
                     parse_number<T>(spec.constant_text));
    return OddsProblem<T>::from(std::move(p));
  }
  if (spec.kind == "secretary") {
    if (spec.n < 1) {
      throw InputError("--secretary needs a horizon >= 1");
    }
    return secretary_problem<T>(spec.n);
  }
  Schedule sched;
  sched.sizes = spec.sizes;
  return group_interview_problem<T>(sched);
}

template <class T>
Sequence<T> make_sequence(const ProblemSpec& spec) {
  if (spec.kind == "explicit" || spec.kind == "table") {
    std::vector<T> p;
    p.reserve(spec.numbers.size());
    for (const auto& s : spec.numbers) p.push_back(parse_number<T>(s));
    return Sequence<T>::explicit_list(std::move(p), Monotonicity::None,
                                      "table");
  }
  if (spec.kind == "constant") {
    return Sequence<T>::constant(parse_number<T>(spec.constant_text));
  }
  if (spec.kind == "secretary") {
    return Sequence<T>::secretary();
  }
  Schedule sched;
  sched.sizes = spec.sizes;
  return group_interview_sequence<T>(sched);
}

// Echo of the resolved input, normalized per mode so that re-running the
// echoed description reproduces every value byte for byte.
json spec_echo(const ProblemSpec& spec) {
  json j;
  j["kind"] = spec.kind;
  j["mode"] = spec.exact ? "exact" : "float";
  if (spec.kind == "explicit" || spec.kind == "table") {
    json arr = json::array();
    for (const auto& s : spec.numbers) {
      if (spec.exact) {
        arr.push_back(format_rational(parse_rational(s)));
      } else {
        arr.push_back(parse_number<double>(s));
      }
    }
    j["p"] = std::move(arr);
  } else if (spec.kind == "constant") {
    if (spec.exact) {
      j["value"] = format_rational(parse_rational(spec.constant_text));
    } else {
      j["value"] = parse_number<double>(spec.constant_text);
    }
    if (spec.n > 0) j["n"] = spec.n;
  } else if (spec.kind == "secretary") {
    if (spec.n > 0) j["n"] = spec.n;
  } else {
    j["sizes"] = spec.sizes;
  }
  return j;
}

template <class T>
json value_json(const T& v) {
  if constexpr (ArithmeticTraits<T>::exact) {
    return json(format_rational(v));
  } else {
    return json(v);
  }
}

template <class T>
std::string value_human(const T& v) {
  std::ostringstream os;
  if constexpr (ArithmeticTraits<T>::exact) {
    os << format_rational(v) << " (~" << std::setprecision(6)
       << to_double(v) << ")";
  } else {
    os << std::setprecision(10) << v;
  }
  return os.str();
}

template <class T>
json solution_json(const ThresholdSolution<T>& sol) {
  json j;
  j["n"] = sol.n;
  j["threshold"] = sol.s;
  j["value"] = value_json(sol.value);
  j["value_decimal"] = ArithmeticTraits<T>::to_double_value(sol.value);
  j["dual_threshold"] = sol.dual_threshold;
  j["degenerate"] = sol.degenerate;
  return j;
}

// ---------------------------------------------------------------- solve --

template <class T>
int cmd_solve(const ProblemSpec& spec, bool as_json, std::ostream& out) {
  const auto prob = make_problem<T>(spec);
  const auto sol = solve(prob);
  if (as_json) {
    json j;
    j["command"] = "solve";
    j["mode"] = ArithmeticTraits<T>::mode_name;
    j["input"] = spec_echo(spec);
    j.update(solution_json(sol));
    out << j.dump(2) << "\n";
  } else {
    out << "mode: " << ArithmeticTraits<T>::mode_name << "\n"
        << "n: " << sol.n << "\n"
        << "threshold s: " << sol.s << "\n"
        << "value V(n): " << value_human(sol.value) << "\n"
        << "dual threshold: " << (sol.dual_threshold ? "yes" : "no") << "\n"
        << "degenerate: " << (sol.degenerate ? "yes" : "no") << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- sweep --

json n_star_json(const NStarResult& ns) {
  json j;
  j["n"] = ns.n;
  j["beyond_range"] = ns.beyond_range;
  return j;
}

template <class T>
int cmd_sweep(const ProblemSpec& spec, Index n_min, Index n_max, bool as_json,
              std::ostream& out) {
  const auto seq = make_sequence<T>(spec);
  const auto rep = value_sweep(seq, n_min, n_max);
  if (as_json) {
    json j;
    j["command"] = "sweep";
    j["mode"] = ArithmeticTraits<T>::mode_name;
    j["input"] = spec_echo(spec);
    j["n_min"] = rep.n_min;
    j["n_max"] = rep.n_max;
    j["n_star"] = n_star_json(rep.n_star);
    j["monotonicity"] = to_string(rep.monotonicity);
    json rows = json::array();
    for (const auto& sol : rep.solutions) rows.push_back(solution_json(sol));
    j["rows"] = std::move(rows);
    json cos = json::array();
    for (const auto& c : rep.coincidences) {
      json jc;
      jc["n"] = c.n;
      json reasons = json::array();
      for (auto r : c.reasons) reasons.push_back(to_string(r));
      jc["reasons"] = std::move(reasons);
      cos.push_back(std::move(jc));
    }
    j["coincidences"] = std::move(cos);
    j["dual_thresholds"] = rep.dual_thresholds;
    out << j.dump(2) << "\n";
  } else {
    out << "mode: " << ArithmeticTraits<T>::mode_name << "\n";
    out << std::setw(6) << "n" << std::setw(8) << "s(n)" << "  V(n)\n";
    for (const auto& sol : rep.solutions) {
      out << std::setw(6) << sol.n << std::setw(8) << sol.s << "  "
          << value_human(sol.value) << (sol.dual_threshold ? "  [dual]" : "")
          << (sol.degenerate ? "  [degenerate]" : "") << "\n";
    }
    out << "N*: " << rep.n_star.n
        << (rep.n_star.beyond_range ? " (or beyond the range)" : "") << "\n";
    out << "monotonicity: " << to_string(rep.monotonicity) << "\n";
    if (rep.coincidences.empty()) {
      out << "coincidences: none\n";
    } else {
      out << "coincidences:";
      for (const auto& c : rep.coincidences) {
        out << " n=" << c.n << "(";
        for (std::size_t i = 0; i < c.reasons.size(); ++i) {
          out << (i ? "," : "") << to_string(c.reasons[i]);
        }
        out << ")";
      }
      out << "\n";
    }
  }
  return 0;
}

// ------------------------------------------------------------- coincide --

template <class T>
int cmd_coincide(const ProblemSpec& spec, Index n_min, Index n_max,
                 bool as_json, std::ostream& out) {
  const auto seq = make_sequence<T>(spec);
  const auto found = detect_coincidences(seq, n_min, n_max);
  if (as_json) {
    json j;
    j["command"] = "coincide";
    j["mode"] = ArithmeticTraits<T>::mode_name;
    j["input"] = spec_echo(spec);
    j["n_min"] = n_min;
    j["n_max"] = n_max;
    json arr = json::array();
    for (const auto& c : found) {
      json jc;
      jc["n"] = c.n;
      json reasons = json::array();
      for (auto r : c.reasons) reasons.push_back(to_string(r));
      jc["reasons"] = std::move(reasons);
      arr.push_back(std::move(jc));
    }
    j["coincidences"] = std::move(arr);
    out << j.dump(2) << "\n";
  } else {
    if (found.empty()) {
      out << "no coincidences in " << n_min << ".." << n_max << "\n";
    } else {
      for (const auto& c : found) {
        out << "V(" << c.n + 1 << ") = V(" << c.n << ")  reasons:";
        for (auto r : c.reasons) out << " " << to_string(r);
        out << "\n";
      }
    }
  }
  return 0;
}

// ------------------------------------------------------------ secretary --

template <class T>
int cmd_secretary_solve(Index n, bool as_json, std::ostream& out) {
  ProblemSpec spec;
  spec.kind = "secretary";
  spec.n = n;
  spec.exact = ArithmeticTraits<T>::exact;
  return cmd_solve<T>(spec, as_json, out);
}

int cmd_secretary_certificate(Index n_max, bool as_json, std::ostream& out) {
  const auto rows = secretary_certificate(n_max);
  if (as_json) {
    json j;
    j["command"] = "secretary-certificate";
    j["mode"] = "exact";
    j["n_max"] = n_max;
    j["holds"] = true;
    json arr = json::array();
    for (const auto& row : rows) {
      json jr;
      jr["n"] = row.n;
      jr["threshold"] = row.threshold;
      jr["value"] = format_rational(row.value);
      jr["value_decimal"] = to_double(row.value);
      arr.push_back(std::move(jr));
    }
    j["rows"] = std::move(arr);
    out << j.dump(2) << "\n";
  } else {
    out << std::setw(6) << "n" << std::setw(8) << "s(n)" << "  V(n)\n";
    for (const auto& row : rows) {
      out << std::setw(6) << row.n << std::setw(8) << row.threshold << "  "
          << value_human(row.value) << "\n";
    }
    out << "strictly decreasing values and unique thresholds verified for 3.."
        << n_max << "\n";
  }
  return 0;
}

// ------------------------------------------------------------- schedule --

template <class T>
int cmd_schedule(Index total, Index days, const std::string& prefix_text,
                 const std::string& pool_text, bool free_pool,
                 std::uint64_t cap, bool as_json, std::ostream& out) {
  std::vector<Index> prefix;
  if (!prefix_text.empty()) prefix = parse_index_list(prefix_text);
  std::optional<std::vector<Index>> pool;
  if (!pool_text.empty() && free_pool) {
    throw InputError("--pool and --free are mutually exclusive");
  }
  if (!pool_text.empty()) pool = parse_index_list(pool_text);
  const auto best = best_schedule<T>(total, days, prefix, pool, cap);
  if (as_json) {
    json j;
    j["command"] = "schedule";
    j["mode"] = ArithmeticTraits<T>::mode_name;
    j["total"] = total;
    j["days"] = days;
    j["schedule"] = best.schedule.sizes;
    j["examined"] = best.examined;
    j.update(solution_json(best.solution));
    out << j.dump(2) << "\n";
  } else {
    out << "best schedule: (";
    for (std::size_t i = 0; i < best.schedule.sizes.size(); ++i) {
      out << (i ? "," : "") << best.schedule.sizes[i];
    }
    out << ")\n"
        << "value: " << value_human(best.solution.value) << "\n"
        << "threshold s: " << best.solution.s << "\n"
        << "candidates examined: " << best.examined << "\n";
  }
  return 0;
}

// --------------------------------------------------------------- oracle --

template <class T>
int cmd_oracle(const ProblemSpec& spec, Index cap, bool as_json,
               std::ostream& out, std::ostream& err) {
  const auto prob = make_problem<T>(spec);
  const auto sol = solve(prob);
  const auto dp = dp_value(prob);
  std::optional<EnumerationResult<T>> en;
  if (prob.n() <= cap) {
    en = enumerate_stopsets(prob, cap);
  }
  bool agree = ArithmeticTraits<T>::eq(dp.value, sol.value);
  if (en) {
    agree = agree && ArithmeticTraits<T>::eq(en->value, sol.value) &&
            en->threshold_attains;
  }
  if (as_json) {
    json j;
    j["command"] = "oracle";
    j["mode"] = ArithmeticTraits<T>::mode_name;
    j["input"] = spec_echo(spec);
    j["solve"] = solution_json(sol);
    j["dp"] = {{"value", value_json(dp.value)}};
    if (en) {
      j["enumeration"] = {{"value", value_json(en->value)},
                          {"best", en->best.indices},
                          {"threshold_attains", en->threshold_attains}};
    }
    j["agree"] = agree;
    out << j.dump(2) << "\n";
  } else {
    out << "solve: s = " << sol.s << ", V = " << value_human(sol.value) << "\n"
        << "dynamic program: V = " << value_human(dp.value) << "\n";
    if (en) {
      out << "enumeration over stop sets: V = " << value_human(en->value)
          << " (threshold form attains: "
          << (en->threshold_attains ? "yes" : "NO") << ")\n";
    } else {
      out << "enumeration skipped: n exceeds the cap " << cap << "\n";
    }
    out << "agreement: " << (agree ? "yes" : "NO") << "\n";
  }
  if (!agree) {
    err << "internal consistency failure: oracle values disagree with the "
           "solver\n";
    return 2;
  }
  return 0;
}

// ------------------------------------------------------------- simulate --

int cmd_simulate(const ProblemSpec& spec, Index threshold,
                 const std::string& stopset_text, bool adaptive,
                 std::uint64_t trials, std::uint64_t seed, unsigned workers,
                 bool as_json, std::ostream& out) {
  const int strategies = (threshold > 0) + !stopset_text.empty() + adaptive;
  if (strategies != 1) {
    throw InputError(
        "specify exactly one of --threshold, --stopset, --adaptive");
  }
  const auto prob = make_problem<double>(spec);
  SimConfig config;
  config.trials = trials;
  config.seed = seed;
  config.workers = workers;

  json j;
  j["command"] = "simulate";
  j["mode"] = "float";
  {
    ProblemSpec echoed = spec;
    echoed.exact = false;  // simulation always samples doubles
    j["input"] = spec_echo(echoed);
  }
  j["trials"] = trials;
  j["seed"] = seed;

  SimResult result;
  if (adaptive) {
    const auto adaptive_result =
        adaptive_simulate(prob.probabilities(), smoothed_running_mean(), config);
    result = adaptive_result.result;
    j["strategy"] = {{"kind", "adaptive"}};
    j["optimal_value"] = adaptive_result.optimal_value;
    j["gap"] = adaptive_result.gap;
  } else if (threshold > 0) {
    result = simulate(prob, ThresholdStrategy{threshold}, config);
    j["strategy"] = {{"kind", "threshold"}, {"threshold", threshold}};
  } else {
    StopSetStrategy strat;
    strat.set.indices = parse_index_list(stopset_text);
    result = simulate(prob, strat, config);
    j["strategy"] = {{"kind", "stop-set"}, {"indices", strat.set.indices}};
  }
  j["wins"] = result.wins;
  j["estimate"] = result.estimate;
  j["half_width"] = result.half_width;
  if (as_json) {
    out << j.dump(2) << "\n";
  } else {
    out << "trials: " << result.trials << "\n"
        << "wins: " << result.wins << "\n"
        << "estimate: " << std::setprecision(10) << result.estimate << "\n"
        << "95% half-width: " << result.half_width << "\n";
    if (adaptive) {
      out << "full-information value: " << j["optimal_value"].get<double>()
          << "\n";
    }
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"odds-algorithm toolkit: optimal stopping on the last success"};
  app.name("oddstop");
  app.require_subcommand(1);

  CommonOpts solve_opts;
  auto* solve_cmd = app.add_subcommand("solve", "solve one n-problem");
  add_problem_options(solve_cmd, solve_opts, false);

  CommonOpts sweep_opts;
  Index sweep_min = 1, sweep_max = 1;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "solve a range of horizons and analyze");
  add_problem_options(sweep_cmd, sweep_opts, true);
  sweep_cmd->add_option("--n-min", sweep_min, "smallest horizon")->required();
  sweep_cmd->add_option("--n-max", sweep_max, "largest horizon")->required();

  CommonOpts coincide_opts;
  Index coincide_min = 1, coincide_max = 1;
  auto* coincide_cmd = app.add_subcommand(
      "coincide", "find horizons with V(n+1) = V(n) and the reasons");
  add_problem_options(coincide_cmd, coincide_opts, true);
  coincide_cmd->add_option("--n-min", coincide_min, "smallest horizon")
      ->required();
  coincide_cmd->add_option("--n-max", coincide_max, "largest horizon")
      ->required();

  Index secretary_n = 0, certificate_n = 0;
  bool secretary_exact = false, secretary_json = false;
  auto* secretary_cmd =
      app.add_subcommand("secretary", "classical secretary problem");
  secretary_cmd->add_option("--n", secretary_n, "horizon to solve");
  secretary_cmd->add_option("--certificate", certificate_n,
                            "verify strict decrease and uniqueness up to this "
                            "horizon (exact)");
  secretary_cmd->add_flag("--exact", secretary_exact,
                          "exact rational arithmetic");
  secretary_cmd->add_flag("--json", secretary_json, "machine-readable output");

  Index sched_total = 0, sched_days = 0;
  std::string sched_prefix, sched_pool;
  bool sched_free = false, sched_exact = false, sched_json = false;
  std::uint64_t sched_cap = kDefaultScheduleCap;
  auto* schedule_cmd = app.add_subcommand(
      "schedule", "best group-interview schedule under constraints");
  schedule_cmd->add_option("--total", sched_total, "total candidates")
      ->required();
  schedule_cmd->add_option("--days", sched_days, "number of groups")
      ->required();
  schedule_cmd->add_option("--prefix", sched_prefix, "fixed leading sizes");
  schedule_cmd->add_option("--pool", sched_pool,
                           "multiset of sizes for the remaining days");
  schedule_cmd->add_flag("--free", sched_free,
                         "search all positive compositions of the remainder");
  schedule_cmd->add_option("--cap", sched_cap, "candidate enumeration cap");
  schedule_cmd->add_flag("--exact", sched_exact, "exact rational arithmetic");
  schedule_cmd->add_flag("--json", sched_json, "machine-readable output");

  CommonOpts oracle_opts;
  Index oracle_cap = kDefaultEnumerationCap;
  auto* oracle_cmd = app.add_subcommand(
      "oracle", "cross-check the solver against independent oracles");
  add_problem_options(oracle_cmd, oracle_opts, false);
  oracle_cmd->add_option("--cap", oracle_cap, "stop-set enumeration cap");

  CommonOpts sim_opts;
  Index sim_threshold = 0;
  std::string sim_stopset;
  bool sim_adaptive = false;
  std::uint64_t sim_trials = 100'000, sim_seed = 1;
  unsigned sim_workers = 1;
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Monte Carlo check of a strategy");
  add_problem_options(simulate_cmd, sim_opts, false);
  simulate_cmd->add_option("--threshold", sim_threshold,
                           "threshold rule to play");
  simulate_cmd->add_option("--stopset", sim_stopset,
                           "comma-separated stop-set indices");
  simulate_cmd->add_flag("--adaptive", sim_adaptive,
                         "plug-in estimated odds strategy");
  simulate_cmd->add_option("--trials", sim_trials, "number of trials");
  simulate_cmd->add_option("--seed", sim_seed, "RNG seed");
  simulate_cmd->add_option("--workers", sim_workers,
                           "worker threads (does not affect results)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("oddstop");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(solve_cmd)) {
      const auto spec = resolve_spec(solve_opts, false);
      return spec.exact ? cmd_solve<Rational>(spec, solve_opts.as_json, out)
                        : cmd_solve<double>(spec, solve_opts.as_json, out);
    }
    if (app.got_subcommand(sweep_cmd)) {
      const auto spec = resolve_spec(sweep_opts, true);
      return spec.exact
                 ? cmd_sweep<Rational>(spec, sweep_min, sweep_max,
                                       sweep_opts.as_json, out)
                 : cmd_sweep<double>(spec, sweep_min, sweep_max,
                                     sweep_opts.as_json, out);
    }
    if (app.got_subcommand(coincide_cmd)) {
      const auto spec = resolve_spec(coincide_opts, true);
      return spec.exact
                 ? cmd_coincide<Rational>(spec, coincide_min, coincide_max,
                                          coincide_opts.as_json, out)
                 : cmd_coincide<double>(spec, coincide_min, coincide_max,
                                        coincide_opts.as_json, out);
    }
    if (app.got_subcommand(secretary_cmd)) {
      if ((secretary_n > 0) == (certificate_n > 0)) {
        throw InputError("specify exactly one of --n or --certificate");
      }
      if (certificate_n > 0) {
        return cmd_secretary_certificate(certificate_n, secretary_json, out);
      }
      return secretary_exact
                 ? cmd_secretary_solve<Rational>(secretary_n, secretary_json,
                                                 out)
                 : cmd_secretary_solve<double>(secretary_n, secretary_json,
                                               out);
    }
    if (app.got_subcommand(schedule_cmd)) {
      return sched_exact
                 ? cmd_schedule<Rational>(sched_total, sched_days,
                                          sched_prefix, sched_pool, sched_free,
                                          sched_cap, sched_json, out)
                 : cmd_schedule<double>(sched_total, sched_days, sched_prefix,
                                        sched_pool, sched_free, sched_cap,
                                        sched_json, out);
    }
    if (app.got_subcommand(oracle_cmd)) {
      const auto spec = resolve_spec(oracle_opts, false);
      return spec.exact
                 ? cmd_oracle<Rational>(spec, oracle_cap, oracle_opts.as_json,
                                        out, err)
                 : cmd_oracle<double>(spec, oracle_cap, oracle_opts.as_json,
                                      out, err);
    }
    if (app.got_subcommand(simulate_cmd)) {
      const auto spec = resolve_spec(sim_opts, false);
      return cmd_simulate(spec, sim_threshold, sim_stopset, sim_adaptive,
                          sim_trials, sim_seed, sim_workers, sim_opts.as_json,
                          out);
    }
    throw InputError("no subcommand given");
  } catch (const InternalCheckError& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace oddstop
