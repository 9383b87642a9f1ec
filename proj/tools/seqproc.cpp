// Copyright 2026 The seqproc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: target generation, sampling, bounds, exact search,
// encoding, annealing and the matrix applications.

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seqproc/annealer.hpp"
#include "seqproc/apps.hpp"
#include "seqproc/bounds.hpp"
#include "seqproc/classical.hpp"
#include "seqproc/io.hpp"
#include "seqproc/pbo.hpp"
#include "seqproc/quantum.hpp"

namespace {

using namespace seqproc;

constexpr int kExitContract = 2;
constexpr int kExitSizeGuard = 3;
constexpr int kExitIo = 4;
constexpr int kExitCertificateFailed = 1;

struct Globals {
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string out;
};

std::optional<ProcessorKind> kind_of(const std::string &name) {
  if (name == "qubit3" || name == "qutrit3" || name == "qutrit4") return parse_processor_kind(name);
  return std::nullopt;
}

TargetFunction load_target(const std::string &name, SignConvention convention = SignConvention::kFirstBasisNegative) {
  if (auto kind = kind_of(name)) return generate_target(make_processor(*kind), convention);
  return target_from_json(parse_json(read_file(name)));
}

std::string format_double(double v, int digits = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string describe(const Rational &r) {
  return to_string(r) + " = " + format_double(boost::rational_cast<double>(r));
}

void emit(const Globals &g, const std::string &content) {
  if (g.out.empty()) {
    std::cout << content;
  } else {
    write_file(g.out, content);
  }
}

BoundCertificate certify(ProcessorKind kind, const TargetFunction &target) {
  switch (kind) {
    case ProcessorKind::kQubit3: return certify_qubit3(target);
    case ProcessorKind::kQutrit3: return certify_qutrit3(target);
    case ProcessorKind::kQutrit4: return certify_qutrit4(target);
  }
  throw ContractError("unknown processor kind");
}

ReferenceStrategy reference_of(ProcessorKind kind) {
  switch (kind) {
    case ProcessorKind::kQubit3: return ReferenceStrategy::kBit3;
    case ProcessorKind::kQutrit3: return ReferenceStrategy::kTrit3;
    case ProcessorKind::kQutrit4: return ReferenceStrategy::kTrit4;
  }
  throw ContractError("unknown processor kind");
}

// `m=TableI|TableII|TableIII|path`, 1-based module index.
std::pair<int, ModuleStrategy> parse_freeze(const std::string &text) {
  auto eq = text.find('=');
  if (eq == std::string::npos) throw ContractError("--freeze expects MODULE=SOURCE, got '" + text + "'");
  int module = 0;
  try {
    module = std::stoi(text.substr(0, eq));
  } catch (const std::exception &) {
    throw ContractError("bad module index in --freeze '" + text + "'");
  }
  const std::string source = text.substr(eq + 1);
  static const std::map<std::string, ReferenceStrategy> aliases{
      {"TableI", ReferenceStrategy::kBit3}, {"TableII", ReferenceStrategy::kTrit3}, {"TableIII", ReferenceStrategy::kTrit4}};
  StrategySet set = aliases.contains(source) ? reference_strategy(aliases.at(source))
                                             : strategies_from_json(parse_json(read_file(source)));
  if (module < 1 || module > set.topology().num_modules()) {
    throw ContractError("--freeze module " + std::to_string(module) + " is out of range");
  }
  return {module - 1, set.module(module - 1)};
}

struct ScheduleFlags {
  std::optional<double> initial;
  double final_temperature = 0.01;
  double cooling = 0.98;
  int sweeps = 2000;
  int restarts = 32;

  void add_to(CLI::App *cmd) {
    cmd->add_option("--t-initial", initial, "Initial temperature (estimated when omitted)");
    cmd->add_option("--t-final", final_temperature, "Final temperature")->capture_default_str();
    cmd->add_option("--cooling", cooling, "Geometric cooling factor per sweep")->capture_default_str();
    cmd->add_option("--sweeps", sweeps, "Sweeps per restart")->capture_default_str();
    cmd->add_option("--restarts", restarts, "Independent restarts")->capture_default_str();
  }

  Schedule build(const Globals &g) const {
    Schedule s;
    s.initial_temperature = initial;
    s.final_temperature = final_temperature;
    s.cooling = cooling;
    s.sweeps = sweeps;
    s.restarts = restarts;
    s.seed = g.seed;
    s.workers = g.workers;
    s.validate();
    return s;
  }
};

int run_gen_target(const Globals &g, const std::string &kind_name, const std::string &convention) {
  auto kind = kind_of(kind_name);
  if (!kind) throw ContractError("unknown processor '" + kind_name + "'");
  TargetFunction target = generate_target(make_processor(*kind), parse_sign_convention(convention));
  const int prefix = std::max(1, target.topology().total_bits() - 4);
  std::cout << to_string(*kind) << " target, " << convention << ", reshaped " << (1 << prefix) << "x"
            << (1 << (target.topology().total_bits() - prefix)) << ":\n"
            << render_matrix(reshape(target, prefix));
  if (!g.out.empty()) write_file(g.out, to_json(target).dump(2) + "\n");
  return 0;
}

int run_simulate(const Globals &g, const std::string &kind_name, std::size_t shots, std::size_t subset,
                 std::optional<double> visibility, const std::string &convention, const std::string &shot_log) {
  auto kind = kind_of(kind_name);
  if (!kind) throw ContractError("unknown processor '" + kind_name + "'");
  if (visibility && (*visibility < 0 || *visibility > 1)) throw ContractError("visibility must lie in [0, 1]");
  if (subset == 0 || shots < subset) throw ContractError("need at least one full subset of shots");
  const auto spec = make_processor(*kind);
  const auto sign = parse_sign_convention(convention);
  const TargetFunction target = generate_target(spec, sign);
  const auto records = sample_shots(spec, shots, g.seed, visibility, sign);
  const auto stats = subset_statistics(records, target, subset);

  std::ostringstream csv;
  csv << "subset_index,correlation\n";
  for (std::size_t i = 0; i < stats.correlations.size(); ++i) {
    csv << i << "," << format_double(stats.correlations[i], 6) << "\n";
  }
  csv << "mean,stderr,discard_rate\n"
      << format_double(stats.mean, 6) << "," << format_double(stats.standard_error, 6) << ","
      << format_double(stats.discard_rate(), 6) << "\n";
  emit(g, csv.str());
  if (!shot_log.empty()) {
    std::ostringstream log;
    write_shot_log(log, records);
    write_file(shot_log, log.str());
  }

  const auto cert = certify(*kind, generate_target(spec));
  const Rational limit = correlation_from_errors(target, cert.bound());
  const double gap = (stats.mean - boost::rational_cast<double>(limit)) / stats.standard_error;
  std::ostream &report = g.out.empty() ? std::cerr : std::cout;
  report << to_string(*kind) << ": quantum mean " << format_double(stats.mean) << " +- "
         << format_double(stats.standard_error) << " over " << stats.correlations.size() << " subsets; classical limit "
         << describe(limit) << " (" << cert.bound() << " errors); gap " << format_double(gap, 1)
         << " standard errors\n";
  return 0;
}

int run_bound(const Globals &g, const std::string &kind_name, const std::string &target_file) {
  auto kind = kind_of(kind_name);
  if (!kind) throw ContractError("unknown processor '" + kind_name + "'");
  const TargetFunction target =
      target_file.empty() ? generate_target(make_processor(*kind)) : load_target(target_file);
  const auto cert = certify(*kind, target);
  std::cout << render(cert);
  if (cert.pass) {
    std::cout << "lower bound " << cert.bound() << " errors => max classical correlation "
              << describe(correlation_from_errors(target, cert.bound())) << "\n";
  }
  if (!g.out.empty()) write_file(g.out, to_json(cert).dump(2) + "\n");
  return cert.pass ? 0 : kExitCertificateFailed;
}

int run_oracle(const Globals &g, const std::string &target_name, double budget) {
  const TargetFunction target = load_target(target_name);
  OracleOptions options;
  options.budget = budget;
  options.workers = g.workers;
  const auto result = exact_oracle(target, target.topology(), options);
  std::cout << "max correlation " << describe(result.max_correlation) << " (" << result.min_errors
            << " errors on support " << target.support_size() << ", " << result.strategies_scored
            << " canonical strategies scored)\n";
  if (!g.out.empty()) write_file(g.out, to_json(result.witness).dump(2) + "\n");
  return 0;
}

EncodedProblem build_problem(const TargetFunction &target, const std::string &encoding,
                             const std::vector<std::string> &freezes) {
  const auto &topology = target.topology();
  EncodedProblem problem =
      encode_correlation(target, topology, encoding.empty() ? default_encoding(topology) : parse_encoding(encoding));
  for (const auto &f : freezes) {
    auto [module, strategy] = parse_freeze(f);
    problem = freeze_module(problem, module, strategy);
  }
  return problem;
}

int run_encode(const Globals &g, const std::string &target_name, const std::string &encoding,
               const std::vector<std::string> &freezes, const std::string &format) {
  const TargetFunction target = load_target(target_name);
  const EncodedProblem problem = build_problem(target, encoding, freezes);
  std::ostringstream out;
  if (format == "pbo") {
    write_poly(out, problem.poly);
  } else if (format == "qubo") {
    write_qubo(out, quadratize(problem.poly));
  } else {
    throw ContractError("unknown format '" + format + "' (expected pbo or qubo)");
  }
  emit(g, out.str());
  std::ostream &report = g.out.empty() ? std::cerr : std::cout;
  report << problem.layout.num_vars() << " variables, degree " << problem.poly.degree() << ", "
         << problem.poly.terms().size() << " terms (" << to_string(problem.layout.encoding()) << ")\n";
  return 0;
}

int run_anneal(const Globals &g, const std::string &target_name, const std::string &poly_file,
               const std::string &encoding, const std::vector<std::string> &freezes, const std::string &method,
               const ScheduleFlags &flags) {
  const Schedule schedule = flags.build(g);
  AnnealResult result;
  std::optional<TargetFunction> target;
  if (!poly_file.empty()) {
    if (!target_name.empty()) throw ContractError("give either --target or --poly, not both");
    std::istringstream in(read_file(poly_file));
    result = anneal_poly(read_poly(in), schedule);
  } else {
    if (target_name.empty()) throw ContractError("anneal needs --target or --poly");
    target = load_target(target_name);
    if (method == "strategies") {
      if (!freezes.empty()) throw ContractError("--freeze applies to the polynomial method only");
      result = anneal_strategies(*target, target->topology(), schedule);
    } else if (method == "poly") {
      result = anneal_frozen(build_problem(*target, encoding, freezes), *target, schedule);
    } else {
      throw ContractError("unknown method '" + method + "' (expected poly or strategies)");
    }
  }
  std::cout << "best energy " << to_string(result.best_energy) << " (restart " << result.best_restart << " of "
            << schedule.restarts << ", " << format_double(result.wall_seconds, 2) << " s)\n";
  if (target && result.errors) {
    std::cout << *result.errors << " errors => correlation "
              << describe(correlation_from_errors(*target, *result.errors)) << "\n";
  }
  if (!g.out.empty()) write_file(g.out, anneal_report(result, schedule).dump(2) + "\n");
  return 0;
}

int run_matrix(const Globals &g, const std::string &file, std::size_t k, const std::string &method,
               const ScheduleFlags &flags, bool completion) {
  std::istringstream in(read_file(file));
  const SignMatrix matrix = read_matrix(in);
  const auto m = parse_approx_method(method);
  const Schedule schedule = flags.build(g);
  const LowRankResult result =
      completion ? complete(matrix, k, m, schedule) : lowrank_approx(matrix, k, m, schedule);
  std::ostringstream out;
  write_matrix(out, result.approximation);
  emit(g, out.str());
  std::ostream &report = g.out.empty() ? std::cerr : std::cout;
  report << "distance " << result.distance << " with " << result.centroids.rows() << " distinct rows (k=" << k
         << ", " << method << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"seqproc: sequential processors with limited communication"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read flags from a key-value configuration file");
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--workers", g.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output file");

  std::string kind, convention = "first-basis-negative", target_file, poly_file, encoding, format = "pbo",
                 method, shot_log, matrix_file;
  std::size_t shots = 85000, subset = 1000, k = 2;
  std::optional<double> visibility;
  double budget = OracleOptions{}.budget;
  std::vector<std::string> freezes;
  ScheduleFlags flags;

  auto *gen = app.add_subcommand("gen-target", "Generate a processor's target function");
  gen->add_option("kind", kind, "qubit3, qutrit3 or qutrit4")->required();
  gen->add_option("--convention", convention, "first-basis-negative or first-basis-positive")->capture_default_str();

  auto *sim = app.add_subcommand("simulate", "Sample detection events and per-subset correlations");
  sim->add_option("kind", kind, "qubit3, qutrit3 or qutrit4")->required();
  sim->add_option("--shots", shots, "Accepted detection events")->capture_default_str();
  sim->add_option("--subset", subset, "Events per subset")->capture_default_str();
  sim->add_option("--visibility", visibility, "Mix with white noise: p' = v p + (1 - v) / d");
  sim->add_option("--convention", convention, "Sign convention")->capture_default_str();
  sim->add_option("--shot-log", shot_log, "Write every event as word_index,outcome");

  auto *bnd = app.add_subcommand("bound", "Certify the classical lower bound on errors");
  bnd->add_option("kind", kind, "qubit3, qutrit3 or qutrit4")->required();
  bnd->add_option("--target", target_file, "Target file instead of the generated one");

  auto *orc = app.add_subcommand("oracle", "Exact optimum over deterministic classical strategies");
  orc->add_option("target", target_file, "Processor name or target file")->required();
  orc->add_option("--budget", budget, "Largest accepted work estimate")->capture_default_str();

  auto *enc = app.add_subcommand("encode", "Write the correlation polynomial");
  enc->add_option("target", target_file, "Processor name or target file")->required();
  enc->add_option("--encoding", encoding, "bit, trit-twobit or trit-onehot");
  enc->add_option("--freeze", freezes, "MODULE=TableI|TableII|TableIII|strategy file");
  enc->add_option("--format", format, "pbo or qubo")->capture_default_str();

  auto *ann = app.add_subcommand("anneal", "Simulated annealing on an encoded target or polynomial file");
  ann->add_option("--target", target_file, "Processor name or target file");
  ann->add_option("--poly", poly_file, "Polynomial file");
  ann->add_option("--encoding", encoding, "bit, trit-twobit or trit-onehot");
  ann->add_option("--freeze", freezes, "MODULE=TableI|TableII|TableIII|strategy file");
  ann->add_option("--method", method, "poly or strategies")->default_str("poly");
  flags.add_to(ann);

  auto *low = app.add_subcommand("lowrank", "Best approximation with at most k distinct rows");
  auto *cmp = app.add_subcommand("complete", "Fill unobserved entries with at most k distinct rows");
  for (auto *cmd : {low, cmp}) {
    cmd->add_option("matrix", matrix_file, "Matrix file (mat m n)")->required();
    cmd->add_option("-k,--k", k, "Distinct rows allowed")->capture_default_str();
    cmd->add_option("--method", method, "exact or anneal")->default_str("exact");
    flags.add_to(cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitContract;
  }

  try {
    if (*gen) return run_gen_target(g, kind, convention);
    if (*sim) return run_simulate(g, kind, shots, subset, visibility, convention, shot_log);
    if (*bnd) return run_bound(g, kind, target_file);
    if (*orc) return run_oracle(g, target_file, budget);
    if (*enc) return run_encode(g, target_file, encoding, freezes, format);
    if (*ann) return run_anneal(g, target_file, poly_file, encoding, freezes, method.empty() ? "poly" : method, flags);
    if (*low) return run_matrix(g, matrix_file, k, method.empty() ? "exact" : method, flags, false);
    if (*cmp) return run_matrix(g, matrix_file, k, method.empty() ? "exact" : method, flags, true);
  } catch (const SizeGuardError &e) {
    std::cerr << "size guard: " << e.what() << "\n";
    return kExitSizeGuard;
  } catch (const IoError &e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitContract;
  }
  return kExitContract;
}
