// Command-line front end. Every subcommand prints one JSON report.
// Exit codes: 0 ok, 1 negative decision, 2 usage or input error, 3 size guard.

#include <chrono>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "rds/chain.hpp"
#include "rds/construct.hpp"
#include "rds/io.hpp"
#include "rds/oracle.hpp"

namespace {

using rds::ErrorCode;
using rds::io::Json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTooLarge:
    case ErrorCode::kTooManyStates:
      return 3;
    case ErrorCode::kNotGraphical:
      return 1;
    default:
      return 2;
  }
}

struct Options {
  std::string instance;
  std::string from;
  std::string to;
  std::uint64_t seed = 1;
  long steps = 1000;
  long burn_in = -1;
  long samples = 1000;
  int max_states = rds::kDefaultMaxStates;
  int max_delta = rds::kDefaultMaxDelta;
  int max_chords = rds::kDefaultMaxChords;
  int threads = 1;
  std::string format = "json";
  bool exact = false;
  bool approx = false;
  bool exact_probabilities = false;
};

// Degree feasibility is a graphicality question, answered by each command;
// only `check` reports it as a validation outcome.
rds::InstancePtr load(const Options& o) {
  return rds::make_instance(rds::io::load_instance(o.instance), rds::Validation::kStructural);
}

Json bench(const Options& o) {
  const auto inst = load(o);
  const auto start = rds::greedy_construct(inst);
  if (!start) throw rds::Error(ErrorCode::kNotGraphical, "instance has no realization");
  Json j;
  j["schema"] = rds::io::kSchema;
  j["command"] = "bench";
  j["config"] = {{"seed", o.seed}, {"steps", o.steps}};
  rds::ChainState state{*start, 0, rds::Rng(o.seed)};
  long moved = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (long i = 0; i < o.steps; ++i) moved += rds::propose_step(state).moved ? 1 : 0;
  const auto t1 = std::chrono::steady_clock::now();
  const double secs = std::chrono::duration<double>(t1 - t0).count();
  j["moves_accepted"] = moved;
  j["final"] = rds::io::realization_json(state.current);
  // Timings go to stderr so the report itself stays reproducible.
  std::cerr << "proposals_per_second " << (secs > 0 ? static_cast<double>(o.steps) / secs : 0.0) << "\n";
  try {
    const auto k0 = std::chrono::steady_clock::now();
    const auto kernel = rds::exact_kernel(inst, o.max_states);
    const auto k1 = std::chrono::steady_clock::now();
    j["kernel_states"] = kernel.states.size();
    std::cerr << "kernel_seconds " << std::chrono::duration<double>(k1 - k0).count() << "\n";
  } catch (const rds::Error& e) {
    j["kernel_skipped"] = e.what();
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Realizations of degree sequences with a forbidden star plus matching"};
  app.require_subcommand(1);
  Options o;

  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("instance", o.instance, "Instance JSON file")->required();
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json"}));
  };
  auto* check = app.add_subcommand("check", "Decide graphicality with the greedy algorithm");
  add_instance(check);
  auto* construct = app.add_subcommand("construct", "Build one realization greedily");
  add_instance(construct);
  auto* sample = app.add_subcommand("sample", "Draw realizations with the lazy chain");
  add_instance(sample);
  sample->add_option("--seed", o.seed);
  sample->add_option("--steps,--burn-in", o.burn_in, "Proposals per sample (default 20(|U|+|W|)^2)");
  sample->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
  auto* enumerate = app.add_subcommand("enumerate", "List every realization");
  add_instance(enumerate);
  enumerate->add_option("--max-chords", o.max_chords);
  auto* count = app.add_subcommand("count", "Count realizations");
  add_instance(count);
  auto* exact_flag = count->add_flag("--exact", o.exact);
  auto* approx_flag = count->add_flag("--approx", o.approx);
  exact_flag->excludes(approx_flag);
  count->add_flag("--exact-probabilities", o.exact_probabilities,
                  "Use enumerated branch probabilities in --approx");
  count->add_option("--seed", o.seed);
  count->add_option("--samples", o.samples, "Chains per level")->check(CLI::PositiveNumber);
  count->add_option("--burn-in", o.burn_in);
  count->add_option("--max-chords", o.max_chords);
  count->add_option("--threads", o.threads)->check(CLI::PositiveNumber);
  auto* distance = app.add_subcommand("distance", "Swap distance between two realizations");
  add_instance(distance);
  distance->add_option("--from", o.from, "Realization file or inline edge list")->required();
  distance->add_option("--to", o.to, "Realization file or inline edge list")->required();
  distance->add_option("--max-delta", o.max_delta);
  auto* kernel = app.add_subcommand("kernel", "Exact transition matrix of the chain");
  add_instance(kernel);
  kernel->add_option("--max-states", o.max_states);
  auto* audit = app.add_subcommand("audit-paths", "Audit canonical paths and auxiliary matrices");
  add_instance(audit);
  audit->add_option("--from", o.from);
  audit->add_option("--to", o.to);
  audit->add_option("--max-chords", o.max_chords);
  auto* convert = app.add_subcommand("convert-directed", "Bipartite representation of a directed instance");
  add_instance(convert);
  auto* bench_cmd = app.add_subcommand("bench", "Chain throughput and kernel build time");
  add_instance(bench_cmd);
  bench_cmd->add_option("--seed", o.seed);
  bench_cmd->add_option("--steps", o.steps);
  bench_cmd->add_option("--max-states", o.max_states);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    Json report;
    int rc = 0;
    if (check->parsed()) {
      report = rds::io::check_report(rds::io::load_instance(o.instance));
      rc = report["graphical"].get<bool>() ? 0 : 1;
    } else if (construct->parsed()) {
      report = rds::io::construct_report(load(o));
      rc = report["graphical"].get<bool>() ? 0 : 1;
    } else if (sample->parsed()) {
      const auto inst = load(o);
      const long burn = o.burn_in < 0 ? rds::default_burn_in(*inst) : o.burn_in;
      report = rds::io::sample_report(inst, burn, o.samples, o.seed);
    } else if (enumerate->parsed()) {
      report = rds::io::enumerate_report(load(o), o.max_chords);
    } else if (count->parsed()) {
      if (!o.exact && !o.approx) {
        std::cerr << "count: pass --exact or --approx\n";
        return 2;
      }
      if (o.exact) {
        report = rds::io::exact_count_report(load(o), o.max_chords);
      } else {
        rds::CountOptions co;
        co.samples_per_level = o.samples;
        co.burn_in = o.burn_in;
        co.seed = o.seed;
        co.threads = o.threads;
        co.exact_probabilities = o.exact_probabilities;
        report = rds::io::approx_count_report(load(o), co);
        rc = report["graphical"].get<bool>() ? 0 : 1;
      }
    } else if (distance->parsed()) {
      const auto inst = load(o);
      report = rds::io::distance_report(rds::io::load_realization(inst, o.from),
                                        rds::io::load_realization(inst, o.to), o.max_delta);
    } else if (kernel->parsed()) {
      report = rds::io::kernel_report(load(o), o.max_states);
    } else if (audit->parsed()) {
      const auto inst = load(o);
      if (o.from.empty() != o.to.empty()) {
        std::cerr << "audit-paths: give both --from and --to, or neither\n";
        return 2;
      }
      report = o.from.empty() ? rds::io::audit_report(inst, o.max_chords)
                              : rds::io::audit_pair_report(rds::io::load_realization(inst, o.from),
                                                           rds::io::load_realization(inst, o.to),
                                                           o.max_chords);
      rc = report["theta_ok"].get<bool>() && report["omega_ok"].get<bool>() ? 0 : 1;
    } else if (convert->parsed()) {
      report = rds::io::convert_directed_report(rds::io::load_instance(o.instance));
    } else if (bench_cmd->parsed()) {
      report = bench(o);
    }
    std::cout << rds::io::dump(report);
    return rc;
  } catch (const rds::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
