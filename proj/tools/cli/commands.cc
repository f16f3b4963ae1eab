// Copyright 2026 The commonlines Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/commands.h"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cli/reproduce.h"
#include "cli/scenario.h"
#include "cli/svg.h"
#include "cli/sweep.h"
#include "commonlines/characterization.h"
#include "commonlines/cost.h"
#include "commonlines/error.h"

namespace commonlines::cli {
namespace {

struct Options {
  std::string config;
  std::optional<double> demand;
  std::optional<double> from;
  std::optional<double> to;
  std::optional<int> steps;
  std::string out_csv;
  std::string out_svg;
  std::string which;
};

std::string G6(double v) { return fmt::format("{:.6g}", v); }

int Solve(const Options& opt, std::ostream& out) {
  const ScenarioConfig config = LoadScenario(opt.config);
  const Network network = BuildNetwork(config);
  const std::optional<double> demand = opt.demand ? opt.demand : config.demand;
  if (!demand) throw ConfigError("no demand given");
  const CostReport c = EvaluateCosts(network, *demand);
  const std::vector<double> ue = network.ToInputOrder(c.equilibrium.flows);
  const std::vector<double> so = network.ToInputOrder(c.optimum.flows);
  out << "demand " << G6(c.demand) << '\n';
  out << fmt::format("{:<6}{:>12}{:>12}\n", "line", "v_ue", "v_so");
  for (std::size_t i = 0; i < ue.size(); ++i) {
    out << fmt::format("{:<6}{:>12}{:>12}\n", i + 1, G6(ue[i]), G6(so[i]));
  }
  out << "wsc " << G6(c.wardrop_cost) << '\n';
  out << "osc " << G6(c.optimal_cost) << '\n';
  out << "poa " << G6(c.price_of_anarchy) << '\n';
  return kExitOk;
}

int ThresholdsCommand(const Options& opt, std::ostream& out,
                      std::ostream& err) {
  const Network network = BuildNetwork(LoadScenario(opt.config));
  if (network.size() != 2) {
    err << "thresholds needs exactly two lines, got " << network.size()
        << '\n';
    return kExitUnsupportedShape;
  }
  const ThresholdReport t = Thresholds(network);
  out << "l_so " << G6(t.lower_optimum) << '\n';
  out << "u_so " << G6(t.upper_optimum) << '\n';
  out << "l_w " << G6(t.lower_equilibrium) << '\n';
  out << "u_w " << G6(t.upper_equilibrium) << '\n';
  out << "alpha_so "
      << (t.alpha_optimum ? G6(*t.alpha_optimum) : std::string("none"))
      << '\n';
  out << "alpha_w "
      << (t.alpha_equilibrium ? G6(*t.alpha_equilibrium)
                              : std::string("none"))
      << '\n';
  return kExitOk;
}

int SweepCommand(const Options& opt, std::ostream& out) {
  const ScenarioConfig config = LoadScenario(opt.config);
  const Network network = BuildNetwork(config);
  SweepRange range;
  if (config.sweep) range = *config.sweep;
  if (!config.sweep && !(opt.from && opt.to && opt.steps)) {
    throw ConfigError("sweep needs --from, --to and --steps or a config sweep");
  }
  if (opt.from) range.from = *opt.from;
  if (opt.to) range.to = *opt.to;
  if (opt.steps) range.steps = *opt.steps;
  ValidateSweep(network, range);

  std::ofstream csv(opt.out_csv, std::ios::binary);
  if (!csv) throw IoError("cannot write " + opt.out_csv);
  std::ofstream svg;
  if (!opt.out_svg.empty()) {
    svg.open(opt.out_svg, std::ios::binary);
    if (!svg) throw IoError("cannot write " + opt.out_svg);
  }

  const std::vector<SweepRow> rows = RunSweep(network, range);
  WriteCsv(csv, rows, network.size());
  if (!csv.flush()) throw IoError("write failed for " + opt.out_csv);
  if (svg.is_open()) {
    svg << RenderSweepSvg(rows);
    if (!svg.flush()) throw IoError("write failed for " + opt.out_svg);
  }
  out << "wrote " << rows.size() << " rows to " << opt.out_csv << '\n';
  return kExitOk;
}

int ReproduceCommand(const Options& opt, std::ostream& out,
                     std::ostream& err) {
  const std::optional<ReproductionReport> report = Reproduce(opt.which);
  if (!report) {
    err << "unknown dataset '" << opt.which << "', expected a or b\n";
    return kExitInvalidConfig;
  }
  PrintReport(out, *report);
  return report->passed() ? kExitOk : kExitFailure;
}

int ExitFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kInfeasibleDemand:
    case ErrorCode::kSaturatedFlow:
      return kExitInfeasibleDemand;
    case ErrorCode::kUnsupported:
      return kExitUnsupportedShape;
    case ErrorCode::kInvalidModel:
    case ErrorCode::kDomain:
      return kExitInvalidConfig;
    default:
      return kExitFailure;
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Common-lines transit assignment solver", "commonlines"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* solve = app.add_subcommand("solve", "equilibrium and optimum at one demand");
  solve->add_option("--config", opt.config, "scenario JSON")->required();
  solve->add_option("--demand", opt.demand, "passengers per hour");

  CLI::App* thresholds =
      app.add_subcommand("thresholds", "demand thresholds of a two-line stop");
  thresholds->add_option("--config", opt.config, "scenario JSON")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "CSV over a demand range");
  sweep->add_option("--config", opt.config, "scenario JSON")->required();
  sweep->add_option("--from", opt.from, "first demand");
  sweep->add_option("--to", opt.to, "last demand");
  sweep->add_option("--steps", opt.steps, "number of demands");
  sweep->add_option("--out", opt.out_csv, "CSV path")->required();
  sweep->add_option("--svg", opt.out_svg, "optional SVG chart path");

  CLI::App* reproduce =
      app.add_subcommand("reproduce", "check the built-in datasets");
  reproduce->add_option("which", opt.which, "a or b")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitInvalidConfig;
  }

  try {
    if (solve->parsed()) return Solve(opt, out);
    if (thresholds->parsed()) return ThresholdsCommand(opt, out, err);
    if (sweep->parsed()) return SweepCommand(opt, out);
    if (reproduce->parsed()) return ReproduceCommand(opt, out, err);
  } catch (const ConfigError& e) {
    err << "invalid config: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    const int code = ExitFor(e);
    if (code == kExitInfeasibleDemand) err << "infeasible demand: ";
    err << e.what() << '\n';
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

int Main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return Run(args, std::cout, std::cerr);
}

}  // namespace commonlines::cli
