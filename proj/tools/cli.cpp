// Copyright 2026 The ghzlab Authors
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
#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ghzlab/audit.hpp"
#include "ghzlab/errors.hpp"
#include "ghzlab/ghzsim.hpp"
#include "ghzlab/json_format.hpp"
#include "ghzlab/protocol.hpp"
#include "ghzlab/qsim.hpp"

namespace ghzlab::cli {
namespace {

struct RunConfig {
  std::string command;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t receiver = 1;
  std::string secret = "plus";
  std::vector<std::size_t> subset;
  std::vector<double> thetas;
  std::uint64_t samples = 10000;
  std::size_t trials = 20;
  std::string output_path;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NamedSecret {
  std::string label;
  protocol::Secret secret;
};

// Preset name, or four comma-separated reals: re(alpha),im(alpha),re(beta),im(beta).
NamedSecret parse_secret(const std::string& text) {
  if (auto preset = protocol::Secret::preset(text)) return {text, *preset};
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw UsageError("bad number");
    } catch (const std::exception&) {
      throw UsageError("--secret: expected a preset (zero, one, plus, minus, i) or "
                       "four reals 'are,aim,bre,bim', got '" + text + "'");
    }
  }
  if (parts.size() != 4) throw UsageError("--secret: expected four comma-separated reals");
  try {
    return {"custom", protocol::Secret({parts[0], parts[1]}, {parts[2], parts[3]})};
  } catch (const ArgumentError& e) {
    throw UsageError(std::string("--secret: ") + e.what());
  }
}

Json header(const RunConfig& cfg) {
  return Json{{"version", kReportVersion}, {"command", cfg.command}};
}

Json secret_json(const NamedSecret& s) {
  return Json{{"label", s.label},
              {"alpha", Json::array({s.secret.alpha().real(), s.secret.alpha().imag()})},
              {"beta", Json::array({s.secret.beta().real(), s.secret.beta().imag()})}};
}

// Copies fields of a module report into the command report; the command
// header already carries the version.
void merge_into(Json& report, const Json& fields) {
  for (const auto& [key, value] : fields.items()) {
    if (key != "version") report[key] = value;
  }
}

// ------------------------------------------------------------------ commands

int cmd_share(const RunConfig& cfg, Json& report) {
  const NamedSecret s = parse_secret(cfg.secret);
  Rng rng(cfg.seed);
  const auto dealt = protocol::deal(s.secret, cfg.n, rng);
  report["secret"] = secret_json(s);
  merge_into(report, protocol::dealt_to_json(dealt, cfg.seed));
  return kSuccess;
}

int cmd_reconstruct(const RunConfig& cfg, Json& report) {
  const NamedSecret s = parse_secret(cfg.secret);
  const auto t = protocol::run_protocol(s.secret, cfg.n, cfg.receiver, cfg.seed);
  report["transcript"] = protocol::transcript_to_json(t);
  return kSuccess;
}

int cmd_demo(const RunConfig& cfg, Json& report) {
  const NamedSecret s = parse_secret(cfg.secret);
  auto t = protocol::run_protocol(s.secret, cfg.n, cfg.receiver, cfg.seed);
  const double f = qsim::fidelity(t.reconstructed, s.secret.state());
  t.fidelity_vs_secret = f;
  const auto check = audit::correctness_check(s.secret, cfg.n, cfg.receiver, cfg.trials, cfg.seed);
  const auto resources = protocol::qsscr_resources(cfg.n);

  const bool passed = f >= 1.0 - qsim::kEndToEndTol && check.min_fidelity >= 1.0 - qsim::kEndToEndTol &&
                      t.classical_bits_sent == resources.classical_bits;
  report["secret"] = secret_json(s);
  report["transcript"] = protocol::transcript_to_json(t);
  report["fidelity"] = f;
  report["correctness"] = Json{{"trials", cfg.trials}, {"min_fidelity", check.min_fidelity}};
  report["passed"] = passed;
  return passed ? kSuccess : kAssertionFailure;
}

int cmd_audit(const RunConfig& cfg, Json& report) {
  audit::AuditOptions options{cfg.n, cfg.seed, std::nullopt, 10, cfg.trials};
  if (!cfg.subset.empty()) options.subset = cfg.subset;
  const auto result = audit::run_audit(options);
  merge_into(report, audit::audit_report_to_json(result));
  return result.passed() ? kSuccess : kAssertionFailure;
}

int cmd_ghz_sim(const RunConfig& cfg, Json& report) {
  const ghzsim::AngleVector thetas(cfg.thetas);
  const auto stats = ghzsim::sample_parities(thetas, cfg.samples, cfg.seed);
  const double target = std::pow(std::cos(thetas.sum()), 2);
  const bool passed = std::isfinite(stats.z_score) && std::abs(stats.z_score) <= ghzsim::kZScoreGate;

  report["thetas"] = thetas.thetas();
  report["seed"] = cfg.seed;
  report["cos2_sum"] = target;
  merge_into(report, ghzsim::parity_stats_to_json(stats));
  report["z_gate"] = ghzsim::kZScoreGate;
  report["passed"] = passed;
  return passed ? kSuccess : kAssertionFailure;
}

int cmd_bounds(const RunConfig& cfg, Json& report) {
  const auto bound = ghzsim::lower_bound(cfg.n);
  const auto baseline = protocol::teleport_baseline_resources(cfg.n);
  const auto ours = protocol::qsscr_resources(cfg.n);
  const bool reduction = ghzsim::reduction_check(cfg.n);

  report["bound_report"] = ghzsim::bound_report_to_json(bound);
  report["reduction_check"] = reduction;
  report["teleport_baseline"] = Json{{"singlets", baseline.singlets}, {"total_qubits", baseline.total_qubits}};
  report["qsscr"] = Json{{"qubits", ours.qubits}, {"classical_bits", ours.classical_bits}};
  return reduction ? kSuccess : kAssertionFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (const char* env = std::getenv(std::string(qsim::kQubitCapEnvVar).c_str())) {
    if (!qsim::parse_qubit_cap(env)) {
      err << "error: " << qsim::kQubitCapEnvVar << " must be an integer in [1, " << qsim::kMaxQubitCap
          << "]\n";
      return kUsageError;
    }
  }

  RunConfig cfg;
  CLI::App app{"Simulation toolkit for cat-state secret sharing and entanglement-simulation bounds",
               "ghzlab"};
  app.require_subcommand(1);

  auto add_n = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--n", cfg.n, "Number of players / parties")->check(CLI::PositiveNumber);
    if (required) opt->required();
  };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", cfg.seed, "Generator seed"); };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", cfg.output_path, "Write the report here instead of stdout");
  };
  auto add_secret = [&](CLI::App* sub) {
    sub->add_option("--secret", cfg.secret, "Preset (zero, one, plus, minus, i) or 'are,aim,bre,bim'")
        ->capture_default_str();
  };
  auto add_receiver = [&](CLI::App* sub) {
    sub->add_option("--receiver", cfg.receiver, "Player who reconstructs the secret")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  auto add_trials = [&](CLI::App* sub) {
    sub->add_option("--trials", cfg.trials, "Protocol runs for the correctness check")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };

  auto* share = app.add_subcommand("share", "Deal shares of a secret and print the dealer's report");
  add_n(share, true);
  add_seed(share);
  add_secret(share);
  add_output(share);

  auto* reconstruct = app.add_subcommand("reconstruct", "Deal and reconstruct, printing the transcript");
  add_n(reconstruct, true);
  add_seed(reconstruct);
  add_secret(reconstruct);
  add_receiver(reconstruct);
  add_output(reconstruct);

  auto* demo = app.add_subcommand("demo", "Run the protocol and check the receiver's fidelity");
  add_n(demo, true);
  add_seed(demo);
  add_secret(demo);
  add_receiver(demo);
  add_trials(demo);
  add_output(demo);

  auto* audit_cmd = app.add_subcommand("audit", "Exact privacy and correctness audit");
  add_n(audit_cmd, true);
  add_seed(audit_cmd);
  audit_cmd->add_option("--subset", cfg.subset, "Comma-separated coalition, e.g. 1,2,3")->delimiter(',');
  add_trials(audit_cmd);
  add_output(audit_cmd);

  auto* ghz = app.add_subcommand("ghz-sim", "Parity statistics of the phased cat state");
  ghz->add_option("--thetas", cfg.thetas, "Comma-separated angles in radians")->delimiter(',')->required();
  ghz->add_option("--samples", cfg.samples, "Monte Carlo samples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_seed(ghz);
  add_output(ghz);

  auto* bounds = app.add_subcommand("bounds", "Communication lower bounds and resource counts");
  add_n(bounds, true);
  add_output(bounds);

  std::vector<const char*> argv{"ghzlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run 'ghzlab --help' for usage\n";
    return kUsageError;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  Json report = header(cfg);
  if (cfg.command != "ghz-sim") {
    report["n"] = cfg.n;
  }

  int status = kSuccess;
  try {
    if (cfg.command == "share") {
      status = cmd_share(cfg, report);
    } else if (cfg.command == "reconstruct") {
      status = cmd_reconstruct(cfg, report);
    } else if (cfg.command == "demo") {
      status = cmd_demo(cfg, report);
    } else if (cfg.command == "audit") {
      status = cmd_audit(cfg, report);
    } else if (cfg.command == "ghz-sim") {
      status = cmd_ghz_sim(cfg, report);
    } else {
      status = cmd_bounds(cfg, report);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const SizeError& e) {
    err << "refused: " << e.what() << "\n";
    if (cfg.command == "audit") {
      err << "the exhaustive audit enumerates every coalition; use --n " << audit::kMaxSweepPlayers
          << " or smaller\n";
    } else {
      err << "set " << qsim::kQubitCapEnvVar << " to raise the qubit cap (at most " << qsim::kMaxQubitCap
          << ")\n";
    }
    return kResourceRefusal;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  const std::string text = dump_report(report);
  if (cfg.output_path.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << cfg.output_path << " for writing\n";
      return kUsageError;
    }
    file << text;
  }
  return status;
}

}  // namespace ghzlab::cli
