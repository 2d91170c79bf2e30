// airnet: train, evaluate and simulate the learned UAV data-collection auction.
//
// Exit codes: 0 success, 2 invalid config or input, 3 runtime failure.

#include "airnet/checkpoint.hpp"
#include "airnet/config.hpp"
#include "airnet/episode_io.hpp"
#include "airnet/errors.hpp"
#include "airnet/experiments.hpp"
#include "airnet/rng.hpp"
#include "airnet/sim.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace {

using namespace airnet;

constexpr int kExitInvalid = 2;
constexpr int kExitRuntime = 3;

// Evaluation profiles come from their own stream so they never coincide
// with training batches drawn under the same seed.
constexpr std::uint64_t kEvalStream = 0xe7a1;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string checkpoint;
  std::vector<std::string> overrides;
};

void add_common(CLI::App *cmd, CommonOptions &o) {
  cmd->add_option("--config", o.config_path, "key=value configuration file");
  cmd->add_option("--seed", o.seed, "master seed (training and world)");
  cmd->add_option("--set", o.overrides,
                  "override a configuration key, KEY=VALUE (repeatable)");
}

struct Resolved {
  ExperimentConfig config;
  std::set<std::string> explicit_keys;
};

// Config file first, then --set overrides, then dedicated flags.
Resolved resolve(const CommonOptions &o,
                 const std::vector<Setting> &flag_settings) {
  Resolved r;
  std::vector<Setting> settings;
  if (!o.config_path.empty())
    settings = read_settings(o.config_path);
  for (const std::string &kv : o.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw InvalidConfig("--set expects KEY=VALUE, got '" + kv + "'");
    settings.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.seed)
    settings.emplace_back("seed", std::to_string(*o.seed));
  settings.insert(settings.end(), flag_settings.begin(), flag_settings.end());
  apply_settings(r.config, settings);
  for (const auto &s : settings)
    r.explicit_keys.insert(s.first);
  return r;
}

bool any_of(const std::set<std::string> &keys,
            std::initializer_list<const char *> names) {
  for (const char *n : names)
    if (keys.count(n))
      return true;
  return false;
}

// Loads a checkpoint; dimensions are enforced only when the user pinned them.
Checkpoint load_checkpoint(const std::string &path, const Resolved &r) {
  if (path.empty())
    throw InvalidConfig("--checkpoint is required");
  std::optional<NetShape> expected;
  if (any_of(r.explicit_keys, {"n_bidders", "groups", "linear_units"}))
    expected = NetShape{r.config.net.n_bidders, r.config.net.groups,
                        r.config.net.units};
  return load_params(path, expected);
}

ValuationDistribution evaluation_distribution(const Resolved &r,
                                              const Checkpoint &ckpt) {
  if (any_of(r.explicit_keys, {"dist_lower", "dist_upper"}))
    return r.config.distribution;
  return ckpt.distribution;
}

// --out wins over the `output` config key, which wins over the default.
std::string output_path(const CommonOptions &o, const ExperimentConfig &cfg,
                        const char *fallback) {
  if (!o.out.empty())
    return o.out;
  if (!cfg.output_path.empty())
    return cfg.output_path.string();
  return fallback;
}

std::ofstream open_output(const std::string &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot write " + path);
  return out;
}

void print_report(const RevenueReport &rep) {
  std::printf("samples: %zu\n", rep.samples);
  std::printf("  DLA     mean %.6f  stddev %.6f\n", rep.dla.mean, rep.dla.stddev);
  std::printf("  SPA     mean %.6f  stddev %.6f\n", rep.spa.mean, rep.spa.stddev);
  std::printf("  Myerson mean %.6f  stddev %.6f\n", rep.myerson.mean,
              rep.myerson.stddev);
}

int cmd_train(const CommonOptions &o, std::optional<std::size_t> iterations,
              std::string trace_path) {
  std::vector<Setting> flags;
  if (iterations)
    flags.emplace_back("iterations", std::to_string(*iterations));
  Resolved r = resolve(o, flags);
  ExperimentConfig &cfg = r.config;
  cfg.validate();
  const std::string out = output_path(o, cfg, "airnet.ckpt");
  if (trace_path.empty())
    trace_path = out + ".trace.csv";

  const int threads = threads_from_env();
  const TrainResult result = train(cfg.net, cfg.distribution, threads);

  Checkpoint ckpt{result.params, cfg.net.kappa, cfg.net.seed,
                  result.trace.losses.size(), cfg.distribution};
  save_params(out, ckpt);
  std::ofstream trace = open_output(trace_path);
  trace << "iteration,loss\n";
  for (std::size_t i = 0; i < result.trace.losses.size(); ++i)
    trace << i << ',' << format_real(result.trace.losses[i]) << '\n';
  if (!trace.flush())
    throw IoError("failed writing " + trace_path);

  std::printf("iterations: %zu%s\n", result.trace.losses.size(),
              result.trace.converged_at ? " (converged)" : "");
  std::printf("final loss: %.6f\n", result.trace.final_loss);
  std::printf("checkpoint: %s\ntrace: %s\n", out.c_str(), trace_path.c_str());
  print_report(evaluate_revenue(result.params, cfg.distribution,
                                cfg.test_samples,
                                sub_seed(cfg.net.seed, kEvalStream), threads));
  return 0;
}

int cmd_revenue_gap(const CommonOptions &o, std::optional<std::size_t> cases,
                    bool svg) {
  std::vector<Setting> flags;
  if (cases)
    flags.emplace_back("cases", std::to_string(*cases));
  Resolved r = resolve(o, flags);
  r.config.validate();
  const Checkpoint ckpt = load_checkpoint(o.checkpoint, r);
  const ValuationDistribution dist = evaluation_distribution(r, ckpt);
  const std::string out = output_path(o, r.config, "revenue_gap.csv");

  std::vector<ExperimentRecord> records =
      revenue_gap(ckpt.params, dist, r.config.cases,
                  sub_seed(r.config.net.seed, kEvalStream), threads_from_env());
  sort_by_gap(records);
  {
    std::ofstream csv = open_output(out);
    write_gap_csv(csv, records);
    if (!csv.flush())
      throw IoError("failed writing " + out);
  }
  if (svg) {
    const std::string svg_path = out + ".svg";
    std::ofstream s = open_output(svg_path);
    write_gap_svg(s, records);
    std::printf("svg: %s\n", svg_path.c_str());
  }
  const GapSummary sum = summarize(records);
  std::printf("cases: %zu  distribution: U[%g, %g]\n", records.size(),
              dist.lower, dist.upper);
  std::printf("mean DLA revenue: %.6f\nmean SPA revenue: %.6f\n", sum.mean_dla,
              sum.mean_spa);
  std::printf("mean gap: %.6f\npositive gaps: %.4f\n", sum.mean_gap,
              sum.positive_fraction);
  std::printf("csv: %s\n", out.c_str());
  return 0;
}

int cmd_simulate(const CommonOptions &o, std::string mechanism,
                 std::optional<std::size_t> max_rounds,
                 const std::string &events_path) {
  std::vector<Setting> flags;
  if (max_rounds)
    flags.emplace_back("max_rounds", std::to_string(*max_rounds));
  Resolved r = resolve(o, flags);
  ExperimentConfig &cfg = r.config;

  if (mechanism.empty())
    mechanism = o.checkpoint.empty() ? "spa" : "dla";
  Mechanism mech = SecondPrice{};
  if (mechanism == "dla") {
    const Checkpoint ckpt = load_checkpoint(o.checkpoint, r);
    if (!r.explicit_keys.count("world.devices"))
      cfg.world.devices = ckpt.params.n_bidders;
    if (cfg.world.devices != ckpt.params.n_bidders)
      throw CheckpointError(CheckpointError::Kind::DimensionMismatch,
                            "checkpoint has " +
                                std::to_string(ckpt.params.n_bidders) +
                                " bidders but the world has " +
                                std::to_string(cfg.world.devices) + " devices");
    if (!any_of(r.explicit_keys, {"dist_lower", "dist_upper"}))
      cfg.world.distribution = ckpt.distribution;
    mech = LearnedAuction{ckpt.params};
  } else if (mechanism != "spa") {
    throw InvalidConfig("--mechanism must be dla or spa");
  }
  if (any_of(r.explicit_keys, {"dist_lower", "dist_upper"}))
    cfg.world.distribution = cfg.distribution;
  cfg.validate();

  const WorldState world = generate_world(cfg.world);
  const std::vector<RoundRecord> log = run_episode(world, mech, cfg.max_rounds);

  const std::string out = output_path(o, cfg, "episode.csv");
  {
    std::ofstream csv = open_output(out);
    write_episode_csv(csv, log);
    if (!csv.flush())
      throw IoError("failed writing " + out);
  }
  if (!events_path.empty()) {
    std::ofstream ev = open_output(events_path);
    write_event_stream(ev, log);
  }

  double revenue = 0.0, flown = 0.0;
  std::size_t sales = 0;
  for (const RoundRecord &rec : log) {
    revenue += rec.outcome.revenue;
    flown += rec.distance_flown;
    sales += rec.outcome.winner ? 1 : 0;
  }
  std::printf("mechanism: %s\nrounds completed: %zu (sales %zu)\n",
              mechanism.c_str(), log.size(), sales);
  std::printf("total revenue: %.6f\ndistance flown: %.3f m\n", revenue, flown);
  std::printf("csv: %s\n", out.c_str());
  return 0;
}

int cmd_eval(const CommonOptions &o, std::optional<std::size_t> samples) {
  std::vector<Setting> flags;
  if (samples)
    flags.emplace_back("test_samples", std::to_string(*samples));
  Resolved r = resolve(o, flags);
  r.config.validate();
  const Checkpoint ckpt = load_checkpoint(o.checkpoint, r);
  const ValuationDistribution dist = evaluation_distribution(r, ckpt);
  std::printf("distribution: U[%g, %g]\n", dist.lower, dist.upper);
  print_report(evaluate_revenue(ckpt.params, dist, r.config.test_samples,
                                sub_seed(r.config.net.seed, kEvalStream),
                                threads_from_env()));
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Learned optimal auction for UAV surveillance data collection"};
  app.require_subcommand(1);

  CommonOptions train_o, gap_o, sim_o, eval_o;
  std::optional<std::size_t> iterations, cases, max_rounds, samples;
  std::string trace_path, mechanism, events_path;
  bool svg = false;

  auto *train_cmd = app.add_subcommand("train", "train the monotone networks");
  add_common(train_cmd, train_o);
  train_cmd->add_option("--out", train_o.out, "checkpoint path (airnet.ckpt)");
  train_cmd->add_option("--trace", trace_path, "loss trace CSV path");
  train_cmd->add_option("--iterations", iterations, "training iterations");

  auto *gap_cmd = app.add_subcommand("revenue-gap", "sorted DLA - SPA revenue gaps");
  add_common(gap_cmd, gap_o);
  gap_cmd->add_option("--checkpoint", gap_o.checkpoint, "trained checkpoint")->required();
  gap_cmd->add_option("--out", gap_o.out, "gap CSV path (revenue_gap.csv)");
  gap_cmd->add_option("--cases", cases, "number of experiment cases");
  gap_cmd->add_flag("--svg", svg, "also write <out>.svg");

  auto *sim_cmd = app.add_subcommand("simulate", "run one data-collection episode");
  add_common(sim_cmd, sim_o);
  sim_cmd->add_option("--checkpoint", sim_o.checkpoint, "trained checkpoint (dla)");
  sim_cmd->add_option("--mechanism", mechanism, "dla or spa")
      ->check(CLI::IsMember({"dla", "spa"}));
  sim_cmd->add_option("--out", sim_o.out, "episode CSV path (episode.csv)");
  sim_cmd->add_option("--events", events_path, "newline-delimited JSON event log");
  sim_cmd->add_option("--max-rounds", max_rounds, "round limit");

  auto *eval_cmd = app.add_subcommand("eval", "revenue report for a checkpoint");
  add_common(eval_cmd, eval_o);
  eval_cmd->add_option("--checkpoint", eval_o.checkpoint, "trained checkpoint")->required();
  eval_cmd->add_option("--samples", samples, "number of sampled profiles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*train_cmd)
      return cmd_train(train_o, iterations, trace_path);
    if (*gap_cmd)
      return cmd_revenue_gap(gap_o, cases, svg);
    if (*sim_cmd)
      return cmd_simulate(sim_o, mechanism, max_rounds, events_path);
    if (*eval_cmd)
      return cmd_eval(eval_o, samples);
  } catch (const InvalidInput &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const DomainError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const CheckpointError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitInvalid;
}
