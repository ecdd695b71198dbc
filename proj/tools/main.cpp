// Copyright 2026 The pushmpc Authors
//
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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pushmpc/experiment.hpp"
#include "pushmpc/number_format.hpp"
#include "pushmpc/parallel.hpp"

namespace {

using nlohmann::json;
using namespace pushmpc;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::string profile = "sim";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
  bool paper_scale = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON experiment config")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--profile", args.profile, "sim or realtime")
      ->check(CLI::IsMember({"sim", "realtime"}));
  cmd->add_option("--seed", args.seed, "master seed")->each([&](const std::string&) {
    args.seed_set = true;
  });
  cmd->add_option("--threads", args.threads, "worker threads (0 = hardware)")
      ->envname("PUSHMPC_THREADS");
  cmd->add_flag("--paper-scale", args.paper_scale,
                "full-scale budgets: 10 runs, population 128, 4 iterations");
}

ExperimentConfig build_config(const CommonArgs& args) {
  const Profile profile = args.profile == "realtime" ? Profile::kRealtime : Profile::kSim;
  ExperimentConfig config =
      args.config_path.empty() ? default_config(profile) : load_config(args.config_path);
  if (!args.config_path.empty()) config.profile = profile == Profile::kRealtime
                                                      ? Profile::kRealtime
                                                      : config.profile;
  if (args.seed_set) config.seed = args.seed;
  if (args.paper_scale) apply_paper_scale(config);
  config.validate();
  return config;
}

int resolve_threads(const CommonArgs& args) {
  return args.threads > 0 ? args.threads : default_thread_count();
}

PhysParams parse_params(const std::string& csv, const PhysParams& fallback) {
  if (csv.empty()) return fallback;
  double v[4];
  if (std::sscanf(csv.c_str(), "%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3]) != 4)
    throw std::runtime_error("--params expects four comma-separated values");
  return PhysParams(v[0], v[1], v[2], v[3]);
}

json params_json(const PhysParams& p) {
  return json{{"sliding", p.sliding},
              {"torsional", p.torsional},
              {"rolling", p.rolling},
              {"pusher_mass", p.pusher_mass}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar pushing MPC with few-shot physics parameter adaptation"};
  app.require_subcommand(1);

  CommonArgs experiment_args, episode_args, eval_args, replay_args;

  CLI::App* experiment_cmd =
      app.add_subcommand("experiment", "multi-run adaptation experiment");
  add_common(experiment_cmd, experiment_args);

  CLI::App* episode_cmd = app.add_subcommand("episode", "run one training episode");
  add_common(episode_cmd, episode_args);
  int task_index = 0;
  std::string episode_params;
  episode_cmd->add_option("--task-index", task_index, "training task to execute");
  episode_cmd->add_option("--params", episode_params,
                          "model params as sliding,torsional,rolling,mass (default GT)");

  CLI::App* eval_cmd = app.add_subcommand("eval", "run the standard eval task set");
  add_common(eval_cmd, eval_args);
  std::string eval_params;
  eval_cmd->add_option("--params", eval_params,
                       "model params as sliding,torsional,rolling,mass (default GT)");

  CLI::App* replay_cmd =
      app.add_subcommand("replay-opt", "optimize parameters against a recorded buffer");
  add_common(replay_cmd, replay_args);
  std::string buffer_path;
  replay_cmd->add_option("--buffer", buffer_path, "replay buffer JSON")
      ->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (experiment_cmd->parsed()) {
      const ExperimentConfig config = build_config(experiment_args);
      const RunLog log = run_experiment(config, resolve_threads(experiment_args));
      emit_report(log, config, experiment_args.out_dir);
      std::cout << "experiment: " << config.runs << " runs x " << config.episodes
                << " episodes -> " << experiment_args.out_dir << "\n";
      return 0;
    }

    if (episode_cmd->parsed()) {
      const ExperimentConfig config = build_config(episode_args);
      const PhysParams model = parse_params(episode_params, config.env_params);
      const EpisodeOutput out = run_single_episode(config, task_index, model,
                                                   config.seed, resolve_threads(episode_args));
      std::filesystem::create_directories(episode_args.out_dir);
      ReplayBuffer buffer;
      Rollout rollout = out.rollout;
      append(buffer, std::move(rollout));
      save_buffer(buffer, episode_args.out_dir + "/rollout.json");
      json summary{{"success", out.result.success},
                   {"terminal_time", out.result.terminal_time},
                   {"steps", static_cast<int>(out.rollout.size())},
                   {"plan_calls", out.plan_calls},
                   {"planner_evaluations", out.planner_evaluations},
                   {"model_params", params_json(model)}};
      if (!out.failure.empty()) summary["failure"] = out.failure;
      std::ofstream summary_out(episode_args.out_dir + "/episode.json");
      summary_out << summary.dump(2) << "\n";
      std::cout << "episode: " << (out.result.success ? "success" : "failure") << " at t="
                << format_double(out.result.terminal_time) << " s -> " << episode_args.out_dir
                << "\n";
      return out.failure.empty() ? 0 : 2;
    }

    if (eval_cmd->parsed()) {
      const ExperimentConfig config = build_config(eval_args);
      const PhysParams model = parse_params(eval_params, config.env_params);
      std::vector<TaskEvalRecord> records;
      const std::vector<EpisodeResult> results =
          run_eval_tasks(config, model, config.seed, resolve_threads(eval_args), &records);
      std::filesystem::create_directories(eval_args.out_dir);
      write_metrics_csv(results, config.metrics_smoothing_sigma,
                        eval_args.out_dir + "/metrics.csv");
      const MetricsReport report = aggregate(results, config.metrics_smoothing_sigma);
      json j{{"model_params", params_json(model)},
             {"success_rate", report.success_rate},
             {"mean_execution_time", report.mean_execution_time},
             {"avg_object_loss", report.avg_object_loss},
             {"object_trajectory_length", report.object_trajectory_length},
             {"pusher_trajectory_length", report.pusher_trajectory_length}};
      std::ofstream eval_out(eval_args.out_dir + "/eval.json");
      eval_out << j.dump(2) << "\n";
      std::cout << "eval: success_rate=" << format_double(report.success_rate)
                << " avg_object_loss=" << format_double(report.avg_object_loss) << " -> "
                << eval_args.out_dir << "\n";
      return 0;
    }

    if (replay_cmd->parsed()) {
      const ExperimentConfig config = build_config(replay_args);
      const ReplayBuffer buffer = load_buffer(buffer_path);
      Rng prior_rng(derive_seed(config.seed, 1, 0));
      const ParamDist prior = init_prior(config.env_params, config.adapt.delta,
                                         config.adapt.optimize_mask, prior_rng);
      const OptimizeResult opt = optimize(buffer, prior, config.env_params, config.adapt,
                                          config.world, derive_seed(config.seed, 2, 0),
                                          resolve_threads(replay_args));
      std::filesystem::create_directories(replay_args.out_dir);
      json j{{"best_params", params_json(opt.best)},
             {"best_cost", opt.best_cost},
             {"degenerate", opt.degenerate},
             {"prior_means", {prior.means[0], prior.means[1], prior.means[2], prior.means[3]}}};
      std::ofstream params_out(replay_args.out_dir + "/params.json");
      params_out << j.dump(2) << "\n";
      std::cout << "replay-opt: best_cost=" << format_double(opt.best_cost) << " -> "
                << replay_args.out_dir << "\n";
      return opt.degenerate ? 3 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
