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

#include "pushmpc/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "pushmpc/number_format.hpp"
#include "pushmpc/rng.hpp"

namespace pushmpc {
namespace {

using nlohmann::json;

// Stream tags for deriving independent per-purpose generators.
constexpr std::uint64_t kValidationStream = 20;
constexpr std::uint64_t kRunStream = 21;
constexpr std::uint64_t kPriorStream = 30;
constexpr std::uint64_t kTrainStream = 31;
constexpr std::uint64_t kAdaptStream = 32;
constexpr std::uint64_t kEvalStream = 33;

TaskSpec make_task(const TaskSpec& tmpl, const TaskInit& init) {
  TaskSpec task = tmpl;
  task.goal_position = init.goal_position;
  task.goal_yaw = init.goal_yaw;
  return task;
}

SimState make_initial_state(const TaskInit& init) {
  SimState state;
  state.pusher.position = init.pusher_position;
  BodyState object;
  object.position = init.object_position;
  object.yaw = init.object_yaw;
  state.objects.push_back(object);
  return state;
}

Vec4 relative_errors(const PhysParams& params, const PhysParams& gt) {
  const Vec4 p = params.as_vector();
  const Vec4 g = gt.as_vector();
  return (p - g).cwiseAbs().cwiseQuotient(g.cwiseAbs());
}

EpisodeSetup make_setup(const ExperimentConfig& config, const TaskInit& init,
                        const PhysParams& model_params) {
  EpisodeSetup setup;
  setup.task = make_task(config.task_template, init);
  setup.initial_state = make_initial_state(init);
  setup.env_params = config.env_params;
  setup.model_params = model_params;
  setup.profile = config.profile;
  setup.record_mode = config.record_mode;
  setup.observation_noise_std = config.observation_noise_std;
  return setup;
}

// Five validation rollouts executed with ground-truth model parameters,
// shared by every run of the experiment.
ReplayBuffer build_validation_buffer(const ExperimentConfig& config, int threads) {
  ReplayBuffer buffer;
  for (int v = 0; v < config.validation_rollouts; ++v) {
    const TaskInit& init = config.eval_tasks[v % config.eval_tasks.size()];
    EpisodeSetup setup = make_setup(config, init, config.env_params);
    EpisodeOutput out = run_episode(config.world, config.planner, config.gains, setup,
                                    derive_seed(config.seed, kValidationStream, v), threads);
    append(buffer, std::move(out.rollout));
  }
  return buffer;
}

json vec2_json(const Vec2& v) { return json::array({v.x(), v.y()}); }
json vec4_json(const Vec4& v) { return json::array({v[0], v[1], v[2], v[3]}); }

json task_init_json(const TaskInit& t) {
  return json{{"object", json::array({t.object_position.x(), t.object_position.y(), t.object_yaw})},
              {"pusher", vec2_json(t.pusher_position)},
              {"goal", json::array({t.goal_position.x(), t.goal_position.y(), t.goal_yaw})}};
}

TaskInit task_init_from_json(const json& j) {
  TaskInit t;
  const auto& obj = j.at("object");
  t.object_position = Vec2(obj.at(0).get<double>(), obj.at(1).get<double>());
  t.object_yaw = obj.at(2).get<double>();
  if (j.contains("pusher")) {
    t.pusher_position = Vec2(j["pusher"].at(0).get<double>(), j["pusher"].at(1).get<double>());
  }
  const auto& goal = j.at("goal");
  t.goal_position = Vec2(goal.at(0).get<double>(), goal.at(1).get<double>());
  t.goal_yaw = goal.at(2).get<double>();
  return t;
}

template <typename T>
void overlay(const json& j, const char* key, T& value) {
  if (j.contains(key)) value = j.at(key).get<T>();
}

void overlay_vec2(const json& j, const char* key, Vec2& value) {
  if (j.contains(key)) value = Vec2(j.at(key).at(0).get<double>(), j.at(key).at(1).get<double>());
}

}  // namespace

void ExperimentConfig::validate() const {
  world.validate();
  planner.validate();
  adapt.validate();
  if (runs < 1) throw std::invalid_argument("ExperimentConfig: runs must be >= 1");
  if (episodes < 0) throw std::invalid_argument("ExperimentConfig: episodes must be >= 0");
  if (validation_rollouts < 1)
    throw std::invalid_argument("ExperimentConfig: validation_rollouts must be >= 1");
  if (eval_period < 0) throw std::invalid_argument("ExperimentConfig: eval_period must be >= 0");
  if (training_tasks.empty()) throw std::invalid_argument("ExperimentConfig: no training tasks");
  if (eval_tasks.empty()) throw std::invalid_argument("ExperimentConfig: no eval tasks");
  if (!(task_template.epsilon > 0.0) || !(task_template.time_limit > 0.0))
    throw std::invalid_argument("ExperimentConfig: invalid task thresholds");
  if (!(observation_noise_std >= 0.0))
    throw std::invalid_argument("ExperimentConfig: observation noise must be >= 0");
}

ExperimentConfig default_config(Profile profile) {
  ExperimentConfig config;
  config.profile = profile;

  // Training tasks: varied push directions, distances, and goal yaws so the
  // buffer covers translation- and rotation-heavy contact.
  const double bearings[10] = {0.0, 0.35, -0.35, 0.7, -0.7, 0.2, -0.2, 0.5, -0.5, 0.0};
  const double radii[10] = {0.16, 0.14, 0.18, 0.12, 0.2, 0.22, 0.15, 0.13, 0.17, 0.24};
  const double yaws[10] = {0.0,    M_PI / 6, -M_PI / 6, M_PI / 3, -M_PI / 3,
                           M_PI / 4, -M_PI / 4, 0.0,     M_PI / 2, -M_PI / 2};
  for (int i = 0; i < 10; ++i) {
    TaskInit t;
    t.goal_position = radii[i] * Vec2(std::cos(bearings[i]), std::sin(bearings[i]));
    t.goal_yaw = yaws[i];
    config.training_tasks.push_back(t);
  }

  // Standard eval set: radii 0.15-0.25 m, goal yaws 0 and +-pi/4, +-pi/2.
  const double eval_radii[5] = {0.2, 0.15, 0.15, 0.25, 0.25};
  const double eval_bearings[5] = {0.0, 0.5, -0.5, 0.25, -0.25};
  const double eval_yaws[5] = {0.0, M_PI / 4, -M_PI / 4, M_PI / 2, -M_PI / 2};
  for (int i = 0; i < 5; ++i) {
    TaskInit t;
    t.goal_position = eval_radii[i] * Vec2(std::cos(eval_bearings[i]), std::sin(eval_bearings[i]));
    t.goal_yaw = eval_yaws[i];
    config.eval_tasks.push_back(t);
  }

  if (profile == Profile::kRealtime) {
    config.planner.population = 50;
    config.planner.iterations = 2;
    config.planner.replan_period = 0.1;
    config.task_template.epsilon = 1e-4;
    config.record_mode = ControlMode::kVelocity;
    config.metrics_smoothing_sigma = 100.0;
  }
  return config;
}

void apply_paper_scale(ExperimentConfig& config) {
  config.runs = 10;
  config.episodes = 10;
  if (config.profile == Profile::kSim) {
    config.planner.population = 128;
    config.planner.iterations = 4;
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("load_config: parse error in " + path + ": " + e.what());
  }

  Profile profile = Profile::kSim;
  if (j.contains("profile")) {
    const std::string p = j["profile"].get<std::string>();
    if (p == "sim") {
      profile = Profile::kSim;
    } else if (p == "realtime") {
      profile = Profile::kRealtime;
    } else {
      throw std::runtime_error("load_config: unknown profile '" + p + "'");
    }
  }
  ExperimentConfig config = default_config(profile);

  if (j.contains("world")) {
    const json& w = j["world"];
    overlay(w, "dt", config.world.dt);
    overlay(w, "gravity", config.world.gravity);
    overlay(w, "pusher_radius", config.world.pusher_radius);
    overlay_vec2(w, "box_half_extents", config.world.box_half_extents);
    overlay(w, "object_mass", config.world.object_mass);
    overlay(w, "contact_stiffness", config.world.contact_stiffness);
    overlay(w, "contact_damping", config.world.contact_damping);
    overlay(w, "slip_regularization_velocity", config.world.slip_regularization_velocity);
  }
  if (j.contains("env_params")) {
    const json& p = j["env_params"];
    config.env_params = PhysParams(
        p.value("sliding", config.env_params.sliding),
        p.value("torsional", config.env_params.torsional),
        p.value("rolling", config.env_params.rolling),
        p.value("pusher_mass", config.env_params.pusher_mass));
  }
  if (j.contains("planner")) {
    const json& p = j["planner"];
    overlay(p, "keypoints", config.planner.keypoints);
    overlay(p, "segment_duration", config.planner.segment_duration);
    overlay(p, "population", config.planner.population);
    overlay(p, "iterations", config.planner.iterations);
    overlay(p, "elite_fraction", config.planner.elite_fraction);
    overlay(p, "colored_noise_beta", config.planner.colored_noise_beta);
    overlay(p, "init_std_pos", config.planner.init_std_pos);
    overlay(p, "init_std_vel", config.planner.init_std_vel);
    overlay(p, "max_keypoint_speed", config.planner.max_keypoint_speed);
    overlay_vec2(p, "workspace_min", config.planner.workspace_min);
    overlay_vec2(p, "workspace_max", config.planner.workspace_max);
    overlay(p, "replan_period", config.planner.replan_period);
    overlay(p, "reinject_elites", config.planner.reinject_elites);
    overlay(p, "shift_means", config.planner.shift_means);
  }
  if (j.contains("adapt")) {
    const json& a = j["adapt"];
    overlay(a, "population", config.adapt.population);
    overlay(a, "iterations", config.adapt.iterations);
    overlay(a, "elite_fraction", config.adapt.elite_fraction);
    overlay(a, "kappa_pusher", config.adapt.kappa_pusher);
    overlay(a, "kappa_rotation", config.adapt.kappa_rotation);
    overlay(a, "delta", config.adapt.delta);
    overlay(a, "reinject_elites", config.adapt.reinject_elites);
    overlay(a, "warm_start", config.adapt.warm_start);
    if (a.contains("optimize_mask")) {
      const json& m = a["optimize_mask"];
      if (!m.is_array() || m.size() != 4)
        throw std::runtime_error("load_config: optimize_mask must have 4 entries");
      for (int k = 0; k < 4; ++k) config.adapt.optimize_mask[k] = m.at(k).get<bool>();
    }
  }
  if (j.contains("gains")) {
    const json& g = j["gains"];
    overlay(g, "kp", config.gains.kp);
    overlay(g, "kd", config.gains.kd);
    overlay(g, "ki", config.gains.ki);
  }
  if (j.contains("task")) {
    const json& t = j["task"];
    overlay(t, "epsilon", config.task_template.epsilon);
    overlay(t, "time_limit", config.task_template.time_limit);
    overlay(t, "lambda_rot", config.task_template.lambda_rot);
    overlay(t, "lambda_dist", config.task_template.lambda_dist);
    overlay(t, "lambda_accel", config.task_template.lambda_accel);
  }
  if (j.contains("training_tasks")) {
    config.training_tasks.clear();
    for (const json& t : j["training_tasks"]) config.training_tasks.push_back(task_init_from_json(t));
  }
  if (j.contains("eval_tasks")) {
    config.eval_tasks.clear();
    for (const json& t : j["eval_tasks"]) config.eval_tasks.push_back(task_init_from_json(t));
  }
  overlay(j, "runs", config.runs);
  overlay(j, "episodes", config.episodes);
  overlay(j, "validation_rollouts", config.validation_rollouts);
  overlay(j, "eval_period", config.eval_period);
  overlay(j, "observation_noise_std", config.observation_noise_std);
  overlay(j, "metrics_smoothing_sigma", config.metrics_smoothing_sigma);
  overlay(j, "seed", config.seed);
  if (j.contains("record_mode")) {
    const std::string m = j["record_mode"].get<std::string>();
    if (m == "force") {
      config.record_mode = ControlMode::kForce;
    } else if (m == "velocity") {
      config.record_mode = ControlMode::kVelocity;
    } else {
      throw std::runtime_error("load_config: unknown record_mode '" + m + "'");
    }
  }
  config.validate();
  return config;
}

void save_config(const ExperimentConfig& config, const std::string& path) {
  json j;
  j["profile"] = config.profile == Profile::kSim ? "sim" : "realtime";
  j["world"] = json{{"dt", config.world.dt},
                    {"gravity", config.world.gravity},
                    {"pusher_radius", config.world.pusher_radius},
                    {"box_half_extents", vec2_json(config.world.box_half_extents)},
                    {"object_mass", config.world.object_mass},
                    {"contact_stiffness", config.world.contact_stiffness},
                    {"contact_damping", config.world.contact_damping},
                    {"slip_regularization_velocity", config.world.slip_regularization_velocity}};
  j["env_params"] = json{{"sliding", config.env_params.sliding},
                         {"torsional", config.env_params.torsional},
                         {"rolling", config.env_params.rolling},
                         {"pusher_mass", config.env_params.pusher_mass}};
  j["planner"] = json{{"keypoints", config.planner.keypoints},
                      {"segment_duration", config.planner.segment_duration},
                      {"population", config.planner.population},
                      {"iterations", config.planner.iterations},
                      {"elite_fraction", config.planner.elite_fraction},
                      {"colored_noise_beta", config.planner.colored_noise_beta},
                      {"init_std_pos", config.planner.init_std_pos},
                      {"init_std_vel", config.planner.init_std_vel},
                      {"max_keypoint_speed", config.planner.max_keypoint_speed},
                      {"workspace_min", vec2_json(config.planner.workspace_min)},
                      {"workspace_max", vec2_json(config.planner.workspace_max)},
                      {"replan_period", config.planner.replan_period},
                      {"reinject_elites", config.planner.reinject_elites},
                      {"shift_means", config.planner.shift_means}};
  j["adapt"] = json{{"population", config.adapt.population},
                    {"iterations", config.adapt.iterations},
                    {"elite_fraction", config.adapt.elite_fraction},
                    {"kappa_pusher", config.adapt.kappa_pusher},
                    {"kappa_rotation", config.adapt.kappa_rotation},
                    {"delta", config.adapt.delta},
                    {"optimize_mask", json::array({config.adapt.optimize_mask[0],
                                                   config.adapt.optimize_mask[1],
                                                   config.adapt.optimize_mask[2],
                                                   config.adapt.optimize_mask[3]})},
                    {"reinject_elites", config.adapt.reinject_elites},
                    {"warm_start", config.adapt.warm_start}};
  j["gains"] = json{{"kp", config.gains.kp}, {"kd", config.gains.kd}, {"ki", config.gains.ki}};
  j["task"] = json{{"epsilon", config.task_template.epsilon},
                   {"time_limit", config.task_template.time_limit},
                   {"lambda_rot", config.task_template.lambda_rot},
                   {"lambda_dist", config.task_template.lambda_dist},
                   {"lambda_accel", config.task_template.lambda_accel}};
  json training = json::array();
  for (const TaskInit& t : config.training_tasks) training.push_back(task_init_json(t));
  j["training_tasks"] = training;
  json eval_tasks = json::array();
  for (const TaskInit& t : config.eval_tasks) eval_tasks.push_back(task_init_json(t));
  j["eval_tasks"] = eval_tasks;
  j["runs"] = config.runs;
  j["episodes"] = config.episodes;
  j["validation_rollouts"] = config.validation_rollouts;
  j["eval_period"] = config.eval_period;
  j["observation_noise_std"] = config.observation_noise_std;
  j["metrics_smoothing_sigma"] = config.metrics_smoothing_sigma;
  j["seed"] = config.seed;
  j["record_mode"] = config.record_mode == ControlMode::kForce ? "force" : "velocity";

  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_config: cannot open " + path);
  out << j.dump(2) << "\n";
}

std::vector<EpisodeResult> run_eval_tasks(const ExperimentConfig& config,
                                          const PhysParams& model_params, std::uint64_t seed,
                                          int threads, std::vector<TaskEvalRecord>* records) {
  std::vector<EpisodeResult> results;
  for (std::size_t i = 0; i < config.eval_tasks.size(); ++i) {
    EpisodeSetup setup = make_setup(config, config.eval_tasks[i], model_params);
    EpisodeOutput out = run_episode(config.world, config.planner, config.gains, setup,
                                    derive_seed(seed, kEvalStream, i), threads);
    if (records != nullptr) {
      TaskEvalRecord rec;
      rec.task = static_cast<int>(i);
      rec.success = out.result.success;
      rec.terminal_time = out.result.terminal_time;
      double loss_sum = 0.0;
      for (const double l : out.result.goal_losses) loss_sum += l;
      rec.object_loss = 1e-4 * loss_sum;
      rec.object_trajectory_length =
          trajectory_length(out.result.object_trajectory, config.metrics_smoothing_sigma);
      rec.pusher_trajectory_length =
          trajectory_length(out.result.pusher_trajectory, config.metrics_smoothing_sigma);
      records->push_back(rec);
    }
    results.push_back(std::move(out.result));
  }
  return results;
}

EpisodeOutput run_single_episode(const ExperimentConfig& config, int task_index,
                                 const PhysParams& model_params, std::uint64_t seed,
                                 int threads) {
  if (task_index < 0 || task_index >= static_cast<int>(config.training_tasks.size()))
    throw std::invalid_argument("run_single_episode: task index out of range");
  EpisodeSetup setup = make_setup(config, config.training_tasks[task_index], model_params);
  return run_episode(config.world, config.planner, config.gains, setup, seed, threads);
}

RunLog run_experiment(const ExperimentConfig& config, int threads) {
  config.validate();
  RunLog log;

  const ReplayBuffer validation = build_validation_buffer(config, threads);
  const auto validation_loss = [&](const PhysParams& params) {
    return replay_cost(params, validation, config.world, config.adapt.kappa_pusher,
                       config.adapt.kappa_rotation);
  };
  const bool eval_enabled = config.eval_period > 0;

  for (int r = 0; r < config.runs; ++r) {
    const std::uint64_t run_seed = derive_seed(config.seed, kRunStream, r);
    Rng prior_rng(derive_seed(run_seed, kPriorStream, 0));
    const ParamDist prior =
        init_prior(config.env_params, config.adapt.delta, config.adapt.optimize_mask, prior_rng);
    ParamDist dist = prior;
    PhysParams best = PhysParams::from_vector(prior.means);
    ReplayBuffer buffer;

    auto log_episode = [&](int episode) {
      EpisodeRecord rec;
      rec.run = r;
      rec.episode = episode;
      rec.params = best.as_vector();
      rec.rel_errors = relative_errors(best, config.env_params);
      rec.validation_loss = validation_loss(best);
      const bool checkpoint =
          eval_enabled && (episode % config.eval_period == 0 || episode == config.episodes);
      if (checkpoint) {
        std::vector<EpisodeResult> eval_results = run_eval_tasks(
            config, best, derive_seed(run_seed, kEvalStream, episode), threads, &rec.eval);
        rec.eval_report = aggregate(eval_results, config.metrics_smoothing_sigma);
        rec.evaluated = true;
      }
      return rec;
    };

    // Episode 0: the prior, before any interaction.
    log.records.push_back(log_episode(0));

    for (int episode = 1; episode <= config.episodes; ++episode) {
      const TaskInit& task =
          config.training_tasks[(episode - 1) % config.training_tasks.size()];
      EpisodeSetup setup = make_setup(config, task, best);
      EpisodeOutput out =
          run_episode(config.world, config.planner, config.gains, setup,
                      derive_seed(run_seed, kTrainStream, episode), threads);
      const int training_steps = static_cast<int>(out.rollout.size());
      append(buffer, std::move(out.rollout));

      const ParamDist& start_dist = config.adapt.warm_start ? dist : prior;
      OptimizeResult opt =
          optimize(buffer, start_dist, config.env_params, config.adapt, config.world,
                   derive_seed(run_seed, kAdaptStream, episode), threads);
      best = opt.best;
      dist = opt.dist;

      EpisodeRecord rec = log_episode(episode);
      rec.trained = true;
      rec.training_success = out.result.success;
      rec.training_time = out.result.terminal_time;
      rec.training_steps = training_steps;
      rec.training_final_loss = out.result.goal_losses.empty() ? 0.0 : out.result.goal_losses.back();
      rec.adapt_best_cost = opt.best_cost;
      rec.adapt_degenerate = opt.degenerate;
      rec.failure = out.failure;
      log.records.push_back(std::move(rec));
    }
    log.buffers.push_back(std::move(buffer));
  }
  return log;
}

void emit_report(const RunLog& log, const ExperimentConfig& config, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  fs::create_directories(out_dir + "/buffers");

  save_config(config, out_dir + "/config.json");

  {
    std::ofstream out(out_dir + "/records.jsonl");
    if (!out) throw std::runtime_error("emit_report: cannot open records.jsonl");
    for (const EpisodeRecord& rec : log.records) {
      json j{{"run", rec.run},
             {"episode", rec.episode},
             {"params", vec4_json(rec.params)},
             {"rel_errors", vec4_json(rec.rel_errors)},
             {"validation_loss", rec.validation_loss},
             {"trained", rec.trained}};
      if (rec.trained) {
        j["training"] = json{{"success", rec.training_success},
                             {"terminal_time", rec.training_time},
                             {"steps", rec.training_steps},
                             {"final_loss", rec.training_final_loss}};
        j["adapt"] = json{{"best_cost", rec.adapt_best_cost},
                          {"degenerate", rec.adapt_degenerate}};
      }
      if (!rec.failure.empty()) j["failure"] = rec.failure;
      if (rec.evaluated) {
        json tasks = json::array();
        for (const TaskEvalRecord& t : rec.eval) {
          tasks.push_back(json{{"task", t.task},
                               {"success", t.success},
                               {"terminal_time", t.terminal_time},
                               {"object_loss", t.object_loss},
                               {"object_trajectory_length", t.object_trajectory_length},
                               {"pusher_trajectory_length", t.pusher_trajectory_length}});
        }
        j["eval"] = json{{"tasks", tasks},
                         {"success_rate", rec.eval_report.success_rate},
                         {"mean_execution_time", rec.eval_report.mean_execution_time},
                         {"avg_object_loss", rec.eval_report.avg_object_loss},
                         {"object_trajectory_length", rec.eval_report.object_trajectory_length},
                         {"pusher_trajectory_length", rec.eval_report.pusher_trajectory_length}};
      }
      out << j.dump() << "\n";
    }
  }

  {
    std::ofstream out(out_dir + "/params.csv");
    if (!out) throw std::runtime_error("emit_report: cannot open params.csv");
    out << "run,episode,theta_s,theta_t,theta_r,theta_m,rel_err_s,rel_err_t,rel_err_r,"
           "rel_err_m,validation_loss\n";
    for (const EpisodeRecord& rec : log.records) {
      out << rec.run << ',' << rec.episode;
      for (int k = 0; k < 4; ++k) out << ',' << format_double(rec.params[k]);
      for (int k = 0; k < 4; ++k) out << ',' << format_double(rec.rel_errors[k]);
      out << ',' << format_double(rec.validation_loss) << '\n';
    }
  }

  {
    std::ofstream out(out_dir + "/metrics.csv");
    if (!out) throw std::runtime_error("emit_report: cannot open metrics.csv");
    out << "run,episode,task,success,terminal_time,object_loss,object_trajectory_length,"
           "pusher_trajectory_length\n";
    for (const EpisodeRecord& rec : log.records) {
      if (!rec.evaluated) continue;
      for (const TaskEvalRecord& t : rec.eval) {
        out << rec.run << ',' << rec.episode << ',' << t.task << ',' << (t.success ? 1 : 0)
            << ',' << format_double(t.terminal_time) << ',' << format_double(t.object_loss)
            << ',' << format_double(t.object_trajectory_length) << ','
            << format_double(t.pusher_trajectory_length) << '\n';
      }
      out << rec.run << ',' << rec.episode << ",aggregate,"
          << format_double(rec.eval_report.success_rate) << ','
          << format_double(rec.eval_report.mean_execution_time) << ','
          << format_double(rec.eval_report.avg_object_loss) << ','
          << format_double(rec.eval_report.object_trajectory_length) << ','
          << format_double(rec.eval_report.pusher_trajectory_length) << '\n';
    }
  }

  for (std::size_t r = 0; r < log.buffers.size(); ++r) {
    save_buffer(log.buffers[r], out_dir + "/buffers/run_" + std::to_string(r) + ".json");
  }
}

}  // namespace pushmpc
