/**
 * lookdec command line: train toy models, run decoding jobs from JSON
 * configs, evaluate constraint metrics over result files, and run the
 * exhaustive oracle on small instances.
 *
 * Exit codes: 0 success, 2 config/validation error, 3 enumeration budget.
 */

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lookdec/constraints.hpp"
#include "lookdec/errors.hpp"
#include "lookdec/metrics.hpp"
#include "lookdec/model_io.hpp"
#include "lookdec/oracle.hpp"
#include "lookdec/search.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lookdec;

namespace {

struct JobConfig {
  std::unique_ptr<StepScorer> model;
  ConstraintSet constraints;
  DecodeParams params;
  bool topk_sampling = false;
  std::vector<std::string> inputs;
  json params_echo;
};

std::string resolve_path(const fs::path& config_dir, const std::string& p) {
  fs::path path(p);
  if (path.is_absolute()) return path.string();
  return (config_dir / path).string();
}

LookaheadStrategy parse_strategy(const std::string& s) {
  if (s == "greedy") return LookaheadStrategy::Greedy;
  if (s == "soft") return LookaheadStrategy::Soft;
  if (s == "beam") return LookaheadStrategy::Beam;
  if (s == "sampling") return LookaheadStrategy::Sampling;
  throw InvalidParamsError("params.lookahead.strategy: unknown value '" + s + "'");
}

JobConfig load_job_config(const std::string& config_path) {
  std::ifstream in(config_path);
  if (!in) throw ParseError(config_path + ": cannot open file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(config_path + ": " + e.what());
  }
  fs::path dir = fs::path(config_path).parent_path();

  JobConfig job;
  if (!j.contains("model") || !j["model"].contains("type") || !j["model"].contains("path")) {
    throw InvalidParamsError("config.model: requires 'type' and 'path'");
  }
  job.model = load_model(j["model"]["type"].get<std::string>(),
                         resolve_path(dir, j["model"]["path"].get<std::string>()));

  if (j.contains("constraints") && !j["constraints"].is_null()) {
    job.constraints = ConstraintSet::load(resolve_path(dir, j["constraints"].get<std::string>()),
                                          job.model->vocab());
  }

  DecodeParams& p = job.params;
  json pj = j.value("params", json::object());
  std::string mode = pj.value("mode", "plain");
  if (mode == "plain") {
    p.mode = DecodeMode::Plain;
  } else if (mode == "unconstrained_astar") {
    p.mode = DecodeMode::UnconstrainedAstar;
  } else if (mode == "neurologic") {
    p.mode = DecodeMode::Neurologic;
  } else if (mode == "neurologic_astar") {
    p.mode = DecodeMode::NeurologicAstar;
  } else if (mode == "topk_sample") {
    job.topk_sampling = true;
  } else {
    throw InvalidParamsError("params.mode: unknown value '" + mode + "'");
  }
  p.beam_size = pj.value("beam_size", 4);
  p.max_len = pj.value("max_len", 20);
  p.weights.lambda = pj.value("lambda", 1.0);
  p.weights.lambda1 = pj.value("lambda1", 0.1);
  p.weights.lambda2 = pj.value("lambda2", 0.1);
  p.weights.lambda_prime = pj.value("lambda_prime", 10.0);
  p.alpha = pj.value("alpha", 0.5);
  p.beta = pj.value("beta", 0.5);
  p.grouping = pj.value("grouping", true);
  p.topk = pj.value("topk", 10);
  p.lookahead_fanout = pj.value("lookahead_fanout", 20);
  std::string agg = pj.value("aggregation", "max");
  if (agg == "max") {
    p.aggregation = Aggregation::Max;
  } else if (agg == "mean") {
    p.aggregation = Aggregation::Mean;
  } else {
    throw InvalidParamsError("params.aggregation: unknown value '" + agg + "'");
  }
  std::string policy = pj.value("target_policy", "not_irreversibly_satisfied");
  if (policy == "not_irreversibly_satisfied") {
    p.target_policy = TargetPolicy::NotIrreversiblySatisfied;
  } else if (policy == "pending_only") {
    p.target_policy = TargetPolicy::PendingOnly;
  } else {
    throw InvalidParamsError("params.target_policy: unknown value '" + policy + "'");
  }

  json lj = pj.value("lookahead", json::object());
  p.lookahead.strategy = parse_strategy(lj.value("strategy", "greedy"));
  p.lookahead.horizon = lj.value("horizon", 0);
  p.lookahead.rollouts = lj.value("rollouts", 1);
  p.lookahead.beam_width = lj.value("beam_width", 1);
  p.lookahead.temperature = lj.value("temperature", 0.0);

  bool sampling_mode = job.topk_sampling || p.lookahead.strategy == LookaheadStrategy::Sampling;
  if (pj.contains("seed")) {
    p.seed = pj["seed"].get<uint64_t>();
  } else if (sampling_mode) {
    throw InvalidParamsError("params.seed: mandatory for sampling modes");
  }

  if (j.contains("inputs")) {
    const json& inputs = j["inputs"];
    if (inputs.is_string()) {
      std::ifstream f(resolve_path(dir, inputs.get<std::string>()));
      if (!f) throw ParseError("inputs file: cannot open " + inputs.get<std::string>());
      std::string line;
      while (std::getline(f, line)) job.inputs.push_back(line);
    } else if (inputs.is_array()) {
      for (const auto& line : inputs) job.inputs.push_back(line.get<std::string>());
    } else {
      throw InvalidParamsError("config.inputs: expected a path or a list of strings");
    }
  }
  if (job.inputs.empty()) job.inputs.push_back("");

  job.params_echo = {
      {"mode", mode},
      {"beam_size", p.beam_size},
      {"max_len", p.max_len},
      {"lambda", p.weights.lambda},
      {"lambda1", p.weights.lambda1},
      {"lambda2", p.weights.lambda2},
      {"lambda_prime", p.weights.lambda_prime},
      {"alpha", p.alpha},
      {"beta", p.beta},
      {"grouping", p.grouping},
      {"topk", p.topk},
      {"lookahead_fanout", p.lookahead_fanout},
      {"aggregation", agg},
      {"target_policy", policy},
      {"lookahead",
       {{"strategy", lj.value("strategy", "greedy")},
        {"horizon", p.lookahead.horizon},
        {"rollouts", p.lookahead.rollouts},
        {"beam_width", p.lookahead.beam_width},
        {"temperature", p.lookahead.temperature}}},
      {"seed", p.seed},
  };
  return job;
}

std::vector<int> resolve_input_line(const Vocabulary& vocab, const std::string& line) {
  std::istringstream ss(line);
  std::vector<int> ids;
  std::string tok;
  while (ss >> tok) {
    if (!vocab.contains(tok)) throw InvalidParamsError("input token not in vocabulary: " + tok);
    ids.push_back(vocab.id(tok));
  }
  return ids;
}

json record_for_input(const JobConfig& job, const std::string& line) {
  json rec;
  rec["input"] = line;
  const Vocabulary& vocab = job.model->vocab();
  try {
    std::vector<int> input = resolve_input_line(vocab, line);
    DecodeResult result = job.topk_sampling
                              ? topk_sample_decode(*job.model, job.params, input)
                              : decode(*job.model, job.constraints, job.params, input);
    rec["outputs"] = json::array();
    for (const ScoredOutput& out : result.outputs) {
      json jo;
      jo["tokens"] = json::array();
      for (size_t i = 1; i < out.tokens.size(); ++i) {  // skip bos
        jo["tokens"].push_back(vocab.token(out.tokens[i]));
      }
      jo["logprob"] = out.logprob;
      jo["objective"] = out.objective;
      jo["satisfied"] = out.satisfied;
      jo["violated"] = out.violated;
      jo["clause_statuses"] = json::array();
      for (ClauseStatus s : out.clause_statuses) jo["clause_statuses"].push_back(to_string(s));
      rec["outputs"].push_back(std::move(jo));
    }
  } catch (const EmptyBeamError& e) {
    rec["error"] = e.what();
  }
  rec["params_echo"] = job.params_echo;
  rec["seed"] = job.params.seed;
  return rec;
}

int cmd_decode(const std::string& config_path, const std::string& out_path, int workers) {
  JobConfig job = load_job_config(config_path);
  const size_t n = job.inputs.size();
  std::vector<json> records(n);

  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) records[i] = record_for_input(job, job.inputs[i]);
  } else {
    // Batch items fan out to a fixed pool; records land in input order.
    std::atomic<size_t> next{0};
    auto work = [&]() {
      for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        records[i] = record_for_input(job, job.inputs[i]);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  std::ofstream out(out_path);
  if (!out) throw ParseError(out_path + ": cannot open for writing");
  for (const json& rec : records) out << rec.dump() << "\n";
  return 0;
}

// Concept list for metrics: one concept per clause, alternatives = the
// clause's positive-literal phrases. Parsed at string level so eval needs
// no model vocabulary.
std::vector<ConceptAlternatives> concepts_from_constraint_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  json j = json::parse(in);
  std::vector<ConceptAlternatives> concepts;
  for (const auto& jc : j) {
    ConceptAlternatives alts;
    for (const auto& jl : jc) {
      if (jl.value("polarity", "+") != "+") continue;
      alts.push_back(jl.at("phrase").get<std::vector<std::string>>());
    }
    if (!alts.empty()) concepts.push_back(std::move(alts));
  }
  return concepts;
}

int cmd_eval(const std::string& results_path, const std::string& constraints_path) {
  auto concepts = concepts_from_constraint_file(constraints_path);

  std::ifstream in(results_path);
  if (!in) throw ParseError(results_path + ": cannot open file");
  std::vector<std::vector<std::string>> outputs;
  int errors = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec = json::parse(line);
    if (rec.contains("error")) {
      ++errors;
      continue;
    }
    if (!rec.contains("outputs") || rec["outputs"].empty()) continue;
    outputs.push_back(rec["outputs"][0]["tokens"].get<std::vector<std::string>>());
  }

  double cov = 0.0;
  for (const auto& out : outputs) cov += coverage(out, concepts);
  if (!outputs.empty()) cov /= static_cast<double>(outputs.size());

  std::vector<std::vector<ConceptAlternatives>> terms(outputs.size(), concepts);
  json report;
  report["records"] = outputs.size();
  report["errors"] = errors;
  report["coverage"] = outputs.empty() ? 100.0 : cov;
  report["term_use_rate"] = term_use_rate(outputs, terms);
  std::cout << report.dump(2) << "\n";
  return 0;
}

int cmd_train_ngram(const std::string& corpus, int order, double k, const std::string& out) {
  NGramModel model = train_ngram(corpus, order, k);
  save_ngram(model, out);
  return 0;
}

int cmd_oracle(const std::string& config_path) {
  JobConfig job = load_job_config(config_path);
  OracleBudget budget;
  budget.max_len = job.params.max_len;
  OracleResult res = exact_argmax(*job.model, job.constraints, job.params.weights.lambda_prime,
                                  budget);
  const Vocabulary& vocab = job.model->vocab();
  json out;
  out["tokens"] = json::array();
  for (size_t i = 1; i < res.tokens.size(); ++i) out["tokens"].push_back(vocab.token(res.tokens[i]));
  out["objective"] = res.objective;
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lookahead decoding engine for toy autoregressive models"};
  app.require_subcommand(1);

  std::string config_path, out_path, results_path, constraints_path, corpus_path;
  int workers = 1;
  int order = 1;
  double smoothing_k = 1.0;

  auto* dec = app.add_subcommand("decode", "run a decoding job, write JSONL results");
  dec->add_option("--config", config_path, "job config JSON")->required();
  dec->add_option("--out", out_path, "output JSONL path")->required();
  dec->add_option("--workers", workers, "worker pool size for batch items");

  auto* ev = app.add_subcommand("eval", "constraint metrics over a results file");
  ev->add_option("--results", results_path, "JSONL results from decode")->required();
  ev->add_option("--constraints", constraints_path, "constraint JSON file")->required();

  auto* tr = app.add_subcommand("train-ngram", "train an add-k n-gram model from a corpus");
  tr->add_option("--corpus", corpus_path, "one whitespace-tokenized sequence per line")->required();
  tr->add_option("--order", order, "context length");
  tr->add_option("--k", smoothing_k, "add-k smoothing constant");
  tr->add_option("--out", out_path, "output model JSON path")->required();

  auto* orc = app.add_subcommand("oracle", "exhaustive exact search for small configs");
  orc->add_option("--config", config_path, "job config JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (dec->parsed()) return cmd_decode(config_path, out_path, workers);
    if (ev->parsed()) return cmd_eval(results_path, constraints_path);
    if (tr->parsed()) return cmd_train_ngram(corpus_path, order, smoothing_k, out_path);
    if (orc->parsed()) return cmd_oracle(config_path);
  } catch (const BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
