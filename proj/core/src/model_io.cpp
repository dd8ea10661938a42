#include "lookdec/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lookdec/errors.hpp"
#include "lookdec/logspace.hpp"

namespace lookdec {

using nlohmann::json;

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return json::parse(in);  // nlohmann reports line/column in the message
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << j.dump(2) << "\n";
}

Vocabulary vocab_from_json(const json& j, const std::string& path) {
  if (!j.contains("vocab") || !j["vocab"].is_array()) {
    throw ParseError(path + ": missing 'vocab' array");
  }
  try {
    return Vocabulary(j["vocab"].get<std::vector<std::string>>());
  } catch (const InvalidInputError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::vector<int> resolve_tokens(const Vocabulary& v, const json& arr, const std::string& path) {
  std::vector<int> out;
  for (const auto& t : arr) {
    if (!t.is_string()) throw ParseError(path + ": token entry is not a string");
    if (!v.contains(t.get<std::string>())) {
      throw ParseError(path + ": unknown token '" + t.get<std::string>() + "'");
    }
    out.push_back(v.id(t.get<std::string>()));
  }
  return out;
}

}  // namespace

TableModel load_table_model(const std::string& path) {
  json j = read_json_file(path);
  Vocabulary vocab = vocab_from_json(j, path);
  if (!j.contains("order") || !j["order"].is_number_integer()) {
    throw ParseError(path + ": missing integer 'order'");
  }
  int order = j["order"].get<int>();
  if (!j.contains("default") || !j["default"].is_array()) {
    throw ParseError(path + ": missing 'default' probability row");
  }

  auto row_dist = [&](const json& probs, const std::string& where) {
    if (static_cast<int>(probs.size()) != vocab.size()) {
      throw ParseError(path + ": " + where + " has wrong length");
    }
    return StepDistribution::from_probs(probs.get<std::vector<double>>());
  };

  std::map<std::vector<int>, StepDistribution> rows;
  if (j.contains("rows")) {
    int idx = 0;
    for (const auto& row : j["rows"]) {
      if (!row.contains("context") || !row.contains("probs")) {
        throw ParseError(path + ": row " + std::to_string(idx) + " missing context/probs");
      }
      std::vector<int> ctx = resolve_tokens(vocab, row["context"], path);
      rows.emplace(std::move(ctx), row_dist(row["probs"], "row " + std::to_string(idx)));
      ++idx;
    }
  }
  try {
    return TableModel(vocab, order, std::move(rows), row_dist(j["default"], "default row"));
  } catch (const InvalidInputError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_table_model(const TableModel& model, const std::string& path) {
  const Vocabulary& v = model.vocab();
  json j;
  j["order"] = model.order();
  j["vocab"] = v.tokens();
  auto to_probs = [](const StepDistribution& d) {
    std::vector<double> p;
    for (double lp : d.logprobs) p.push_back(is_neg_inf(lp) ? 0.0 : std::exp(lp));
    return p;
  };
  j["rows"] = json::array();
  for (const auto& [ctx, dist] : model.rows()) {
    json row;
    row["context"] = json::array();
    for (int id : ctx) row["context"].push_back(v.token(id));
    row["probs"] = to_probs(dist);
    j["rows"].push_back(std::move(row));
  }
  j["default"] = to_probs(model.default_row());
  write_json_file(j, path);
}

NGramModel load_ngram(const std::string& path) {
  json j = read_json_file(path);
  Vocabulary vocab = vocab_from_json(j, path);
  if (!j.contains("order") || !j.contains("k")) {
    throw ParseError(path + ": missing 'order' or 'k'");
  }
  std::map<std::pair<std::vector<int>, int>, long long> counts;
  if (j.contains("counts")) {
    for (const auto& c : j["counts"]) {
      std::vector<int> ctx = resolve_tokens(vocab, c.at("context"), path);
      std::string tok = c.at("token").get<std::string>();
      if (!vocab.contains(tok)) throw ParseError(path + ": unknown token '" + tok + "'");
      counts[{std::move(ctx), vocab.id(tok)}] += c.at("count").get<long long>();
    }
  }
  try {
    return NGramModel(vocab, j["order"].get<int>(), j["k"].get<double>(), std::move(counts));
  } catch (const InvalidInputError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_ngram(const NGramModel& model, const std::string& path) {
  const Vocabulary& v = model.vocab();
  json j;
  j["order"] = model.order();
  j["k"] = model.smoothing_k();
  j["vocab"] = v.tokens();
  j["counts"] = json::array();
  for (const auto& [key, count] : model.counts()) {
    json c;
    c["context"] = json::array();
    for (int id : key.first) c["context"].push_back(v.token(id));
    c["token"] = v.token(key.second);
    c["count"] = count;
    j["counts"].push_back(std::move(c));
  }
  write_json_file(j, path);
}

std::vector<std::vector<std::string>> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::vector<std::vector<std::string>> lines;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ss >> tok) toks.push_back(tok);
    if (!toks.empty()) lines.push_back(std::move(toks));
  }
  return lines;
}

NGramModel train_ngram(const std::string& corpus_path, int order, double k) {
  auto corpus = load_corpus(corpus_path);
  std::set<std::string> uniq;
  for (const auto& line : corpus) uniq.insert(line.begin(), line.end());
  Vocabulary vocab = Vocabulary::with_specials({uniq.begin(), uniq.end()});
  std::vector<std::vector<int>> sequences;
  for (const auto& line : corpus) {
    std::vector<int> ids;
    for (const auto& t : line) ids.push_back(vocab.id(t));
    sequences.push_back(std::move(ids));
  }
  return NGramModel::train(vocab, sequences, order, k);
}

std::unique_ptr<StepScorer> load_model(const std::string& type, const std::string& path) {
  if (type == "table") return std::make_unique<TableModel>(load_table_model(path));
  if (type == "ngram") return std::make_unique<NGramModel>(load_ngram(path));
  throw ParseError("unknown model type '" + type + "' (expected 'table' or 'ngram')");
}

}  // namespace lookdec
