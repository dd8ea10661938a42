#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lookdec/ngram_model.hpp"
#include "lookdec/table_model.hpp"

namespace lookdec {

// Table-model JSON: {order, vocab:[strings], rows:[{context:[strings],
// probs:[floats]}], default:[floats]}. Probabilities are linear and must sum
// to 1 within 1e-6; the vocab list must contain "<bos>" and "<eos>".
TableModel load_table_model(const std::string& path);
void save_table_model(const TableModel& model, const std::string& path);

// N-gram JSON: {order, k, vocab:[strings], counts:[{context:[strings],
// token:string, count:int}]}.
NGramModel load_ngram(const std::string& path);
void save_ngram(const NGramModel& model, const std::string& path);

// Corpus: UTF-8, one whitespace-tokenized sequence per line.
std::vector<std::vector<std::string>> load_corpus(const std::string& path);

// Builds the vocabulary from the corpus (specials + sorted unique tokens)
// and trains an add-k model.
NGramModel train_ngram(const std::string& corpus_path, int order, double k);

// Dispatches on a "type" field: "table" or "ngram".
std::unique_ptr<StepScorer> load_model(const std::string& type, const std::string& path);

}  // namespace lookdec
