#include "lookdec/vocab.hpp"

#include "lookdec/errors.hpp"

namespace lookdec {

Vocabulary::Vocabulary(std::vector<std::string> tokens, const std::string& bos,
                       const std::string& eos)
    : tokens_(std::move(tokens)) {
  if (tokens_.size() > (1u << 16)) {
    throw InvalidInputError("vocabulary larger than 2^16 tokens");
  }
  for (int i = 0; i < static_cast<int>(tokens_.size()); ++i) {
    auto [it, inserted] = ids_.emplace(tokens_[i], i);
    if (!inserted) {
      throw InvalidInputError("duplicate token in vocabulary: " + tokens_[i]);
    }
  }
  auto bit = ids_.find(bos);
  auto eit = ids_.find(eos);
  if (bit == ids_.end() || eit == ids_.end()) {
    throw InvalidInputError("vocabulary must contain bos '" + bos + "' and eos '" + eos + "'");
  }
  bos_id_ = bit->second;
  eos_id_ = eit->second;
}

Vocabulary Vocabulary::with_specials(std::vector<std::string> real_tokens) {
  std::vector<std::string> all{"<bos>", "<eos>"};
  all.insert(all.end(), real_tokens.begin(), real_tokens.end());
  return Vocabulary(std::move(all));
}

int Vocabulary::id(const std::string& tok) const {
  auto it = ids_.find(tok);
  if (it == ids_.end()) throw InvalidInputError("unknown token: " + tok);
  return it->second;
}

const std::string& Vocabulary::token(int id) const {
  if (id < 0 || id >= size()) throw InvalidInputError("token id out of range");
  return tokens_[id];
}

}  // namespace lookdec
