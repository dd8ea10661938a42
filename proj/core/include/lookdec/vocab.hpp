#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace lookdec {

/**
 * Dense token vocabulary with distinguished bos/eos markers.
 *
 * Token ids are 0..size()-1. bos is never emitted by any model (its
 * probability is hard-zero in every step distribution); eos terminates
 * sequences. Size is capped at 2^16.
 */
class Vocabulary {
 public:
  Vocabulary() = default;

  // tokens must contain the bos and eos strings; all strings unique.
  Vocabulary(std::vector<std::string> tokens, const std::string& bos = "<bos>",
             const std::string& eos = "<eos>");

  // Convenience: prepend "<bos>","<eos>" to the given real tokens.
  static Vocabulary with_specials(std::vector<std::string> real_tokens);

  int id(const std::string& tok) const;  // throws InvalidInputError on unknown
  bool contains(const std::string& tok) const { return ids_.count(tok) > 0; }
  const std::string& token(int id) const;

  int size() const { return static_cast<int>(tokens_.size()); }
  int bos_id() const { return bos_id_; }
  int eos_id() const { return eos_id_; }
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
  int bos_id_ = -1;
  int eos_id_ = -1;
};

}  // namespace lookdec
