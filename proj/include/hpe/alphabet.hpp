#ifndef HPE_ALPHABET_HPP
#define HPE_ALPHABET_HPP

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hpe/base_field.hpp"
#include "hpe/error.hpp"
#include "hpe/rng.hpp"

namespace hpe {

// A-Z, a-z, 0-9, space and period: 64 symbols.
inline std::string default_letters() {
  std::string s;
  for (char c = 'A'; c <= 'Z'; ++c) s += c;
  for (char c = 'a'; c <= 'z'; ++c) s += c;
  for (char c = '0'; c <= '9'; ++c) s += c;
  s += ' ';
  s += '.';
  return s;
}

struct AlphabetSpec {
  std::string letters = default_letters();
  unsigned block_len = 8;  // F_q digits per letter
  unsigned synonyms = 2;   // strings per letter
};

// Public encoding: each letter owns s >= 2 distinct strings of length e over
// F_q; the string sets of different letters are disjoint.
class Alphabet {
 public:
  Alphabet() = default;

  Alphabet(unsigned q, unsigned block_len, std::string letters, std::vector<std::vector<Vec>> synonyms)
      : q_(q), block_len_(block_len), letters_(std::move(letters)), synonyms_(std::move(synonyms)) {
    if (letters_.empty() || synonyms_.size() != letters_.size() || block_len_ == 0) {
      throw Error(ErrorCode::InvalidParams, "alphabet needs letters and one synonym set per letter");
    }
    if (std::set<char>(letters_.begin(), letters_.end()).size() != letters_.size()) {
      throw Error(ErrorCode::InvalidParams, "alphabet letters must be distinct");
    }
    for (std::size_t i = 0; i < synonyms_.size(); ++i) {
      if (synonyms_[i].size() < 2) throw Error(ErrorCode::InvalidParams, "each letter needs at least 2 synonyms");
      for (const Vec& word : synonyms_[i]) {
        if (word.size() != block_len_) throw Error(ErrorCode::InvalidParams, "synonym has wrong length");
        for (Fq d : word)
          if (d >= q_) throw Error(ErrorCode::InvalidParams, "synonym digit out of range");
        if (!reverse_.emplace(word, i).second) {
          throw Error(ErrorCode::InvalidParams, "synonym sets overlap");
        }
      }
    }
  }

  // Draws letters.size() * synonyms distinct random strings.
  static Alphabet generate(unsigned q, const AlphabetSpec& spec, Rng& rng) {
    const double space = std::pow(static_cast<double>(q), spec.block_len);
    const double needed = static_cast<double>(spec.letters.size()) * spec.synonyms;
    if (spec.synonyms < 2 || needed > space) {
      throw Error(ErrorCode::InvalidParams, "q^block_len must be at least letters * synonyms (synonyms >= 2)");
    }
    std::set<Vec> used;
    std::vector<std::vector<Vec>> synonyms(spec.letters.size());
    for (auto& set : synonyms) {
      while (set.size() < spec.synonyms) {
        Vec word(spec.block_len);
        for (Fq& d : word) d = static_cast<Fq>(rng.uniform(q));
        if (used.insert(word).second) set.push_back(std::move(word));
      }
    }
    return Alphabet(q, spec.block_len, spec.letters, std::move(synonyms));
  }

  unsigned q() const { return q_; }
  unsigned block_len() const { return block_len_; }
  const std::string& letters() const { return letters_; }
  std::size_t letter_count() const { return letters_.size(); }
  const std::vector<Vec>& synonyms(std::size_t letter) const { return synonyms_.at(letter); }
  std::size_t synonym_count(std::size_t letter) const { return synonyms_.at(letter).size(); }

  // Letters per plaintext of length n; throws LengthMismatch unless e | n.
  std::size_t letters_per_message(std::size_t n) const {
    if (n % block_len_ != 0) {
      throw Error(ErrorCode::LengthMismatch, "block length " + std::to_string(block_len_) + " does not divide " +
                                                 std::to_string(n));
    }
    return n / block_len_;
  }

  // Letter indices of a message; throws SymbolOutOfAlphabet.
  std::vector<std::size_t> letter_indices(const std::string& message) const {
    std::vector<std::size_t> out;
    out.reserve(message.size());
    for (char ch : message) {
      const auto pos = letters_.find(ch);
      if (pos == std::string::npos) {
        throw Error(ErrorCode::SymbolOutOfAlphabet,
                    "symbol code " + std::to_string(static_cast<unsigned char>(ch)) + " is not in the alphabet");
      }
      out.push_back(pos);
    }
    return out;
  }

  // Concatenation of the chosen synonym of each letter.
  Vec assemble(const std::vector<std::size_t>& letters, const std::vector<std::size_t>& choice) const {
    Vec x;
    x.reserve(letters.size() * block_len_);
    for (std::size_t i = 0; i < letters.size(); ++i) {
      const Vec& word = synonyms_[letters[i]].at(choice[i]);
      x.insert(x.end(), word.begin(), word.end());
    }
    return x;
  }

  std::optional<char> decode_block(std::span<const Fq> block) const {
    auto it = reverse_.find(Vec(block.begin(), block.end()));
    if (it == reverse_.end()) return std::nullopt;
    return letters_[it->second];
  }

  // nullopt when any block is not a synonym.
  std::optional<std::string> decode(std::span<const Fq> x) const {
    if (x.size() % block_len_ != 0) return std::nullopt;
    std::string out;
    for (std::size_t i = 0; i < x.size(); i += block_len_) {
      auto letter = decode_block(x.subspan(i, block_len_));
      if (!letter) return std::nullopt;
      out += *letter;
    }
    return out;
  }

  // Fraction of all length-n vectors that decode.
  double valid_fraction(std::size_t n) const {
    const double per_block = static_cast<double>(reverse_.size()) / std::pow(static_cast<double>(q_), block_len_);
    return std::pow(per_block, static_cast<double>(letters_per_message(n)));
  }

  bool operator==(const Alphabet& o) const {
    return q_ == o.q_ && block_len_ == o.block_len_ && letters_ == o.letters_ && synonyms_ == o.synonyms_;
  }

 private:
  unsigned q_ = 0;
  unsigned block_len_ = 0;
  std::string letters_;
  std::vector<std::vector<Vec>> synonyms_;
  std::map<Vec, std::size_t> reverse_;
};

struct Encoding {
  Vec x;
  std::vector<std::size_t> choice;  // synonym index per letter
};

// One uniformly chosen synonym per letter. Throws SymbolOutOfAlphabet or
// LengthMismatch (message must have n / e letters).
inline Encoding encode(const Alphabet& alphabet, std::size_t n, const std::string& message, Rng& rng) {
  const std::size_t m = alphabet.letters_per_message(n);
  if (message.size() != m) {
    throw Error(ErrorCode::LengthMismatch,
                "message has " + std::to_string(message.size()) + " letters, expected " + std::to_string(m));
  }
  const auto letters = alphabet.letter_indices(message);
  Encoding enc;
  enc.choice.resize(m);
  for (std::size_t i = 0; i < m; ++i) enc.choice[i] = rng.uniform(alphabet.synonym_count(letters[i]));
  enc.x = alphabet.assemble(letters, enc.choice);
  return enc;
}

}  // namespace hpe

#endif  // HPE_ALPHABET_HPP
