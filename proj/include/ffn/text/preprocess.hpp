#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ffn {

// Fixed sequence length after padding/truncation.
inline constexpr std::size_t kSeqLen = 15;

// Reserved vocabulary ids.
inline constexpr int kPadId = 0;
inline constexpr int kUnkId = 1;

// The pinned English stopword list shipped with the repo (lowercase).
const std::set<std::string>& default_stopwords();

struct CleaningConfig {
  std::set<std::string> stopwords = default_stopwords();
  // Token -> token; must never fail. Identity by default so results do not
  // depend on an external lemmatizer.
  std::function<std::string(const std::string&)> lemmatizer;
  bool lowercase = true;
};

// Cleaning pipeline: split on whitespace, lowercase, strip ASCII punctuation
// from token boundaries, drop punctuation-only and digit-only tokens, drop
// stopwords, lemmatize.
std::vector<std::string> clean_text(const std::string& raw, const CleaningConfig& config);

// Word -> integer map with ids 0 (pad) and 1 (unknown) reserved. Word ids
// start at 2, assigned by descending corpus frequency, ties broken
// lexicographically, so the build is deterministic.
class Vocabulary {
 public:
  static Vocabulary build(const std::vector<std::vector<std::string>>& corpus);

  // Id for a word, kUnkId if absent.
  int id(const std::string& word) const;
  bool contains(const std::string& word) const { return word_to_id_.count(word) != 0; }
  std::size_t size() const { return words_.size() + 2; }

  // Inverse mapping for ids >= 2; reserved ids map to "<pad>" / "<unk>".
  const std::string& word(int id) const;

  // Words in id order (id 2 first).
  const std::vector<std::string>& words() const { return words_; }

  // One "word<TAB>id" line per entry, preceded by the two reserved-id lines.
  std::string serialize() const;
  static Vocabulary deserialize(const std::string& text);  // throws DataError
  void save(const std::string& path) const;
  static Vocabulary load(const std::string& path);

  // FNV-1a fingerprint of the serialized form.
  std::uint64_t hash() const;

 private:
  std::map<std::string, int> word_to_id_;
  std::vector<std::string> words_;
};

struct TokenSequence {
  std::array<int, kSeqLen> ids{};
  std::size_t effective_length = 0;  // count of non-pad entries
};

// First min(len, L) tokens mapped through the vocabulary (unknown -> 1) in
// text order, zero-padded at the tail.
TokenSequence encode(const std::vector<std::string>& tokens, const Vocabulary& vocab);

// Percentage of texts with length strictly below each threshold.
std::vector<double> length_percentiles(const std::vector<std::size_t>& lengths,
                                       const std::vector<std::size_t>& thresholds);

}  // namespace ffn
