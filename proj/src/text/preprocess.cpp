#include "ffn/text/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "ffn/core/errors.hpp"
#include "ffn/core/hash.hpp"

namespace ffn {

namespace {

bool is_ascii_punct(unsigned char c) { return c < 128 && std::ispunct(c); }

bool all_digits(const std::string& t) {
  if (t.empty()) return false;
  return std::all_of(t.begin(), t.end(),
                     [](unsigned char c) { return c >= '0' && c <= '9'; });
}

std::string strip_boundary_punct(const std::string& t) {
  std::size_t b = 0, e = t.size();
  while (b < e && is_ascii_punct(static_cast<unsigned char>(t[b]))) ++b;
  while (e > b && is_ascii_punct(static_cast<unsigned char>(t[e - 1]))) --e;
  return t.substr(b, e - b);
}

}  // namespace

std::vector<std::string> clean_text(const std::string& raw, const CleaningConfig& config) {
  std::vector<std::string> out;
  std::istringstream in(raw);
  std::string tok;
  while (in >> tok) {  // collapses any run of whitespace
    if (config.lowercase) {
      std::transform(tok.begin(), tok.end(), tok.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
      });
    }
    tok = strip_boundary_punct(tok);
    if (tok.empty()) continue;
    if (all_digits(tok)) continue;
    if (config.stopwords.count(tok)) continue;
    if (config.lemmatizer) tok = config.lemmatizer(tok);
    if (tok.empty()) continue;
    out.push_back(tok);
  }
  return out;
}

Vocabulary Vocabulary::build(const std::vector<std::vector<std::string>>& corpus) {
  std::map<std::string, std::size_t> freq;
  for (const auto& doc : corpus) {
    for (const auto& t : doc) ++freq[t];
  }
  std::vector<std::pair<std::string, std::size_t>> order(freq.begin(), freq.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  Vocabulary v;
  v.words_.reserve(order.size());
  for (const auto& [word, _] : order) {
    v.word_to_id_[word] = static_cast<int>(v.words_.size()) + 2;
    v.words_.push_back(word);
  }
  return v;
}

int Vocabulary::id(const std::string& word) const {
  auto it = word_to_id_.find(word);
  return it == word_to_id_.end() ? kUnkId : it->second;
}

const std::string& Vocabulary::word(int id) const {
  static const std::string pad = "<pad>", unk = "<unk>", bad = "<invalid>";
  if (id == kPadId) return pad;
  if (id == kUnkId) return unk;
  std::size_t i = static_cast<std::size_t>(id) - 2;
  return i < words_.size() ? words_[i] : bad;
}

std::string Vocabulary::serialize() const {
  std::string out = "<pad>\t0\n<unk>\t1\n";
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out += words_[i];
    out += '\t';
    out += std::to_string(i + 2);
    out += '\n';
  }
  return out;
}

Vocabulary Vocabulary::deserialize(const std::string& text) {
  Vocabulary v;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError("vocabulary line " + std::to_string(lineno) + ": missing tab");
    }
    std::string word = line.substr(0, tab);
    int id = std::stoi(line.substr(tab + 1));
    if (id == kPadId || id == kUnkId) continue;  // reserved header lines
    if (id != static_cast<int>(v.words_.size()) + 2) {
      throw DataError("vocabulary ids must be contiguous from 2; got " +
                      std::to_string(id) + " at line " + std::to_string(lineno));
    }
    v.word_to_id_[word] = id;
    v.words_.push_back(word);
  }
  return v;
}

void Vocabulary::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write vocabulary to " + path);
  f << serialize();
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot read vocabulary from " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return deserialize(buf.str());
}

std::uint64_t Vocabulary::hash() const { return fnv1a64(serialize()); }

TokenSequence encode(const std::vector<std::string>& tokens, const Vocabulary& vocab) {
  TokenSequence seq;
  const std::size_t n = std::min(tokens.size(), kSeqLen);
  for (std::size_t i = 0; i < n; ++i) seq.ids[i] = vocab.id(tokens[i]);
  seq.effective_length = n;
  return seq;
}

std::vector<double> length_percentiles(const std::vector<std::size_t>& lengths,
                                       const std::vector<std::size_t>& thresholds) {
  if (lengths.empty()) throw DataError("length_percentiles: empty corpus");
  std::vector<double> out;
  out.reserve(thresholds.size());
  for (std::size_t t : thresholds) {
    std::size_t below = 0;
    for (std::size_t len : lengths) {
      if (len < t) ++below;
    }
    out.push_back(100.0 * static_cast<double>(below) / static_cast<double>(lengths.size()));
  }
  return out;
}

}  // namespace ffn
