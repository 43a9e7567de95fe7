#include "ffn/data/dataset.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ffn/core/errors.hpp"
#include "ffn/core/hash.hpp"
#include "ffn/core/rng.hpp"
#include "ffn/data/image.hpp"

namespace ffn {

namespace fs = std::filesystem;

DatasetSchema DatasetSchema::identity() {
  DatasetSchema s;
  for (std::size_t i = 0; i < kNumClasses; ++i) s.label_map[i] = static_cast<Label>(i);
  return s;
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r') {
    out.back().pop_back();
  }
  return out;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name,
                         const std::string& path) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw DataError("column '" + name + "' missing from header of " + path);
  }
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

LoadResult load_dataset(const std::string& path, const DatasetSchema& schema, Split split,
                        DataMode mode) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open dataset file " + path);
  std::string line;
  if (!std::getline(f, line)) throw DataError("dataset file " + path + " has no header");
  const auto header = split_tabs(line);
  const std::size_t id_i = column_index(header, schema.id_col, path);
  const std::size_t title_i = column_index(header, schema.title_col, path);
  const std::size_t image_i = column_index(header, schema.image_col, path);
  const std::size_t label_i = column_index(header, schema.label_col, path);

  LoadResult result;
  std::size_t row = 0;
  while (std::getline(f, line)) {
    ++row;
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    auto field = [&](std::size_t i) -> std::string {
      return i < fields.size() ? fields[i] : std::string();
    };
    const std::string label_str = field(label_i);
    int label_int = -1;
    try {
      std::size_t used = 0;
      label_int = std::stoi(label_str, &used);
      if (used != label_str.size()) label_int = -1;
    } catch (const std::exception&) {
      label_int = -1;
    }
    if (label_int < 0 || label_int >= static_cast<int>(kNumClasses)) {
      result.rejections.push_back({row, "unmappable label '" + label_str + "'"});
      continue;
    }
    LabeledSample s;
    s.id = field(id_i);
    s.title = field(title_i);
    if (s.title.empty()) {
      result.rejections.push_back({row, "missing title"});
      continue;
    }
    const std::string image = field(image_i);
    if (!image.empty() && image != "nan") s.image_ref = image;
    if (mode == DataMode::Multimodal && !s.image_ref) {
      result.rejections.push_back({row, "missing image reference"});
      continue;
    }
    s.label = schema.label_map[static_cast<std::size_t>(label_int)];
    s.split = split;
    result.samples.push_back(std::move(s));
  }
  return result;
}

ClassDistribution class_distribution(std::span<const LabeledSample> samples) {
  if (samples.empty()) throw DataError("class_distribution: empty sample sequence");
  ClassDistribution d;
  for (const auto& s : samples) {
    d.counts[static_cast<std::size_t>(s.label)]++;
  }
  d.total = samples.size();
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    d.proportions[c] = static_cast<double>(d.counts[c]) / static_cast<double>(d.total);
  }
  return d;
}

namespace {

const std::vector<std::vector<std::string>>& class_tokens() {
  static const std::vector<std::vector<std::string>> pools = {
      {"verified", "official", "confirmed", "accurate", "factual", "genuine",
       "reliable", "documented"},
      {"photoshopped", "doctored", "edited", "altered", "retouched", "spliced",
       "fabricated", "tampered"},
      {"unrelated", "mismatched", "clickbait", "disconnected", "irrelevant",
       "misattributed", "offtopic", "baited"},
      {"parody", "humorous", "ironic", "spoof", "comedic", "satirical", "jest",
       "mockery"},
      {"distorted", "exaggerated", "twisted", "slanted", "overstated", "spun",
       "inflated", "skewed"},
      {"bot", "automated", "generated", "spam", "impostor", "cloned",
       "scripted", "synthetic"},
  };
  return pools;
}

const std::vector<std::string>& filler_tokens() {
  static const std::vector<std::string> fillers = {
      "report", "story", "headline", "update", "today",  "city",
      "world",  "people", "market",  "photo",  "weather", "science"};
  return fillers;
}

}  // namespace

std::vector<LabeledSample> generate_synthetic(std::uint64_t seed, std::size_t per_class_count,
                                              bool with_images) {
  if (per_class_count < 1) throw DataError("generate_synthetic: per_class_count must be >= 1");
  Rng rng(mix64(seed));
  std::vector<LabeledSample> out;
  out.reserve(per_class_count * kNumClasses);
  for (std::size_t cls = 0; cls < kNumClasses; ++cls) {
    const auto& pool = class_tokens()[cls];
    for (std::size_t i = 0; i < per_class_count; ++i) {
      LabeledSample s;
      {
        std::ostringstream id;
        id << "s" << (seed % 100000) << "c" << cls << "i";
        id.width(4);
        id.fill('0');
        id << i;
        s.id = id.str();
      }
      std::ostringstream title;
      const std::size_t n_class = 2 + rng.uniform_index(3);   // 2..4 class words
      const std::size_t n_fill = 2 + rng.uniform_index(4);    // 2..5 fillers
      for (std::size_t k = 0; k < n_class + n_fill; ++k) {
        if (k) title << ' ';
        if (k < n_class) {
          title << pool[rng.uniform_index(pool.size())];
        } else {
          title << filler_tokens()[rng.uniform_index(filler_tokens().size())];
        }
      }
      // Occasional number and stopword tokens; the cleaning pipeline is
      // expected to drop them.
      if (rng.uniform_index(3) == 0) title << ' ' << rng.uniform_index(1000);
      if (rng.uniform_index(3) == 0) title << " the";
      s.title = title.str();
      s.label = static_cast<Label>(cls);
      s.split = Split::Train;
      if (with_images) s.image_ref = "images/" + s.id + ".png";
      out.push_back(std::move(s));
    }
  }
  return out;
}

void write_synthetic_dataset(const std::string& dir, std::uint64_t seed,
                             std::size_t per_class_count, bool with_images) {
  fs::create_directories(dir);
  if (with_images) fs::create_directories(fs::path(dir) / "images");
  const DatasetSchema schema;  // default column names and mapping
  std::array<Label, kNumClasses> inverse{};
  for (std::size_t i = 0; i < kNumClasses; ++i) inverse[i] = schema.label_map[i];
  auto label_int = [&](Label l) {
    for (std::size_t i = 0; i < kNumClasses; ++i) {
      if (inverse[i] == l) return i;
    }
    return std::size_t{0};
  };

  const struct {
    Split split;
    const char* file;
    std::uint64_t seed_salt;
    std::size_t count;
  } parts[] = {
      {Split::Train, "train.tsv", 0, per_class_count},
      {Split::Validation, "validation.tsv", 1, std::max<std::size_t>(1, per_class_count / 2)},
      {Split::Test, "test.tsv", 2, std::max<std::size_t>(1, per_class_count / 2)},
  };
  for (const auto& part : parts) {
    auto samples = generate_synthetic(mix64(seed + part.seed_salt), part.count, with_images);
    std::ofstream f(fs::path(dir) / part.file, std::ios::binary);
    if (!f) throw DataError("cannot write synthetic dataset under " + dir);
    f << schema.id_col << '\t' << schema.title_col << '\t' << schema.image_col << '\t'
      << schema.label_col << '\n';
    for (auto& s : samples) {
      s.split = part.split;
      f << s.id << '\t' << s.title << '\t' << (s.image_ref ? *s.image_ref : "") << '\t'
        << label_int(s.label) << '\n';
      if (with_images) {
        const Image8 img = synthetic_image(s.label, fnv1a64(s.id));
        write_png((fs::path(dir) / *s.image_ref).string(), img);
      }
    }
  }
}

std::uint64_t file_fnv1a(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot read " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return fnv1a64(buf.str());
}

}  // namespace ffn
