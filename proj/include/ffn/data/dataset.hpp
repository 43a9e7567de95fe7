#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffn/data/labels.hpp"

namespace ffn {

struct LabeledSample {
  std::string id;
  std::string title;
  std::optional<std::string> image_ref;  // file path (relative to the data
                                         // dir) or URL
  Label label = Label::True;
  Split split = Split::Train;
};

// Column names and the label-integer -> class mapping for a tab-separated
// input file. The default matches the public Fakeddit layout with integers
// 0..5 in the order true, misleading, manipulated, false connection,
// imposter, satire.
struct DatasetSchema {
  std::string id_col = "id";
  std::string title_col = "clean_title";
  std::string image_col = "image_url";
  std::string label_col = "6_way_label";
  std::array<Label, kNumClasses> label_map = {
      Label::True,         Label::MisleadingContent, Label::ManipulatedContent,
      Label::FalseConnection, Label::ImposterContent, Label::Satire};

  // Integer i maps to class with index i (the enum declaration order).
  static DatasetSchema identity();
};

enum class DataMode { Unimodal, Multimodal };

struct LoadResult {
  std::vector<LabeledSample> samples;
  struct Rejection {
    std::size_t row;  // 1-based data row (header not counted)
    std::string reason;
  };
  std::vector<Rejection> rejections;
};

// Parses a UTF-8 TSV with a header row. Rows with an unmappable label or a
// missing title are rejected with their row index; in multimodal mode rows
// without an image reference are rejected too. Row order is preserved.
// Throws DataError for a missing file or missing schema column.
LoadResult load_dataset(const std::string& path, const DatasetSchema& schema, Split split,
                        DataMode mode = DataMode::Unimodal);

struct ClassDistribution {
  std::array<std::uint64_t, kNumClasses> counts{};
  std::array<double, kNumClasses> proportions{};
  std::uint64_t total = 0;
};

ClassDistribution class_distribution(std::span<const LabeledSample> samples);

// Balanced synthetic dataset: per_class_count samples per class with
// class-correlated token patterns in the titles, deterministic in seed.
// When with_images, image_ref is set to "images/<id>.png"; the pixel
// content comes from synthetic_image() and is written by the caller.
std::vector<LabeledSample> generate_synthetic(std::uint64_t seed, std::size_t per_class_count,
                                              bool with_images);

// Writes train/validation/test TSVs (and PNGs when with_images) under dir,
// with per-split sample counts per_class, per_class/2, per_class/2.
void write_synthetic_dataset(const std::string& dir, std::uint64_t seed,
                             std::size_t per_class_count, bool with_images);

std::uint64_t file_fnv1a(const std::string& path);  // content hash, DataError if unreadable

}  // namespace ffn
