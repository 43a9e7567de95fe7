#pragma once

#include <span>
#include <string>
#include <vector>

#include "ffn/data/dataset.hpp"

namespace ffn {

enum class FetchStatus { Fetched, Cached, Failed };

inline const char* fetch_status_name(FetchStatus s) {
  switch (s) {
    case FetchStatus::Fetched: return "fetched";
    case FetchStatus::Cached: return "cached";
    case FetchStatus::Failed: return "failed";
  }
  return "?";
}

struct FetchRecord {
  std::string id;
  FetchStatus status = FetchStatus::Failed;
  std::string reason;  // empty unless failed
  std::string path;    // local file when fetched/cached
};

// Resolves each sample's image into cache_dir/<id>.<ext>. http(s) URLs are
// downloaded and validated as decodable images; already-cached ids are not
// re-fetched; non-URL references are checked on disk relative to base_dir.
// Failures are recorded, never thrown. The report is ordered by sample id.
std::vector<FetchRecord> fetch_images(std::span<const LabeledSample> samples,
                                      const std::string& cache_dir,
                                      const std::string& base_dir = "");

void write_fetch_report(const std::vector<FetchRecord>& report, const std::string& path);

}  // namespace ffn
