#include "ffn/data/fetch.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#ifdef FFN_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include "ffn/core/errors.hpp"
#include "ffn/data/image.hpp"

namespace ffn {

namespace fs = std::filesystem;

namespace {

bool is_url(const std::string& ref) {
  return ref.rfind("http://", 0) == 0 || ref.rfind("https://", 0) == 0;
}

// host[:port] and path split of an http(s) URL. httplib's Client accepts the
// scheme+host part directly.
bool split_url(const std::string& url, std::string& origin, std::string& path) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) return false;
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    origin = url;
    path = "/";
  } else {
    origin = url.substr(0, path_start);
    path = url.substr(path_start);
  }
  return true;
}

std::string url_extension(const std::string& url) {
  const auto q = url.find_first_of("?#");
  const std::string clean = q == std::string::npos ? url : url.substr(0, q);
  const auto dot = clean.find_last_of('.');
  const auto slash = clean.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return "png";
  std::string ext = clean.substr(dot + 1);
  if (ext.empty() || ext.size() > 5) return "png";
  return ext;
}

fs::path find_cached(const fs::path& cache_dir, const std::string& id) {
  for (const char* ext : {"png", "jpg", "jpeg"}) {
    fs::path p = cache_dir / (id + "." + ext);
    if (fs::exists(p)) return p;
  }
  return {};
}

}  // namespace

std::vector<FetchRecord> fetch_images(std::span<const LabeledSample> samples,
                                      const std::string& cache_dir,
                                      const std::string& base_dir) {
  fs::create_directories(cache_dir);
  std::vector<FetchRecord> report;
  report.reserve(samples.size());
  for (const auto& s : samples) {
    FetchRecord rec;
    rec.id = s.id;
    if (!s.image_ref) {
      rec.status = FetchStatus::Failed;
      rec.reason = "no image reference";
      report.push_back(std::move(rec));
      continue;
    }
    const std::string& ref = *s.image_ref;
    if (!is_url(ref)) {
      fs::path local = base_dir.empty() ? fs::path(ref) : fs::path(base_dir) / ref;
      if (fs::exists(local)) {
        rec.status = FetchStatus::Cached;
        rec.path = local.string();
      } else {
        rec.status = FetchStatus::Failed;
        rec.reason = "local file missing: " + local.string();
      }
      report.push_back(std::move(rec));
      continue;
    }
    if (fs::path hit = find_cached(cache_dir, s.id); !hit.empty()) {
      rec.status = FetchStatus::Cached;
      rec.path = hit.string();
      report.push_back(std::move(rec));
      continue;
    }
    std::string origin, path;
    if (!split_url(ref, origin, path)) {
      rec.status = FetchStatus::Failed;
      rec.reason = "malformed url";
      report.push_back(std::move(rec));
      continue;
    }
#ifndef FFN_HAVE_OPENSSL
    if (ref.rfind("https://", 0) == 0) {
      rec.status = FetchStatus::Failed;
      rec.reason = "https not supported in this build";
      report.push_back(std::move(rec));
      continue;
    }
#endif
    httplib::Client client(origin);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    client.set_follow_location(true);
    auto res = client.Get(path);
    if (!res || res->status != 200) {
      rec.status = FetchStatus::Failed;
      rec.reason = !res ? "network error: " + httplib::to_string(res.error())
                        : "http status " + std::to_string(res->status);
      report.push_back(std::move(rec));
      continue;
    }
    std::vector<std::uint8_t> bytes(res->body.begin(), res->body.end());
    if (!try_decode_image_bytes(bytes)) {
      rec.status = FetchStatus::Failed;
      rec.reason = "undecodable payload";
      report.push_back(std::move(rec));
      continue;
    }
    fs::path out = fs::path(cache_dir) / (s.id + "." + url_extension(ref));
    std::ofstream f(out, std::ios::binary);
    f.write(res->body.data(), static_cast<std::streamsize>(res->body.size()));
    if (!f) {
      rec.status = FetchStatus::Failed;
      rec.reason = "cannot write " + out.string();
    } else {
      rec.status = FetchStatus::Fetched;
      rec.path = out.string();
    }
    report.push_back(std::move(rec));
  }
  std::sort(report.begin(), report.end(),
            [](const FetchRecord& a, const FetchRecord& b) { return a.id < b.id; });
  return report;
}

void write_fetch_report(const std::vector<FetchRecord>& report, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write fetch report to " + path);
  f << "id\tstatus\treason\n";
  for (const auto& r : report) {
    f << r.id << '\t' << fetch_status_name(r.status) << '\t' << r.reason << '\n';
  }
}

}  // namespace ffn
