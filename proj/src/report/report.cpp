#include "ffn/report/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "ffn/core/errors.hpp"

namespace ffn {

namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

std::string format_report_table(const MetricsReport& report) {
  std::string out;
  char line[128];
  std::snprintf(line, sizeof(line), "%-22s %6s %6s %6s\n", "Class", "P", "R", "F1");
  out += line;
  out += std::string(43, '-') + "\n";
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    std::snprintf(line, sizeof(line), "%-22s %6s %6s %6s\n",
                  label_display_name(static_cast<Label>(c)),
                  fixed2(report.per_class.precision[c]).c_str(),
                  fixed2(report.per_class.recall[c]).c_str(),
                  fixed2(report.per_class.f1[c]).c_str());
    out += line;
  }
  out += std::string(43, '-') + "\n";
  std::snprintf(line, sizeof(line), "%-22s %6s %6s %6s\n", "micro-average (fake)",
                fixed2(report.fake.micro_p).c_str(), fixed2(report.fake.micro_r).c_str(),
                fixed2(report.fake.micro_f1).c_str());
  out += line;
  std::snprintf(line, sizeof(line), "%-22s %6s %6s %6s\n", "macro-average (fake)",
                fixed2(report.fake.macro_p).c_str(), fixed2(report.fake.macro_r).c_str(),
                fixed2(report.fake.macro_f1).c_str());
  out += line;
  std::snprintf(line, sizeof(line), "%-22s %6s\n", "accuracy",
                fixed2(report.accuracy).c_str());
  out += line;
  return out;
}

std::string report_to_json(const MetricsReport& report) {
  nlohmann::ordered_json j;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    nlohmann::ordered_json row;
    row["precision"] = report.per_class.precision[c];
    row["recall"] = report.per_class.recall[c];
    row["f1"] = report.per_class.f1[c];
    j["per_class"][label_name(static_cast<Label>(c))] = row;
  }
  j["accuracy"] = report.accuracy;
  j["fake_micro"] = {{"precision", report.fake.micro_p},
                     {"recall", report.fake.micro_r},
                     {"f1", report.fake.micro_f1}};
  j["fake_macro"] = {{"precision", report.fake.macro_p},
                     {"recall", report.fake.macro_r},
                     {"f1", report.fake.macro_f1}};
  auto& cm = j["confusion_matrix"];
  for (std::size_t g = 0; g < kNumClasses; ++g) {
    cm.push_back(std::vector<std::uint64_t>(report.cm.m[g].begin(), report.cm.m[g].end()));
  }
  return j.dump(2) + "\n";
}

void write_report_files(const MetricsReport& report, const std::string& out_dir,
                        const std::string& stem) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  {
    std::ofstream f(fs::path(out_dir) / (stem + ".txt"), std::ios::binary);
    if (!f) throw DataError("cannot write report under " + out_dir);
    f << format_report_table(report);
  }
  {
    std::ofstream f(fs::path(out_dir) / (stem + ".json"), std::ios::binary);
    if (!f) throw DataError("cannot write report under " + out_dir);
    f << report_to_json(report);
  }
}

// ---------------------------------------------------------------------------
// Chart rendering
// ---------------------------------------------------------------------------

namespace {

// 5x7 glyphs for A-Z, 0-9; each byte is one row, low 5 bits used.
const std::uint8_t* glyph(char c) {
  static const std::uint8_t font[36][7] = {
      {0x0e, 0x11, 0x11, 0x1f, 0x11, 0x11, 0x11}, {0x1e, 0x11, 0x1e, 0x11, 0x11, 0x11, 0x1e},
      {0x0e, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0e}, {0x1e, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1e},
      {0x1f, 0x10, 0x1e, 0x10, 0x10, 0x10, 0x1f}, {0x1f, 0x10, 0x1e, 0x10, 0x10, 0x10, 0x10},
      {0x0e, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0f}, {0x11, 0x11, 0x1f, 0x11, 0x11, 0x11, 0x11},
      {0x0e, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0e}, {0x01, 0x01, 0x01, 0x01, 0x11, 0x11, 0x0e},
      {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11}, {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1f},
      {0x11, 0x1b, 0x15, 0x15, 0x11, 0x11, 0x11}, {0x11, 0x19, 0x15, 0x13, 0x11, 0x11, 0x11},
      {0x0e, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0e}, {0x1e, 0x11, 0x11, 0x1e, 0x10, 0x10, 0x10},
      {0x0e, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0d}, {0x1e, 0x11, 0x11, 0x1e, 0x14, 0x12, 0x11},
      {0x0f, 0x10, 0x10, 0x0e, 0x01, 0x01, 0x1e}, {0x1f, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04},
      {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0e}, {0x11, 0x11, 0x11, 0x11, 0x11, 0x0a, 0x04},
      {0x11, 0x11, 0x11, 0x15, 0x15, 0x1b, 0x11}, {0x11, 0x0a, 0x04, 0x04, 0x04, 0x0a, 0x11},
      {0x11, 0x11, 0x0a, 0x04, 0x04, 0x04, 0x04}, {0x1f, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1f},
      {0x0e, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0e}, {0x04, 0x0c, 0x04, 0x04, 0x04, 0x04, 0x0e},
      {0x0e, 0x11, 0x01, 0x06, 0x08, 0x10, 0x1f}, {0x0e, 0x11, 0x01, 0x06, 0x01, 0x11, 0x0e},
      {0x02, 0x06, 0x0a, 0x12, 0x1f, 0x02, 0x02}, {0x1f, 0x10, 0x1e, 0x01, 0x01, 0x11, 0x0e},
      {0x06, 0x08, 0x10, 0x1e, 0x11, 0x11, 0x0e}, {0x1f, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08},
      {0x0e, 0x11, 0x11, 0x0e, 0x11, 0x11, 0x0e}, {0x0e, 0x11, 0x11, 0x0f, 0x01, 0x02, 0x0c},
  };
  if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  if (c >= 'A' && c <= 'Z') return font[c - 'A'];
  if (c >= '0' && c <= '9') return font[26 + (c - '0')];
  return nullptr;
}

void fill_rect(Image8& img, std::size_t x0, std::size_t y0, std::size_t w, std::size_t h,
               std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  for (std::size_t y = y0; y < y0 + h && y < img.height; ++y) {
    for (std::size_t x = x0; x < x0 + w && x < img.width; ++x) {
      img.at(y, x, 0) = r;
      img.at(y, x, 1) = g;
      img.at(y, x, 2) = b;
    }
  }
}

}  // namespace

void draw_text(Image8& img, std::size_t x, std::size_t y, const std::string& text,
               std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  std::size_t cx = x;
  for (char c : text) {
    const std::uint8_t* gl = glyph(c);
    if (gl != nullptr) {
      for (std::size_t row = 0; row < 7; ++row) {
        for (std::size_t col = 0; col < 5; ++col) {
          if (gl[row] & (0x10 >> col)) {
            const std::size_t px = cx + col, py = y + row;
            if (px < img.width && py < img.height) {
              img.at(py, px, 0) = r;
              img.at(py, px, 1) = g;
              img.at(py, px, 2) = b;
            }
          }
        }
      }
    }
    cx += 6;
  }
}

Image8 render_distribution_chart(
    const std::vector<std::pair<std::string, ClassDistribution>>& splits) {
  static constexpr std::uint8_t colors[kNumClasses][3] = {
      {70, 160, 70},  {200, 80, 60},  {70, 100, 200},
      {210, 190, 60}, {150, 80, 180}, {70, 180, 180},
  };
  const std::size_t bar_w = 18, gap = 6, group_gap = 40;
  const std::size_t group_w = kNumClasses * (bar_w + gap) + group_gap;
  const std::size_t margin = 30, chart_h = 220;
  Image8 img;
  img.width = margin * 2 + group_w * std::max<std::size_t>(1, splits.size());
  img.height = chart_h + 70;
  img.rgb.assign(img.width * img.height * 3, 245);

  double max_prop = 0;
  for (const auto& [_, dist] : splits) {
    for (double p : dist.proportions) max_prop = std::max(max_prop, p);
  }
  if (max_prop <= 0) max_prop = 1;

  // Baseline.
  fill_rect(img, margin / 2, margin + chart_h, img.width - margin, 1, 60, 60, 60);

  for (std::size_t s = 0; s < splits.size(); ++s) {
    const auto& [name, dist] = splits[s];
    const std::size_t gx = margin + s * group_w;
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      const auto h = static_cast<std::size_t>(dist.proportions[c] / max_prop *
                                              static_cast<double>(chart_h));
      const std::size_t x = gx + c * (bar_w + gap);
      fill_rect(img, x, margin + chart_h - h, bar_w, h, colors[c][0], colors[c][1],
                colors[c][2]);
      draw_text(img, x + 3, margin + chart_h + 6, std::to_string(c), 40, 40, 40);
    }
    draw_text(img, gx, margin + chart_h + 22, name, 20, 20, 20);
  }
  draw_text(img, margin / 2, 8, "class distribution by split", 20, 20, 20);
  return img;
}

}  // namespace ffn
