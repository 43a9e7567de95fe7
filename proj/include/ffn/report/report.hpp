#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ffn/data/dataset.hpp"
#include "ffn/data/image.hpp"
#include "ffn/eval/metrics.hpp"

namespace ffn {

// Human-readable table: one row per class (P, R, F1), micro/macro rows over
// the fake subset, then the overall accuracy row.
std::string format_report_table(const MetricsReport& report);

// Machine-readable variant with identical values.
std::string report_to_json(const MetricsReport& report);

void write_report_files(const MetricsReport& report, const std::string& out_dir,
                        const std::string& stem = "report");

// Grouped bar chart of per-split class distributions, rendered in-repo and
// written as PNG.
Image8 render_distribution_chart(const std::vector<std::pair<std::string, ClassDistribution>>& splits);

// Minimal 5x7 uppercase/digit text rasterizer used by the chart.
void draw_text(Image8& img, std::size_t x, std::size_t y, const std::string& text,
               std::uint8_t r, std::uint8_t g, std::uint8_t b);

}  // namespace ffn
