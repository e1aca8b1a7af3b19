#pragma once

#include <string>
#include <vector>

#include "qldpc/simulate.hpp"

namespace qldpc {

struct PlotSeries {
  std::string label;
  std::vector<WerRecord> records;
};

/// Self-contained log-log SVG of WER against p. Points with zero failures are skipped.
std::string render_wer_svg(const std::vector<PlotSeries>& series, const std::string& title = {});

}  // namespace qldpc
