#include "qldpc/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "qldpc/error.hpp"

namespace qldpc {

namespace {

constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

std::string render_wer_svg(const std::vector<PlotSeries>& series, const std::string& title) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = 0;
  double ymin = std::numeric_limits<double>::infinity(), ymax = 0;
  for (const auto& s : series) {
    for (const auto& r : s.records) {
      if (r.failures == 0 || r.p <= 0) continue;
      xmin = std::min(xmin, r.p);
      xmax = std::max(xmax, r.p);
      ymin = std::min(ymin, r.wer);
      ymax = std::max(ymax, r.wer);
    }
  }
  if (!(xmax > 0)) throw Error(ErrorKind::InvalidArgument, "nothing to plot: no point has failures");

  const double lx0 = std::floor(std::log10(xmin)), lx1 = std::max(std::ceil(std::log10(xmax)), lx0 + 1);
  const double ly0 = std::floor(std::log10(ymin)), ly1 = std::max(std::ceil(std::log10(ymax)), ly0 + 1);
  constexpr double W = 640, H = 480, L = 70, R = 20, T = 40, B = 60;
  auto px = [&](double x) { return L + (std::log10(x) - lx0) / (lx1 - lx0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (std::log10(y) - ly0) / (ly1 - ly0) * (H - T - B); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title) << "</text>\n";

  for (double e = lx0; e <= lx1; e += 1) {
    for (int k = 1; k < 10 && e + std::log10(k) <= lx1; ++k) {
      const double x = px(k * std::pow(10.0, e));
      o << "<line x1=\"" << x << "\" y1=\"" << T << "\" x2=\"" << x << "\" y2=\"" << H - B << "\" stroke=\"#ddd\""
        << (k == 1 ? "" : " stroke-dasharray=\"2,3\"") << "/>\n";
    }
    o << "<text x=\"" << px(std::pow(10.0, e)) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">1e" << e << "</text>\n";
  }
  for (double e = ly0; e <= ly1; e += 1) {
    const double y = py(std::pow(10.0, e));
    o << "<line x1=\"" << L << "\" y1=\"" << y << "\" x2=\"" << W - R << "\" y2=\"" << y << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << L - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << e << "</text>\n";
  }
  o << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 18 << "\" text-anchor=\"middle\">Physical error rate</text>\n";
  o << "<text transform=\"translate(18," << (T + H - B) / 2 << ") rotate(-90)\" text-anchor=\"middle\">WER</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kColors[i % std::size(kColors)];
    std::vector<WerRecord> pts;
    for (const auto& r : series[i].records) {
      if (r.failures > 0 && r.p > 0) pts.push_back(r);
    }
    std::sort(pts.begin(), pts.end(), [](const WerRecord& a, const WerRecord& b) { return a.p < b.p; });
    if (pts.empty()) continue;
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& r : pts) o << fmt("%.2f", px(r.p)) << "," << fmt("%.2f", py(r.wer)) << " ";
    o << "\"/>\n";
    for (const auto& r : pts) {
      o << "<circle cx=\"" << fmt("%.2f", px(r.p)) << "\" cy=\"" << fmt("%.2f", py(r.wer)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double ly = T + 16 + 16 * static_cast<double>(i);
    o << "<line x1=\"" << L + 10 << "\" y1=\"" << ly << "\" x2=\"" << L + 30 << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << L + 36 << "\" y=\"" << ly + 4 << "\">" << escape(series[i].label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace qldpc
