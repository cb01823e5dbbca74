#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "mdalign/harness.hpp"

namespace mdalign {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 300.0;
constexpr double kMarginLeft = 40.0;
constexpr double kMarginRight = 10.0;
constexpr double kMarginTop = 10.0;
constexpr double kMarginBottom = 25.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string render_plot(const ClipResult& clip, const AlignmentParams& params) {
  const std::vector<double>& v = clip.smoothed_velocity;
  const double duration =
      clip.fps > 0.0 ? static_cast<double>(v.size()) / clip.fps : 1.0;
  const double vmax =
      v.empty() ? 1.0 : std::max(1e-12, *std::max_element(v.begin(), v.end()));

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto sx = [&](double t) { return kMarginLeft + plot_w * t / duration; };
  auto sy = [&](double val) {
    return kMarginTop + plot_h * (1.0 - val / vmax);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" fill=\"white\"/>\n";

  // +-tau hit bands around each beat
  for (double b : clip.beats) {
    const double x0 = sx(std::max(0.0, b - params.tau));
    const double x1 = sx(std::min(duration, b + params.tau));
    svg << "<rect x=\"" << num(x0) << "\" y=\"" << num(kMarginTop)
        << "\" width=\"" << num(x1 - x0) << "\" height=\"" << num(plot_h)
        << "\" fill=\"#cfe3f7\"/>\n";
  }

  // beat lines
  for (double b : clip.beats) {
    svg << "<line x1=\"" << num(sx(b)) << "\" y1=\"" << num(kMarginTop)
        << "\" x2=\"" << num(sx(b)) << "\" y2=\""
        << num(kMarginTop + plot_h)
        << "\" stroke=\"#2b6cb0\" stroke-width=\"1\"/>\n";
  }

  // smoothed velocity curve
  if (!v.empty() && clip.fps > 0.0) {
    svg << "<polyline fill=\"none\" stroke=\"#222222\" stroke-width=\"1.5\" "
           "points=\"";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) svg << ' ';
      svg << num(sx(i / clip.fps)) << ',' << num(sy(v[i]));
    }
    svg << "\"/>\n";
  }

  // accent markers
  for (double m : clip.accents) {
    double val = 0.0;
    if (clip.fps > 0.0 && !v.empty()) {
      const auto idx = std::min(
          v.size() - 1, static_cast<std::size_t>(std::lround(m * clip.fps)));
      val = v[idx];
    }
    svg << "<circle cx=\"" << num(sx(m)) << "\" cy=\"" << num(sy(val))
        << "\" r=\"4\" fill=\"#c53030\"/>\n";
  }

  // axis line + clip label
  svg << "<line x1=\"" << num(kMarginLeft) << "\" y1=\""
      << num(kMarginTop + plot_h) << "\" x2=\"" << num(kMarginLeft + plot_w)
      << "\" y2=\"" << num(kMarginTop + plot_h)
      << "\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
  svg << "<text x=\"" << num(kMarginLeft) << "\" y=\"" << num(kHeight - 8.0)
      << "\" font-family=\"monospace\" font-size=\"12\">" << clip.entry.clip_id
      << " (" << num(duration) << " s)</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace mdalign
