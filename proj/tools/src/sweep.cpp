#include "hibound_tools/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "hibound/error.hpp"

namespace hibound::tools {

std::vector<RunRecord> sweep(const AnyField& field, const SweepPlan& plan, const std::string& dataset) {
  if (plan.error_bounds.empty()) fail(ErrorCode::invalid_argument, "sweep needs at least one error bound");
  if (plan.modes.empty()) fail(ErrorCode::invalid_argument, "sweep needs at least one lossless mode");
  std::vector<RunRecord> records;
  records.reserve(plan.error_bounds.size() * plan.modes.size());
  for (double eb : plan.error_bounds) {
    for (LosslessMode mode : plan.modes) {
      CompressOptions options;
      options.mode = mode;
      options.reorder = plan.reorder;
      records.push_back(measure(field, {plan.bound_mode, eb}, options, dataset));
    }
  }
  return records;
}

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const std::vector<RunRecord>& records, const std::string& title) {
  constexpr double kWidth = 640, kHeight = 420;
  constexpr double kLeft = 70, kRight = 130, kTop = 40, kBottom = 55;
  constexpr double kPlotW = kWidth - kLeft - kRight, kPlotH = kHeight - kTop - kBottom;

  // Lossless points (infinite PSNR) are drawn at the top edge.
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& r : records) {
    xmin = std::min(xmin, r.bitrate);
    xmax = std::max(xmax, r.bitrate);
    if (std::isfinite(r.psnr)) {
      ymin = std::min(ymin, r.psnr);
      ymax = std::max(ymax, r.psnr);
    }
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1;
  if (!std::isfinite(ymin)) ymin = 0, ymax = 1;
  if (xmax - xmin < 1e-9) xmin -= 0.5, xmax += 0.5;
  if (ymax - ymin < 1e-9) ymin -= 0.5, ymax += 0.5;
  const double xpad = 0.05 * (xmax - xmin), ypad = 0.05 * (ymax - ymin);
  xmin = std::max(0.0, xmin - xpad), xmax += xpad, ymin -= ypad, ymax += ypad;

  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * kPlotW; };
  auto py = [&](double y) {
    if (!std::isfinite(y)) y = ymax;
    return kTop + (1.0 - (y - ymin) / (ymax - ymin)) * kPlotH;
  };

  std::map<LosslessMode, std::vector<const RunRecord*>> series;
  for (const auto& r : records) series[r.mode].push_back(&r);
  static const char* kColors[] = {"#1f77b4", "#d62728"};

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << fixed(kLeft + kPlotW / 2) << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
     << "font-size=\"14\">" << escape_xml(title) << "</text>\n"
     << "<rect x=\"" << fixed(kLeft) << "\" y=\"" << fixed(kTop) << "\" width=\"" << fixed(kPlotW) << "\" height=\""
     << fixed(kPlotH) << "\" fill=\"none\" stroke=\"black\"/>\n";

  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = xmin + (xmax - xmin) * i / kTicks;
    const double yv = ymin + (ymax - ymin) * i / kTicks;
    os << "<line x1=\"" << fixed(px(xv)) << "\" y1=\"" << fixed(kTop + kPlotH) << "\" x2=\"" << fixed(px(xv))
       << "\" y2=\"" << fixed(kTop + kPlotH + 5) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << fixed(px(xv)) << "\" y=\"" << fixed(kTop + kPlotH + 18)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << fixed(xv) << "</text>\n"
       << "<line x1=\"" << fixed(kLeft - 5) << "\" y1=\"" << fixed(py(yv)) << "\" x2=\"" << fixed(kLeft)
       << "\" y2=\"" << fixed(py(yv)) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << fixed(kLeft - 8) << "\" y=\"" << fixed(py(yv) + 3)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << fixed(yv) << "</text>\n";
  }
  os << "<text x=\"" << fixed(kLeft + kPlotW / 2) << "\" y=\"" << fixed(kHeight - 15)
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">bitrate (bits/value)</text>\n"
     << "<text x=\"18\" y=\"" << fixed(kTop + kPlotH / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
     << "font-size=\"12\" transform=\"rotate(-90 18 " << fixed(kTop + kPlotH / 2) << ")\">PSNR (dB)</text>\n";

  int index = 0;
  for (auto& [mode, points] : series) {
    std::sort(points.begin(), points.end(),
              [](const RunRecord* a, const RunRecord* b) { return a->bitrate < b->bitrate; });
    const char* color = kColors[index % 2];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
      os << (i ? " " : "") << fixed(px(points[i]->bitrate)) << ',' << fixed(py(points[i]->psnr));
    }
    os << "\"/>\n";
    for (const RunRecord* p : points) {
      os << "<circle cx=\"" << fixed(px(p->bitrate)) << "\" cy=\"" << fixed(py(p->psnr)) << "\" r=\"3\" fill=\""
         << color << "\"/>\n";
    }
    const double ly = kTop + 15 + 18 * index;
    os << "<line x1=\"" << fixed(kLeft + kPlotW + 15) << "\" y1=\"" << fixed(ly) << "\" x2=\""
       << fixed(kLeft + kPlotW + 40) << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << fixed(kLeft + kPlotW + 45) << "\" y=\"" << fixed(ly + 4)
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << to_string(mode) << " mode</text>\n";
    ++index;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace hibound::tools
