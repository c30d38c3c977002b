#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "lowreg/harness.hpp"

namespace lowreg {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string norm_suffix(double r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", r);
  return buf;
}

namespace {

void write_csv(const ConvergenceReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  if (!out) throw std::runtime_error("cannot open CSV for writing: " + path);
  out << "scheme,d,K,T,theta_u,theta_V,r,tau,error,order_fit,seed\n";
  const ExperimentConfig& cfg = report.config;
  for (std::size_t ri = 0; ri < report.norms.size(); ++ri) {
    const NormResult& nr = report.norms[ri];
    int ok_count = 0;
    for (const TauResult& run : report.runs)
      if (run.status == RunStatus::Ok) ++ok_count;
    for (const TauResult& run : report.runs) {
      if (run.status != RunStatus::Ok) continue;
      out << scheme_name(cfg.scheme) << ',' << cfg.dim << ',' << cfg.modes
          << ',' << format_double(cfg.T) << ',' << format_double(cfg.theta_u)
          << ',' << format_double(cfg.theta_v) << ',' << format_double(nr.r)
          << ',' << format_double(run.tau) << ','
          << format_double(run.errors[ri]) << ',';
      if (ok_count >= 2) out << format_double(nr.fit.trimmed.order);
      out << ',' << cfg.seed << '\n';
    }
  }
  if (!out) throw std::runtime_error("failed while writing CSV: " + path);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

// Minimal log-log line plot with slope-1 and slope-2 guide lines.
void write_svg(const ConvergenceReport& report, std::size_t ri,
               const std::string& path) {
  const NormResult& nr = report.norms[ri];
  std::vector<std::pair<double, double>> pts;
  for (const TauResult& run : report.runs)
    if (run.status == RunStatus::Ok && run.errors[ri] > 0.0)
      pts.emplace_back(std::log10(run.tau), std::log10(run.errors[ri]));

  const double width = 560, height = 420;
  const double ml = 70, mr = 20, mt = 30, mb = 50;

  double x0 = -4, x1 = -1, y0 = -8, y1 = 0;
  if (!pts.empty()) {
    x0 = y0 = std::numeric_limits<double>::infinity();
    x1 = y1 = -std::numeric_limits<double>::infinity();
    for (auto& [x, y] : pts) {
      x0 = std::min(x0, x); x1 = std::max(x1, x);
      y0 = std::min(y0, y); y1 = std::max(y1, y);
    }
    const double padx = 0.05 * std::max(1e-3, x1 - x0);
    // Leave headroom for the guide lines above the data.
    const double pady = 0.05 * std::max(1e-3, y1 - y0);
    x0 -= padx; x1 += padx;
    y0 -= pady; y1 += (y1 - y0) * 0.25 + pady;
  }

  auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (width - ml - mr); };
  auto py = [&](double y) { return height - mb - (y - y0) / (y1 - y0) * (height - mt - mb); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const ExperimentConfig& cfg = report.config;
  svg << "<text x=\"" << fmt(width / 2) << "\" y=\"18\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"13\">" << scheme_name(cfg.scheme)
      << ", theta_u=" << norm_suffix(cfg.theta_u) << ", theta_V="
      << norm_suffix(cfg.theta_v) << ", H^" << norm_suffix(nr.r)
      << " error at T=" << norm_suffix(cfg.T) << "</text>\n";

  // Axes box.
  svg << "<rect x=\"" << fmt(ml) << "\" y=\"" << fmt(mt) << "\" width=\""
      << fmt(width - ml - mr) << "\" height=\"" << fmt(height - mt - mb)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Decade ticks.
  for (int e = static_cast<int>(std::ceil(x0)); e <= static_cast<int>(std::floor(x1)); ++e) {
    svg << "<line x1=\"" << fmt(px(e)) << "\" y1=\"" << fmt(height - mb)
        << "\" x2=\"" << fmt(px(e)) << "\" y2=\"" << fmt(height - mb + 5)
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fmt(px(e)) << "\" y=\"" << fmt(height - mb + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">1e"
        << e << "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(y0)); e <= static_cast<int>(std::floor(y1)); ++e) {
    svg << "<line x1=\"" << fmt(ml - 5) << "\" y1=\"" << fmt(py(e))
        << "\" x2=\"" << fmt(ml) << "\" y2=\"" << fmt(py(e))
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fmt(ml - 8) << "\" y=\"" << fmt(py(e) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e"
        << e << "</text>\n";
  }
  svg << "<text x=\"" << fmt((ml + width - mr) / 2) << "\" y=\""
      << fmt(height - 12)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">tau</text>\n";
  svg << "<text x=\"16\" y=\"" << fmt((mt + height - mb) / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
      << "transform=\"rotate(-90 16 " << fmt((mt + height - mb) / 2)
      << ")\">error</text>\n";

  if (!pts.empty()) {
    // Guide lines through the largest-tau data point, offset upward.
    const auto anchor = *std::max_element(
        pts.begin(), pts.end(),
        [](const auto& a, const auto& b) { return a.first < b.first; });
    for (int slope = 1; slope <= 2; ++slope) {
      const double c = anchor.second + 0.15 * slope - slope * anchor.first;
      const double ya = slope * x0 + c, yb = slope * x1 + c;
      svg << "<line x1=\"" << fmt(px(x0)) << "\" y1=\"" << fmt(py(ya))
          << "\" x2=\"" << fmt(px(x1)) << "\" y2=\"" << fmt(py(yb))
          << "\" stroke=\"gray\" stroke-dasharray=\"" << (slope == 1 ? "6 3" : "2 3")
          << "\"/>\n"
          << "<text x=\"" << fmt(px(x1) - 4) << "\" y=\"" << fmt(py(yb) - 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
          << "fill=\"gray\">slope " << slope << "</text>\n";
    }
    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (auto& [x, y] : pts) svg << fmt(px(x)) << ',' << fmt(py(y)) << ' ';
    svg << "\"/>\n";
    for (auto& [x, y] : pts)
      svg << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
          << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  } else {
    svg << "<text x=\"" << fmt(width / 2) << "\" y=\"" << fmt(height / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << "no data</text>\n";
  }
  svg << "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open SVG for writing: " + path);
  out << svg.str();
  if (!out) throw std::runtime_error("failed while writing SVG: " + path);
}

} // namespace

std::vector<std::string> write_report(const ConvergenceReport& report,
                                      const ReportPaths& paths) {
  std::vector<std::string> written;
  write_csv(report, paths.csv);
  written.push_back(paths.csv);
  for (std::size_t ri = 0; ri < report.norms.size(); ++ri) {
    const std::string path =
        paths.plot_prefix + "_r" + norm_suffix(report.norms[ri].r) + ".svg";
    write_svg(report, ri, path);
    written.push_back(path);
  }
  return written;
}

} // namespace lowreg
