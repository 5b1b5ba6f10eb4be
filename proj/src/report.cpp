// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>

#include <fmt/format.h>

#include "cq/error.hpp"
#include "cq/metrics.hpp"

namespace cq {

namespace fs = std::filesystem;

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", p.string()));
  out << text;
  if (!out) throw IoError(fmt::format("write to '{}' failed", p.string()));
}

std::string counts_csv(const VerdictCounts& c) {
  return fmt::format("{},{},{},{},{}", c.accepted, c.rejected, c.timeout, c.crashed, c.total());
}

}  // namespace

std::string cq_summary_csv(const CQReport& r) {
  std::string out = "language,run_id,cq,accepted,rejected,timeout,crashed,total\n";
  for (std::size_t i = 0; i < r.per_run_cq.size(); ++i)
    out += fmt::format("{},{},{:.6f},{}\n", csv_field(r.language), csv_field(r.run_ids[i]),
                       r.per_run_cq[i], counts_csv(r.per_run_counts[i]));
  if (!r.per_run_cq.empty())
    out += fmt::format("{},mean,{:.6f},{}\n", csv_field(r.language), r.cq,
                       counts_csv(r.verdict_breakdown));
  return out;
}

std::string lcq_curve_csv(const std::vector<LcqPoint>& curve) {
  std::string out = "x,lcq,defined,window_population\n";
  for (const auto& p : curve) {
    if (p.lcq)
      out += fmt::format("{},{:.6f},true,{}\n", p.x, *p.lcq, p.window_population);
    else
      out += fmt::format("{},,false,{}\n", p.x, p.window_population);
  }
  return out;
}

std::string lcq_curve_svg(const CQReport& r, const MetricParams& m) {
  constexpr double kWidth = 640, kHeight = 400;
  constexpr double kLeft = 60, kRight = 20, kTop = 30, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double xmax = static_cast<double>(m.size_bound);
  auto px = [&](double x) { return kLeft + plot_w * x / xmax; };
  auto py = [&](double y) { return kTop + plot_h * (1.0 - y / 100.0); };

  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.0f} {:.0f}\">\n",
      kWidth, kHeight, kWidth, kHeight);
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += fmt::format("<text x=\"{:.1f}\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\" "
                   "text-anchor=\"middle\">LCQ of {} (epsilon = {})</text>\n",
                   kWidth / 2, r.language, m.epsilon);

  // Axes and ticks.
  s += fmt::format("<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
                   "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\"/>\n"
                   "<line x1=\"{0:.1f}\" y1=\"{3:.1f}\" x2=\"{0:.1f}\" y2=\"{1:.1f}\"/>\n</g>\n",
                   px(0), py(0), px(xmax), py(100));
  s += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int y = 0; y <= 100; y += 20)
    s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{}</text>\n", px(0) - 6,
                     py(y) + 4, y);
  const std::size_t xstep = std::max<std::size_t>(1, m.size_bound / 8);
  for (std::size_t x = 0; x <= m.size_bound; x += xstep)
    s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n",
                     px(static_cast<double>(x)), py(0) + 16, x);
  s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">program size "
                   "(bytes)</text>\n",
                   kLeft + plot_w / 2, kHeight - 10);
  s += fmt::format("<text x=\"14\" y=\"{:.1f}\" text-anchor=\"middle\" "
                   "transform=\"rotate(-90 14 {:.1f})\">LCQ</text>\n",
                   kTop + plot_h / 2, kTop + plot_h / 2);
  s += "</g>\n";

  // Gaps split the curve into separate polylines.
  auto polylines = [&](const std::vector<LcqPoint>& curve, const char* style) {
    std::string out, pts;
    for (const auto& p : curve) {
      if (p.lcq) {
        pts += fmt::format("{}{:.2f},{:.2f}", pts.empty() ? "" : " ",
                           px(static_cast<double>(p.x)), py(*p.lcq));
        continue;
      }
      if (!pts.empty()) out += fmt::format("<polyline {} points=\"{}\"/>\n", style, pts);
      pts.clear();
    }
    if (!pts.empty()) out += fmt::format("<polyline {} points=\"{}\"/>\n", style, pts);
    return out;
  };
  if (r.per_run_curves.size() > 1)
    for (const auto& c : r.per_run_curves)
      s += polylines(c, "fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"");
  s += polylines(r.lcq_curve, "fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"");
  s += "</svg>\n";
  return s;
}

void emit_report(const CQReport& r, const MetricParams& m, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
  write_text(dir / "cq_summary.csv", cq_summary_csv(r));
  write_text(dir / "lcq_curve.csv", lcq_curve_csv(r.lcq_curve));
  for (std::size_t i = 0; i < r.per_run_curves.size(); ++i)
    write_text(dir / fmt::format("lcq_curve_run{}.csv", i), lcq_curve_csv(r.per_run_curves[i]));
  write_text(dir / "lcq_curve.svg", lcq_curve_svg(r, m));

  std::string txt = fmt::format("language: {}\nruns: {}\n", r.language, r.per_run_cq.size());
  for (std::size_t i = 0; i < r.per_run_cq.size(); ++i)
    txt += fmt::format("  run {} ({}): CQ {:.6f} over {} samples\n", i, r.run_ids[i],
                       r.per_run_cq[i], r.per_run_counts[i].total());
  txt += fmt::format("mean CQ: {:.6f}\n", r.cq);
  txt += r.relative_std_dev
             ? fmt::format("relative standard deviation: {:.4f}%\n", *r.relative_std_dev)
             : std::string("relative standard deviation: n/a (single run)\n");
  const auto& v = r.verdict_breakdown;
  txt += fmt::format("verdicts: accepted {}, rejected {}, timeout {}, crashed {}\n", v.accepted,
                     v.rejected, v.timeout, v.crashed);
  txt += fmt::format(
      "\nCQ and LCQ are estimated over the sampled programs (size < {} bytes, LCQ window "
      "radius {}).\nTimeouts and crashes count as not compiling. The relative standard "
      "deviation uses the sample (n-1) standard deviation.\n",
      m.size_bound, m.epsilon);
  write_text(dir / "summary.txt", txt);
}

}  // namespace cq
