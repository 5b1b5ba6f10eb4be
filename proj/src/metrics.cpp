// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#include "cq/metrics.hpp"

#include <cmath>
#include <numeric>

#include "cq/error.hpp"

namespace cq {

void MetricParams::validate() const {
  if (size_bound == 0) throw ConfigError("size bound must be positive");
  if (lcq_step == 0) throw ConfigError("lcq step must be positive");
}

double compute_cq(const CampaignResult& c, const MetricParams&) {
  if (c.results.empty()) throw UndefinedMetric("CQ of an empty campaign is undefined");
  std::size_t accepted = 0;
  for (const auto& r : c.results) accepted += r.verdict == Verdict::Accepted;
  return 100.0 * static_cast<double>(accepted) / static_cast<double>(c.results.size());
}

namespace {

struct Window {
  std::size_t accepted = 0;
  std::size_t total = 0;
};

Window window_at(const CampaignResult& c, std::size_t x, std::size_t eps) {
  const std::size_t lo = x >= eps ? x - eps : 0;
  const std::size_t hi = x + eps;
  Window w;
  for (const auto& r : c.results) {
    if (r.size < lo || r.size > hi) continue;
    ++w.total;
    w.accepted += r.verdict == Verdict::Accepted;
  }
  return w;
}

}  // namespace

std::optional<double> compute_lcq(const CampaignResult& c, std::size_t x, const MetricParams& m) {
  const Window w = window_at(c, x, m.epsilon);
  if (w.total == 0) return std::nullopt;
  return 100.0 * static_cast<double>(w.accepted) / static_cast<double>(w.total);
}

std::vector<LcqPoint> lcq_curve(const CampaignResult& c, const MetricParams& m) {
  m.validate();
  // Per-size histogram, then sliding windows over it.
  std::vector<Window> by_size(m.size_bound + m.epsilon + 1);
  for (const auto& r : c.results) {
    if (r.size >= by_size.size()) continue;
    ++by_size[r.size].total;
    by_size[r.size].accepted += r.verdict == Verdict::Accepted;
  }
  std::vector<LcqPoint> out;
  for (std::size_t x = 0; x <= m.size_bound; x += m.lcq_step) {
    const std::size_t lo = x >= m.epsilon ? x - m.epsilon : 0;
    Window w;
    for (std::size_t s = lo; s <= x + m.epsilon; ++s) {
      w.total += by_size[s].total;
      w.accepted += by_size[s].accepted;
    }
    LcqPoint p{x, std::nullopt, w.total};
    if (w.total) p.lcq = 100.0 * static_cast<double>(w.accepted) / static_cast<double>(w.total);
    out.push_back(p);
  }
  return out;
}

std::vector<LcqPoint> lcq_curve(std::span<const CampaignResult> runs, const MetricParams& m) {
  if (runs.empty()) return {};
  std::vector<std::vector<LcqPoint>> curves;
  for (const auto& r : runs) curves.push_back(lcq_curve(r, m));
  std::vector<LcqPoint> out = curves.front();
  for (std::size_t i = 0; i < out.size(); ++i) {
    double sum = 0;
    std::size_t defined = 0, population = 0;
    for (const auto& c : curves) {
      population += c[i].window_population;
      if (c[i].lcq) {
        sum += *c[i].lcq;
        ++defined;
      }
    }
    out[i].window_population = population;
    out[i].lcq = defined ? std::optional<double>(sum / static_cast<double>(defined)) : std::nullopt;
  }
  return out;
}

std::optional<double> relative_std_dev(std::span<const double> values) {
  if (values.size() < 2) return std::nullopt;
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1));
  if (mean == 0.0) return sd == 0.0 ? std::optional<double>(0.0) : std::nullopt;
  return 100.0 * sd / mean;
}

CQReport aggregate_runs(std::span<const CampaignResult> runs, const MetricParams& m) {
  if (runs.empty()) throw UndefinedMetric("no runs to aggregate");
  CQReport r;
  r.language = runs.front().language;
  for (const auto& run : runs) {
    if (run.language != r.language)
      throw ConfigError("cannot aggregate runs of different languages");
    r.run_ids.push_back(run.run_id);
    r.per_run_cq.push_back(compute_cq(run, m));
    r.per_run_counts.push_back(run.counts);
    r.verdict_breakdown += run.counts;
    r.per_run_curves.push_back(lcq_curve(run, m));
  }
  r.cq = std::accumulate(r.per_run_cq.begin(), r.per_run_cq.end(), 0.0) /
         static_cast<double>(r.per_run_cq.size());
  r.relative_std_dev = relative_std_dev(r.per_run_cq);
  r.lcq_curve = lcq_curve(runs, m);
  return r;
}

}  // namespace cq
