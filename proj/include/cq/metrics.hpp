// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

// Compilation quotients over sampled campaigns.
//
//   CQ         = 100 * accepted / total
//   LCQ(x, e)  = 100 * accepted / total, restricted to x-e <= size <= x+e
//
// Both are estimates over the sample, not over the whole bounded language.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cq/harness.hpp"

namespace cq {

struct MetricParams {
  std::size_t size_bound = 256;
  std::size_t epsilon = 5;
  std::size_t lcq_step = 1;

  void validate() const;
};

struct LcqPoint {
  std::size_t x = 0;
  std::optional<double> lcq;  // nullopt: no sample in the window
  std::size_t window_population = 0;
};

struct CQReport {
  std::string language;
  std::vector<std::string> run_ids;
  double cq = 0.0;  // mean over runs
  std::vector<double> per_run_cq;
  std::vector<VerdictCounts> per_run_counts;
  std::optional<double> relative_std_dev;  // nullopt for a single run
  std::vector<LcqPoint> lcq_curve;         // mean over runs
  std::vector<std::vector<LcqPoint>> per_run_curves;
  VerdictCounts verdict_breakdown;
};

// Throws UndefinedMetric for an empty campaign.
double compute_cq(const CampaignResult& c, const MetricParams& m);
std::optional<double> compute_lcq(const CampaignResult& c, std::size_t x, const MetricParams& m);

// Points x = 0, step, 2*step, ... <= size_bound.
std::vector<LcqPoint> lcq_curve(const CampaignResult& c, const MetricParams& m);
// Pointwise mean over the runs whose value is defined at x.
std::vector<LcqPoint> lcq_curve(std::span<const CampaignResult> runs, const MetricParams& m);

// Sample standard deviation (n - 1) relative to the mean, in percent.
std::optional<double> relative_std_dev(std::span<const double> values);

CQReport aggregate_runs(std::span<const CampaignResult> runs, const MetricParams& m);

// Writes cq_summary.csv, lcq_curve.csv, lcq_curve_run<r>.csv, lcq_curve.svg
// and summary.txt into `dir`. Output bytes depend only on the report.
void emit_report(const CQReport& r, const MetricParams& m, const std::filesystem::path& dir);

std::string cq_summary_csv(const CQReport& r);
std::string lcq_curve_csv(const std::vector<LcqPoint>& curve);
std::string lcq_curve_svg(const CQReport& r, const MetricParams& m);

}  // namespace cq
