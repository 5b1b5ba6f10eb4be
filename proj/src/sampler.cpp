// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#include "cq/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "cq/error.hpp"
#include "cq/rng.hpp"

namespace cq {

Language::Language(std::shared_ptr<const RegularTreeGrammar> rtg, RenderRules rules)
    : enumeration_(std::make_shared<Enumeration>(std::move(rtg))), rules_(std::move(rules)) {}

Language Language::from_grammar(const Grammar& g, RenderRules rules) {
  return Language(std::make_shared<const RegularTreeGrammar>(compile_to_rtg(g)), std::move(rules));
}

std::string Language::program(const EnumIndex& i) const {
  return render(enumeration_->index_to_tree(i), rules_);
}

void SampleParams::validate() const {
  if (a >= b) throw ConfigError(fmt::format("empty size range [{}, {})", a, b));
  if (n < 1) throw ConfigError("sample target n must be at least 1");
  if (alpha < 1) throw ConfigError("alpha must be at least 1");
  if (beta < 2) throw ConfigError("beta must be at least 2");
  if (max_tries < 1) throw ConfigError("max_tries must be at least 1");
  if (step_increase_threshold < 1) throw ConfigError("step_increase_threshold must be at least 1");
}

std::size_t SampleSet::total_shortfall() const {
  std::size_t s = 0;
  for (std::size_t v : shortfall) s += v;
  return s;
}

EnumIndex estimate_index(const Language& lang, std::uint64_t x, const SampleParams& params) {
  const Enumeration& e = lang.enumeration();
  std::optional<BigInt> last;
  if (e.finite()) {
    if (e.total()->is_zero()) throw SearchLimitExceeded("the language is empty");
    last = *e.total() - 1;
  }
  auto size_at = [&](const BigInt& i) -> std::uint64_t { return size_of(lang.program(i)); };
  const std::size_t threshold = params.step_increase_threshold;

  // Forward walk: stride 10^step, step grows every `threshold` moves.
  BigInt i = 0;
  BigInt stride = 1;
  std::size_t steps_taken = 0;
  std::uint64_t size = size_at(i);
  while (size < x) {
    if (steps_taken == threshold) {
      stride *= 10;
      steps_taken = 0;
    }
    BigInt next = i + stride;
    ++steps_taken;
    if (last && next > *last) {
      if (i == *last)
        throw SearchLimitExceeded(
            fmt::format("no program of size >= {} in this finite language", x));
      next = *last;
    }
    if (next > params.search_ceiling)
      throw SearchLimitExceeded(fmt::format(
          "no program of size >= {} found below index {}", x, params.search_ceiling.str()));
    i = std::move(next);
    size = size_at(i);
  }
  if (size == x) return i;

  // Reverse walk with a fresh stride. `previous` is the last index visited
  // whose program is longer than x.
  stride = 1;
  steps_taken = 0;
  BigInt previous = i;
  while (size > x) {
    previous = i;
    if (i.is_zero()) break;
    if (steps_taken == threshold) {
      stride *= 10;
      steps_taken = 0;
    }
    i = stride > i ? BigInt(0) : BigInt(i - stride);
    ++steps_taken;
    size = size_at(i);
  }
  return previous;
}

SampleSet sample_program_interval(const Language& lang, const SampleParams& params,
                                  const IndexBounds& bounds, std::size_t bucket) {
  params.validate();
  const Enumeration& e = lang.enumeration();
  Rng rng(params.seed);

  std::vector<Sample> best;
  BigInt start = bounds.lo;
  BigInt end = bounds.hi;
  // An empty initial range would never widen; sample at least `start`.
  if (end <= start) end = start + 1;

  for (std::size_t step = 0; best.size() < params.n && step < params.max_tries; ++step) {
    const std::size_t wanted = params.alpha * params.n * (step + 1);
    BigInt stop = end;
    if (e.finite() && stop > *e.total()) stop = *e.total();

    std::vector<Sample> curr;
    if (start < stop) {
      BigInt stride = (stop - start) / wanted;
      if (stride < 1) stride = 1;
      BigInt idx = start;
      for (std::size_t t = 0; t < wanted && idx < stop; ++t, idx += stride) {
        // Strata whose every program is too long are filtered without rendering.
        if (e.min_literal_bytes(e.stratum_of(idx)) >= params.b) continue;
        std::string text = lang.program(idx);
        const std::size_t size = size_of(text);
        if (size >= params.a && size < params.b)
          curr.push_back(Sample{idx, std::move(text), size, bucket});
      }
    }
    if (curr.size() > params.n) {
      std::vector<Sample> picked;
      picked.reserve(params.n);
      for (std::size_t pos : rng.choose(curr.size(), params.n)) picked.push_back(std::move(curr[pos]));
      curr = std::move(picked);
    }
    if (curr.size() >= best.size()) best = std::move(curr);

    start /= params.beta;
    end *= params.beta;
  }

  SampleSet out;
  out.samples = std::move(best);
  out.params = params;
  out.shortfall = {params.n - out.samples.size()};
  return out;
}

SampleSet bucketed_sample(const Language& lang, std::uint64_t a, std::uint64_t b,
                          std::size_t num_buckets, std::size_t per_bucket_n,
                          const SampleParams& params, std::size_t workers) {
  if (num_buckets < 1) throw ConfigError("at least one bucket is required");
  if (a >= b) throw ConfigError(fmt::format("empty size range [{}, {})", a, b));
  if ((b - a) % num_buckets != 0)
    throw ConfigError(fmt::format("range [{}, {}) is not divisible into {} buckets", a, b,
                                  num_buckets));
  const std::uint64_t width = (b - a) / num_buckets;

  SampleSet out;
  out.params = params;
  out.params.a = a;
  out.params.b = b;
  out.params.n = per_bucket_n;
  out.shortfall.assign(num_buckets, 0);
  if (per_bucket_n == 0) return out;

  // Consecutive boundaries: the upper index of bucket j is the lower index
  // of bucket j + 1.
  const Enumeration& e = lang.enumeration();
  std::vector<EnumIndex> boundary;
  boundary.reserve(num_buckets + 1);
  for (std::size_t j = 0; j <= num_buckets; ++j) {
    try {
      boundary.push_back(estimate_index(lang, a + j * width, params));
    } catch (const SearchLimitExceeded&) {
      if (!e.finite()) throw;
      boundary.push_back(*e.total());
    }
  }

  std::vector<SampleSet> parts(num_buckets);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto job = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < num_buckets;) {
      try {
        SampleParams p = params;
        p.n = per_bucket_n;
        p.a = a + j * width;
        p.b = p.a + width;
        p.seed = derive_seed(params.seed, j);
        parts[j] = sample_program_interval(lang, p, {boundary[j], boundary[j + 1]}, j);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(workers, 1, num_buckets);
  if (threads == 1) {
    job();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(job);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t j = 0; j < num_buckets; ++j) {
    out.shortfall[j] = parts[j].shortfall.front();
    for (auto& s : parts[j].samples) out.samples.push_back(std::move(s));
  }
  return out;
}

}  // namespace cq
