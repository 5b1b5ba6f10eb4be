// Copyright 2026 The cqtool Authors
// SPDX-License-Identifier: Apache-2.0

#include "cq/enumerator.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

#include <fmt/format.h>

#include "cq/error.hpp"

namespace cq {

namespace {
constexpr std::uint64_t kNone = UINT64_MAX;
}  // namespace

Enumeration::Enumeration(std::shared_ptr<const RegularTreeGrammar> rtg) : rtg_(std::move(rtg)) {
  const auto& g = *rtg_;
  card_.assign(g.nonterminals().size(), std::vector<BigInt>{0});
  cum_.assign(g.nonterminals().size(), std::vector<BigInt>{0});
  ways_.resize(g.rules().size());
  min_bytes_.assign(g.nonterminals().size(), std::vector<std::uint64_t>{kNone});
  min_ways_.resize(g.rules().size());
  rule_bytes_.assign(g.rules().size(), 0);
  for (std::size_t r = 0; r < g.rules().size(); ++r) {
    ways_[r].resize(g.rule(r).arity() + 1);
    min_ways_[r].resize(g.rule(r).arity() + 1);
    for (const Slot& s : g.rule(r).slots)
      if (!s.is_child()) rule_bytes_[r] += s.literal.size();
  }
  detect_finite();
}

void Enumeration::detect_finite() {
  const auto& g = *rtg_;
  const std::size_t n = g.nonterminals().size();

  std::vector<char> productive(n, 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : g.rules()) {
      if (productive[r.lhs]) continue;
      if (std::all_of(r.children.begin(), r.children.end(),
                      [&](NonterminalId c) { return productive[c]; })) {
        productive[r.lhs] = 1;
        changed = true;
      }
    }
  }
  auto useful = [&](const ConstructorRule& r) {
    return std::all_of(r.children.begin(), r.children.end(),
                       [&](NonterminalId c) { return productive[c]; });
  };

  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<char> state(n, 0);
  std::vector<BigInt> total(n);
  std::vector<std::size_t> max_k(n, 0);
  bool cyclic = false;
  std::function<void(NonterminalId)> visit = [&](NonterminalId nt) {
    state[nt] = 1;
    for (std::size_t ri : g.rules_of(nt)) {
      const auto& r = g.rule(ri);
      if (!useful(r)) continue;
      for (NonterminalId c : r.children) {
        if (state[c] == 1) cyclic = true;
        if (state[c] == 0) visit(c);
        if (cyclic) return;
      }
    }
    for (std::size_t ri : g.rules_of(nt)) {
      const auto& r = g.rule(ri);
      if (!useful(r)) continue;
      BigInt prod = 1;
      std::size_t size = 1;
      for (NonterminalId c : r.children) {
        prod *= total[c];
        size += max_k[c];
      }
      total[nt] += prod;
      max_k[nt] = std::max(max_k[nt], size);
    }
    state[nt] = 2;
  };
  if (!productive[g.start()]) {
    total_ = BigInt(0);
    return;
  }
  visit(g.start());
  if (!cyclic) {
    total_ = total[g.start()];
    finite_max_k_ = max_k[g.start()];
  }
}

void Enumeration::extend_one_locked() const {
  const auto& g = *rtg_;
  const std::size_t k = max_k_ + 1;
  const std::size_t m = k - 1;

  for (std::size_t ri = 0; ri < g.rules().size(); ++ri) {
    const auto& r = g.rule(ri);
    auto& ways = ways_[ri];
    auto& min_ways = min_ways_[ri];
    const std::size_t a = r.arity();
    ways[a].push_back(m == 0 ? 1 : 0);
    min_ways[a].push_back(m == 0 ? 0 : kNone);
    for (std::size_t j = a; j-- > 0;) {
      BigInt sum = 0;
      std::uint64_t best = kNone;
      const auto& card = card_[r.children[j]];
      const auto& mb = min_bytes_[r.children[j]];
      const auto& next = ways[j + 1];
      const auto& next_min = min_ways[j + 1];
      // The last child has to take all of m.
      for (std::size_t s = j + 1 == a ? std::max<std::size_t>(m, 1) : 1; s <= m; ++s) {
        if (card[s].is_zero() || next[m - s].is_zero()) continue;
        sum += card[s] * next[m - s];
        best = std::min(best, mb[s] + next_min[m - s]);
      }
      ways[j].push_back(std::move(sum));
      min_ways[j].push_back(best);
    }
  }

  for (NonterminalId nt = 0; nt < g.nonterminals().size(); ++nt) {
    BigInt c = 0;
    std::uint64_t best = kNone;
    for (std::size_t ri : g.rules_of(nt)) {
      c += ways_[ri][0][m];
      if (min_ways_[ri][0][m] != kNone)
        best = std::min(best, rule_bytes_[ri] + min_ways_[ri][0][m]);
    }
    cum_[nt].push_back(cum_[nt].back() + c);
    card_[nt].push_back(std::move(c));
    min_bytes_[nt].push_back(best);
  }
  max_k_ = k;
}

void Enumeration::extend_locked(std::size_t k) const {
  while (max_k_ < k) extend_one_locked();
}

void Enumeration::ensure(std::size_t k) const {
  {
    std::shared_lock lock(mu_);
    if (max_k_ >= k) return;
  }
  std::unique_lock lock(mu_);
  extend_locked(k);
}

std::size_t Enumeration::max_k() const {
  std::shared_lock lock(mu_);
  return max_k_;
}

BigInt Enumeration::cardinality(NonterminalId nt, std::size_t k) const {
  ensure(k);
  std::shared_lock lock(mu_);
  return card_.at(nt)[k];
}

BigInt Enumeration::total_below(std::size_t k) const {
  ensure(k);
  std::shared_lock lock(mu_);
  return cum_[rtg_->start()][k];
}

std::uint64_t Enumeration::min_literal_bytes(std::size_t k) const {
  ensure(k);
  std::shared_lock lock(mu_);
  return min_bytes_[rtg_->start()][k];
}

std::size_t Enumeration::stratum_of(const EnumIndex& i) const {
  if (i < 0) throw IndexOutOfRange("negative enumeration index");
  if (total_ && i >= *total_)
    throw IndexOutOfRange(fmt::format("index {} out of range: the language has {} programs",
                                      i.str(), total_->str()));
  const NonterminalId s = rtg_->start();
  {
    std::shared_lock lock(mu_);
    if (cum_[s].back() > i) {
      const auto& c = cum_[s];
      return static_cast<std::size_t>(std::upper_bound(c.begin(), c.end(), i) - c.begin());
    }
  }
  std::unique_lock lock(mu_);
  while (cum_[s].back() <= i) extend_one_locked();
  const auto& c = cum_[s];
  return static_cast<std::size_t>(std::upper_bound(c.begin(), c.end(), i) - c.begin());
}

DerivationTree Enumeration::index_to_tree(const EnumIndex& i) const {
  const std::size_t k = stratum_of(i);
  std::shared_lock lock(mu_);
  const NonterminalId s = rtg_->start();
  return unrank(s, k, i - cum_[s][k - 1]);
}

DerivationTree Enumeration::unrank(NonterminalId nt, std::size_t k, BigInt rank) const {
  const auto& g = *rtg_;
  const ConstructorRule* chosen = nullptr;
  std::size_t chosen_index = 0;
  for (std::size_t ri : g.rules_of(nt)) {
    const BigInt& w = ways_[ri][0][k - 1];
    if (rank < w) {
      chosen = &g.rule(ri);
      chosen_index = ri;
      break;
    }
    rank -= w;
  }
  // Callers pass rank < card(nt, k), so some rule always matches.
  DerivationTree tree;
  tree.rule = chosen;
  const std::size_t a = chosen->arity();
  if (a == 0) return tree;

  const auto& ways = ways_[chosen_index];
  std::vector<std::size_t> sizes(a);
  std::size_t m = k - 1;
  BigInt mult = 1;
  for (std::size_t j = 0; j < a; ++j) {
    const auto& card = card_[chosen->children[j]];
    std::size_t s = 1;
    for (; s <= m; ++s) {
      if (card[s].is_zero()) continue;
      const BigInt& rest = ways[j + 1][m - s];
      if (rest.is_zero()) continue;
      BigInt block = mult * card[s] * rest;
      if (rank < block) break;
      rank -= block;
    }
    sizes[j] = s;
    mult *= card[s];
    m -= s;
  }

  // rank now indexes the product of the children's strata.
  std::vector<BigInt> local(a);
  for (std::size_t j = 0; j < a; ++j) {
    const BigInt& c = card_[chosen->children[j]][sizes[j]];
    mult /= c;
    local[j] = rank / mult;
    rank %= mult;
  }
  tree.children.reserve(a);
  for (std::size_t j = 0; j < a; ++j)
    tree.children.push_back(unrank(chosen->children[j], sizes[j], std::move(local[j])));
  return tree;
}

}  // namespace cq
