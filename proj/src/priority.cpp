#include "dln/priority.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <stdexcept>
#include <utility>

namespace dln {

RankMap compute_rank(const KnowledgeBase& kb, ReasonerStats* stats) {
  RankMap out;
  std::vector<const DefeasibleInclusion*> current;
  current.reserve(kb.defeasible.size());
  for (const auto& di : kb.defeasible) current.push_back(&di);

  int round = 0;
  while (!current.empty()) {
    ClassicalAxiomSet base;
    for (const auto& ax : kb.strong) base.add(ax);
    for (const auto* di : current) base.add(di->material());
    ReasonerSession session(std::move(base), stats);

    std::vector<const DefeasibleInclusion*> next;
    next.reserve(current.size());
    for (const auto* di : current) {
      if (session.check({di->pre, bottom()}))
        next.push_back(di);  // premise still exceptional this round
      else
        out.emplace(di->id, round);
    }
    assert(next.size() <= current.size());
    if (next.size() == current.size()) {
      for (const auto* di : current) out.emplace(di->id, kRankInfinity);
      break;
    }
    current = std::move(next);
    ++round;
  }
  return out;
}

bool prec_specificity(const std::vector<StrongAxiom>& strong,
                      const DefeasibleInclusion& d1, const DefeasibleInclusion& d2,
                      ReasonerStats* stats) {
  ClassicalAxiomSet s_only;
  for (const auto& ax : strong) s_only.add(ax);
  ReasonerSession session(std::move(s_only), stats);
  return session.check({d1.pre, d2.pre}) && !session.check({d2.pre, d1.pre});
}

bool prec_rank(const RankMap& ranks, const DefeasibleInclusion& d1,
               const DefeasibleInclusion& d2) {
  return ranks.at(d1.id) > ranks.at(d2.id);
}

PriorityRelation PriorityRelation::specificity(const KnowledgeBase& kb,
                                               ReasonerStats* stats) {
  PriorityRelation p;
  p.kind_ = Kind::Specificity;
  std::size_t n = 0;
  for (const auto& di : kb.defeasible) n = std::max(n, static_cast<std::size_t>(di.id) + 1);
  p.premise_subsumes_.assign(n, std::vector<bool>(n, false));

  ClassicalAxiomSet s_only;
  for (const auto& ax : kb.strong) s_only.add(ax);
  ReasonerSession session(std::move(s_only), stats);
  for (const auto& a : kb.defeasible)
    for (const auto& b : kb.defeasible) {
      if (a.id == b.id) continue;
      p.premise_subsumes_[static_cast<std::size_t>(a.id)][static_cast<std::size_t>(b.id)] =
          session.check({a.pre, b.pre});
    }
  return p;
}

PriorityRelation PriorityRelation::rank(const KnowledgeBase& kb, ReasonerStats* stats) {
  PriorityRelation p;
  p.kind_ = Kind::Rank;
  p.ranks_ = compute_rank(kb, stats);
  return p;
}

bool PriorityRelation::prec(const DefeasibleInclusion& d1,
                            const DefeasibleInclusion& d2) const {
  if (d1.id == d2.id) return false;
  if (kind_ == Kind::Rank) return prec_rank(ranks_, d1, d2);
  auto i = static_cast<std::size_t>(d1.id);
  auto j = static_cast<std::size_t>(d2.id);
  assert(i < premise_subsumes_.size() && j < premise_subsumes_.size());
  return premise_subsumes_[i][j] && !premise_subsumes_[j][i];
}

std::vector<DefeasibleInclusion> linearize(const std::vector<DefeasibleInclusion>& dis,
                                           const PriorityRelation& p,
                                           std::uint64_t seed) {
  const std::size_t n = dis.size();
  std::vector<std::vector<std::size_t>> after(n);  // edges i -> j: i precedes j
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (p.prec(dis[i], dis[j])) {
        after[i].push_back(j);
        indegree[j] += 1;
      }
    }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> ready;  // evolution is deterministic under the seed
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push_back(i);

  std::vector<DefeasibleInclusion> out;
  out.reserve(n);
  while (!ready.empty()) {
    std::size_t pick = static_cast<std::size_t>(rng() % ready.size());
    std::size_t i = ready[pick];
    ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(pick));
    out.push_back(dis[i]);
    for (std::size_t j : after[i])
      if (--indegree[j] == 0) ready.push_back(j);
  }
  if (out.size() != n)
    throw std::logic_error("priority relation is cyclic: not a strict partial order");
  return out;
}

}  // namespace dln
