#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "dln/classical.hpp"
#include "dln/kb.hpp"

namespace dln {

/// Rank of a defeasible inclusion; `kRankInfinity` marks DIs whose premise
/// stays unsatisfiable at the ranking fixpoint.
using Rank = int;
inline constexpr Rank kRankInfinity = std::numeric_limits<Rank>::max();

/// Total map DI-id -> rank.
using RankMap = std::map<int, Rank>;

/// Exception-driven ranking: start from the material counterparts of all DIs;
/// each round keeps exactly those whose premise is unsatisfiable together
/// with the strong axioms and the current round's materials; a DI's rank is
/// the round at which it leaves, and survivors of the fixpoint get infinity.
RankMap compute_rank(const KnowledgeBase& kb, ReasonerStats* stats = nullptr);

/// δ1 strictly precedes δ2 when its premise is strictly more specific under
/// the strong axioms alone.
bool prec_specificity(const std::vector<StrongAxiom>& strong,
                      const DefeasibleInclusion& d1, const DefeasibleInclusion& d2,
                      ReasonerStats* stats = nullptr);

/// δ1 strictly precedes δ2 when its rank is strictly greater (infinity is
/// greatest).  Throws std::out_of_range on an id missing from the map.
bool prec_rank(const RankMap& ranks, const DefeasibleInclusion& d1,
               const DefeasibleInclusion& d2);

/// Strict partial order over a KB's defeasible inclusions, by premise
/// specificity or by rank.  Precomputed once; `prec` is then a lookup.
class PriorityRelation {
public:
  enum class Kind : std::uint8_t { Specificity, Rank };

  static PriorityRelation specificity(const KnowledgeBase& kb,
                                      ReasonerStats* stats = nullptr);
  static PriorityRelation rank(const KnowledgeBase& kb, ReasonerStats* stats = nullptr);

  /// d1 ≺ d2: d1 has strictly higher priority (is processed first).
  bool prec(const DefeasibleInclusion& d1, const DefeasibleInclusion& d2) const;

  Kind kind() const { return kind_; }
  /// Rank kind only.
  const RankMap& ranks() const { return ranks_; }

private:
  PriorityRelation() = default;

  Kind kind_ = Kind::Specificity;
  RankMap ranks_;
  std::vector<std::vector<bool>> premise_subsumes_;  // by DI id, Specificity only
};

/// Topological order of `dis` consistent with `p` (δi ≺ δj ⇒ i before j),
/// ties broken by a seeded shuffle so different seeds exercise different
/// admissible orders.  Throws std::logic_error if `p` is cyclic.
std::vector<DefeasibleInclusion> linearize(const std::vector<DefeasibleInclusion>& dis,
                                           const PriorityRelation& p,
                                           std::uint64_t seed);

}  // namespace dln
