#include "dln/reduction.hpp"

#include <cassert>

namespace dln {

TranslatedDI translate_di(const DefeasibleInclusion& di, const ConceptPtr& norm) {
  assert(norm->kind() == ConceptKind::Norm);
  return {di, norm, {conj(norm, di.pre), di.con}};
}

std::vector<TranslatedDI> filter_below(const std::vector<TranslatedDI>& current,
                                       const DefeasibleInclusion& di,
                                       const PriorityRelation& p) {
  std::vector<TranslatedDI> out;
  out.reserve(current.size());
  for (const auto& t : current)
    if (p.prec(t.origin, di)) out.push_back(t);
  return out;
}

ClassicalAxiomSet normality_base(const KnowledgeBase& kb,
                                 const std::vector<ConceptPtr>& sigma) {
  ClassicalAxiomSet base;
  for (const auto& ax : kb.strong) base.add(ax);
  for (const auto& nc : sigma) {
    assert(nc->kind() == ConceptKind::Norm);
    base.add({nc, nc->child()});
  }
  return base;
}

KBSigma build_kb_sigma(const KnowledgeBase& kb, const std::vector<ConceptPtr>& sigma,
                       const PriorityRelation& p, std::uint64_t seed,
                       ReasonerStats* stats, const Deadline* deadline) {
  KBSigma out;
  out.base = normality_base(kb, sigma);

  ReasonerSession session(out.base, stats);
  session.set_deadline(deadline);

  std::vector<DefeasibleInclusion> order = linearize(kb.defeasible, p, seed);
  for (const auto& di : order) {
    for (const auto& nc : sigma) {
      TranslatedDI cand = translate_di(di, nc);
      // Consistency test against the strictly-higher-priority selection
      // only: the session must hold exactly filtered ∪ {candidate}, which
      // is rarely a superset of the previous test's axioms — the rebuilds
      // this forces are the measured cost of the baseline.
      std::vector<StrongAxiom> target;
      target.reserve(out.kept.size() + 1);
      for (const auto& t : out.kept)
        if (p.prec(t.origin, di)) target.push_back(t.axiom);
      target.push_back(cand.axiom);
      bool clash = session.session_check(target, {nc, bottom()});
      if (clash)
        out.overridden.emplace_back(di.id, nc);
      else
        out.kept.push_back(std::move(cand));
    }
  }
  return out;
}

}  // namespace dln
