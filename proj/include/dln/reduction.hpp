#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dln/classical.hpp"
#include "dln/kb.hpp"
#include "dln/priority.hpp"

namespace dln {

/// The strong counterpart of one defeasible inclusion relative to one
/// normality concept: N C and pre(δ) <= con(δ), remembering its origin.
struct TranslatedDI {
  DefeasibleInclusion origin;
  ConceptPtr norm;  // the N C this translation serves
  StrongAxiom axiom;
};

TranslatedDI translate_di(const DefeasibleInclusion& di, const ConceptPtr& norm);

/// The strictly-higher-priority part of `current`: translations whose origin
/// DI strictly precedes `di` under `p`.  Base axioms are never filtered, so
/// this operates on translations only.
std::vector<TranslatedDI> filter_below(const std::vector<TranslatedDI>& current,
                                       const DefeasibleInclusion& di,
                                       const PriorityRelation& p);

/// Result of the prioritized construction: the normality-closure base
/// (strong axioms plus N C <= C for each N C), the kept translations, and
/// the overridden (DI-id, N C) pairs.  The classical KB it denotes is
/// base ∪ {t.axiom | t ∈ kept}.
struct KBSigma {
  ClassicalAxiomSet base;
  std::vector<TranslatedDI> kept;
  std::vector<std::pair<int, ConceptPtr>> overridden;

  ClassicalAxiomSet classical() const {
    ClassicalAxiomSet out = base;
    for (const auto& t : kept) out.add(t.axiom);
    return out;
  }
};

/// The base alone: strong axioms plus the normality closure of sigma.
ClassicalAxiomSet normality_base(const KnowledgeBase& kb,
                                 const std::vector<ConceptPtr>& sigma);

/// Naive prioritized construction.  Processes the DIs in a seeded
/// linearization of `p`; a translation is kept iff adding it to the
/// strictly-higher-priority part of the current selection leaves N C
/// satisfiable.  Each consistency test replays the filtered selection on a
/// session over the base, paying the deletion cost this construction is the
/// baseline for.
KBSigma build_kb_sigma(const KnowledgeBase& kb, const std::vector<ConceptPtr>& sigma,
                       const PriorityRelation& p, std::uint64_t seed,
                       ReasonerStats* stats = nullptr,
                       const Deadline* deadline = nullptr);

}  // namespace dln
