#pragma once

#include <set>
#include <string>
#include <vector>

#include "dln/concept.hpp"

namespace dln {

// ============================================================================
// Knowledge bases: strong axioms plus prioritized defeasible inclusions
// ============================================================================

/// Classical inclusion `lhs <= rhs`.
struct StrongAxiom {
  ConceptPtr lhs, rhs;

  /// Stable identity key; axioms compare equal iff their keys do.
  std::string key() const { return lhs->repr() + " <= " + rhs->repr(); }
  bool operator==(const StrongAxiom& o) const {
    return equal(lhs, o.lhs) && equal(rhs, o.rhs);
  }
};

/// Defeasible inclusion `pre <~ con`.  The premise is always free of
/// normality concepts; ids are dense 0..|D|-1 in file order.
struct DefeasibleInclusion {
  int id = -1;
  ConceptPtr pre, con;

  /// Material counterpart `pre <= con` used for ranking and locality checks.
  StrongAxiom material() const { return {pre, con}; }
  std::string key() const { return pre->repr() + " <~ " + con->repr(); }
};

struct KnowledgeBase {
  std::vector<StrongAxiom> strong;
  std::vector<DefeasibleInclusion> defeasible;

  std::size_t size() const { return strong.size() + defeasible.size(); }
};

struct Query {
  ConceptPtr lhs, rhs;
  std::string key() const { return lhs->repr() + " <= " + rhs->repr(); }
};

// ============================================================================
// Signatures
// ============================================================================

/// Concept and role names occurring in an expression.  A normality concept
/// N(C) contributes the single opaque concept name "N(...)" — the names inside
/// it are hidden, matching its reading as a fresh atomic concept.
struct Signature {
  std::set<std::string> concepts;
  std::set<std::string> roles;

  bool has_concept(const std::string& n) const { return concepts.count(n) != 0; }
  bool has_role(const std::string& n) const { return roles.count(n) != 0; }
  void merge(const Signature& o) {
    concepts.insert(o.concepts.begin(), o.concepts.end());
    roles.insert(o.roles.begin(), o.roles.end());
  }
  bool operator==(const Signature& o) const = default;
};

void collect_signature(const ConceptPtr& c, Signature& out);
Signature signature_of(const ConceptPtr& c);
Signature signature_of(const StrongAxiom& ax);
Signature signature_of(const DefeasibleInclusion& di);
Signature signature_of(const Query& q);
Signature signature_of(const KnowledgeBase& kb);

/// All distinct normality subterms of KB and query, sorted by serialization.
/// This is the Σ of the classical reduction.
std::vector<ConceptPtr> collect_sigma(const KnowledgeBase& kb, const Query& q);

/// Normality subterms of a single concept (each N(...) node, not recursed into).
void collect_norms(const ConceptPtr& c, std::vector<ConceptPtr>& out);

/// True when no normality concept occurs anywhere in the KB's axioms.
bool is_n_free(const KnowledgeBase& kb);

// ============================================================================
// Serialization (re-parseable text form)
// ============================================================================

std::string to_string(const StrongAxiom& ax);
std::string to_string(const DefeasibleInclusion& di);
std::string to_string(const Query& q);

/// One axiom per line, strong axioms first, defeasible inclusions in id order.
std::string print_kb(const KnowledgeBase& kb);

}  // namespace dln
