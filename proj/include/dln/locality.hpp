#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dln/kb.hpp"

namespace dln {

/// Substitution polarity for the syntactic locality test: names outside the
/// signature are read as Bot (with roles as the empty role) or as Top (with
/// roles as the universal role).
enum class Polarity : std::uint8_t { Bot, Top };

/// Syntactic locality: the axiom becomes a tautology under the polarity's
/// substitution of non-signature symbols.  Normality concepts participate as
/// opaque names (their serialized form).  A defeasible inclusion is tested
/// on its material counterpart.
bool is_local(const StrongAxiom& ax, const Signature& sig, Polarity pol);
bool is_local(const DefeasibleInclusion& di, const Signature& sig, Polarity pol);

/// Subset of a knowledge base closed under one or more locality passes.
struct Module {
  std::vector<StrongAxiom> strong;
  std::vector<DefeasibleInclusion> defeasible;
  Signature final_sig;  // seed signature ∪ signature of the kept axioms

  std::size_t size() const { return strong.size() + defeasible.size(); }
};

/// Single-polarity extraction: least fixpoint moving every non-local axiom
/// into the module and widening the signature with its symbols.  Previously
/// local axioms are retested whenever a symbol they mention joins the
/// signature, so the result is order-independent.
Module x_mod(const KnowledgeBase& kb, const Signature& sig, Polarity pol);

/// Alternate Bot- and Top-extraction (each pass re-seeded with the original
/// signature) until a round removes nothing.
Module tbstar_mod_di(const Signature& sig, const KnowledgeBase& kb);

/// Query pipeline: seed the signature with the query's symbols and every
/// normality concept of the KB, inject the normality-closure axioms
/// N C <= C for those concepts, extract, and intersect back with the input
/// KB (DI identities preserved).  Returns the reduced KB and the module.
std::pair<KnowledgeBase, Module> mod_pipeline(const KnowledgeBase& kb, const Query& q);

}  // namespace dln
