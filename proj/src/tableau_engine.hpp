#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dln/classical.hpp"
#include "dln/concept.hpp"
#include "dln/kb.hpp"

namespace dln::detail {

// Refutation calculus for the full concept language: `axioms entail C <= D`
// iff no model satisfies the axioms together with an instance of C and not-D.
//
// Axioms are compiled once into three indexes instead of one giant
// internalized disjunction:
//   * unfold_: axioms whose left side is (or contains) an atom fire lazily,
//     only at nodes whose label carries that atom;
//   * role_ax_: axioms `some r.X <= B` become the choice `all r.(not X) or B`,
//     attached only to nodes that actually create an r-successor;
//   * gci_: everything else holds at every node.
// Lazy attachment per edge means a node may owe conclusions its ancestors
// never saw, so ancestor blocking compares labels for equality, not
// inclusion; equality keeps the unraveled model faithful.
//
// Indexes grow append-only and carry an undo trail, so a session can drop
// additions back to the base set without recompiling it. The interned
// negation-normal-form table is deliberately left out of the trail: entries
// are pure syntax shared across axiom sets.
class TabEngine {
 public:
  TabEngine() = default;
  TabEngine(const TabEngine&) = delete;
  TabEngine& operator=(const TabEngine&) = delete;

  void set_deadline(const Deadline* d) { deadline_ = d; }

  void add_axiom(const StrongAxiom& ax);

  // Entailment test; may be called any number of times between adds.
  bool check(const Query& q);

  // Everything added so far is the permanent base; later additions are
  // recorded and can be undone.
  void finish_base() { trailing_ = true; }
  std::size_t trail_mark() const { return trail_.size(); }
  void rollback(std::size_t mark);

 private:
  enum class Op : std::uint8_t { Top, Bot, Atom, NegAtom, And, Or, Exists, Forall };

  struct TNode {
    Op op;
    int atom = -1;               // Atom/NegAtom
    int role = -1;               // Exists/Forall
    std::vector<int> kids;       // And/Or parts, Exists/Forall filler
  };

  // --- negation normal form ---
  int intern(Op op, int atom, int role, std::vector<int> kids);
  int nnf(const ConceptPtr& c, bool negated);
  int negate(int id);

  int intern_atom(const std::string& name);
  int intern_role(const std::string& name);

  // --- tableau search ---
  struct Label {
    std::unordered_set<int> set;
    std::vector<int> items;       // insertion order, drives deterministic search
    bool insert(int id) {
      if (!set.insert(id).second) return false;
      items.push_back(id);
      return true;
    }
    bool has(int id) const { return set.count(id) != 0; }
  };

  // Expand `label` (taking globals as given), branch on disjunctions, fire
  // role choices, generate successors. `path` holds the finished labels of
  // strict ancestors for the blocking test.
  bool satisfiable(Label label, std::vector<std::vector<int>>& path);
  // Deterministic closure; returns false on clash. Collects unresolved
  // disjunctions and the concepts driving successor generation.
  bool saturate(Label& label, std::vector<int>& open_ors);

  void tick();

  // --- axiom compilation ---
  void absorb(const StrongAxiom& ax);
  void add_unfold(int atom, int concept_id);
  void add_role_axiom(int role, int concept_id);
  void add_gci(int concept_id);

  std::vector<std::string> atom_names_;
  std::unordered_map<std::string, int> atom_ids_;
  std::vector<std::string> role_names_;
  std::unordered_map<std::string, int> role_ids_;

  std::vector<TNode> nodes_;
  std::unordered_map<std::string, int> node_ids_;  // structural key -> id
  std::vector<int> neg_;                           // id -> negated id
  std::unordered_map<std::string, int> nnf_memo_;  // repr + polarity -> id

  std::vector<std::vector<int>> unfold_;           // by atom
  std::vector<std::vector<int>> role_ax_;          // by role
  std::vector<int> gci_;

  enum EvTag : std::uint8_t { kEvUnfold, kEvRoleAx, kEvGci };
  struct Ev {
    EvTag tag;
    int slot;
  };
  std::vector<Ev> trail_;
  bool trailing_ = false;

  const Deadline* deadline_ = nullptr;
  std::uint64_t ticks_ = 0;
};

}  // namespace dln::detail
