#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dln/classical.hpp"

namespace dln::detail {

// ============================================================================
// Completion-based classifier for the existential fragment (EL with Bot)
// ============================================================================
//
// Axioms are normalized on the fly into four primitive forms over atom ids
// (complex subconcepts get definitional fresh atoms, memoized by
// serialization):
//
//   (1) x <= b          (2) x1 and x2 <= b
//   (3) x <= some r.b   (4) some r.x <= b
//
// and saturated with the usual rules: transitivity through (1)/(2), edge
// creation from (3), propagation through (4), and Bot propagation along
// edges.  `a <= b` holds iff b ∈ S(a) or Bot ∈ S(a).
//
// All mutations after `finish_base()` are recorded on a trail so a suffix of
// the work (an addition and its consequences) can be undone exactly; this is
// what makes monotone sessions and one-step candidate rollback cheap.
class ElEngine {
public:
  ElEngine();

  void set_deadline(const Deadline* dl) { deadline_ = dl; }

  /// Normalize and index one axiom, then saturate.  Throws FragmentError on
  /// not/or/all.
  void add_axiom(const StrongAxiom& ax);

  /// Entailment over everything added so far.  Complex sides are encoded via
  /// definitional atoms (a conservative extension, so the state stays valid).
  bool check(const Query& q);

  /// Atom id for a concept; creates definitional atoms for complex ones.
  int atomize(const ConceptPtr& c);

  /// b ∈ S(a), or a unsatisfiable.
  bool subsumes(int a, int b) const {
    const auto& s = sub_[static_cast<std::size_t>(a)];
    return s.count(b) != 0 || s.count(kBot) != 0;
  }

  /// Enables trail recording; called once the base axioms are loaded.
  /// Trail position 0 then denotes the base state.
  void finish_base() { trailing_ = true; }

  std::size_t trail_mark() const { return trail_.size(); }
  void rollback(std::size_t mark);

  std::vector<std::pair<std::string, std::string>> classify() const;

  static constexpr int kTop = 0;
  static constexpr int kBot = 1;

private:
  struct Fact {
    // kind 0: b newly in S(a);  kind 1: new edge a -r-> b
    std::uint8_t kind;
    int a, b, r;
  };
  struct Ev {
    std::uint8_t tag;  // see kEv* below
    int a, b, r;
    std::uint64_t key;
  };
  static constexpr std::uint8_t kEvSub = 0, kEvEdge = 1, kEvAtom = 2, kEvRole = 3,
                                kEvAx1 = 4, kEvAx2 = 5, kEvAx3 = 6, kEvAx4 = 7,
                                kEvAxKey = 8;

  int intern_atom(const std::string& name, bool user);
  int intern_role(const std::string& name);
  void normalize(const ConceptPtr& lhs, const ConceptPtr& rhs);
  int fresh_atom();

  void emit1(int x, int b);
  void emit2(int x1, int x2, int b);
  void emit3(int x, int r, int b);
  void emit4(int r, int x, int b);
  bool note_axiom(std::uint64_t key);

  void add_sub(int a, int b);
  void add_edge(int r, int a, int b);
  void drain();
  void record(Ev ev) {
    if (trailing_) trail_.push_back(ev);
  }

  // --- atoms & roles ---------------------------------------------------
  std::vector<std::string> atom_names_;
  std::vector<bool> atom_user_;
  std::unordered_map<std::string, int> atom_ids_;
  std::vector<std::string> role_names_;
  std::unordered_map<std::string, int> role_ids_;
  int fresh_counter_ = 0;

  // --- saturation state ------------------------------------------------
  std::vector<std::unordered_set<int>> sub_;   // S(a)
  std::vector<std::vector<int>> inv_;          // inv(b) = {a : b in S(a)}
  std::unordered_set<std::uint64_t> edges_;    // packed (r,a,b)
  std::vector<std::vector<std::vector<int>>> pred_;  // pred_[r][b] = {a}

  // --- axiom indexes ---------------------------------------------------
  struct Ax2 { int other, b; };
  struct AxRole { int r, b; };
  std::vector<std::vector<int>> ax1_;
  std::vector<std::vector<Ax2>> ax2_;
  std::vector<std::vector<AxRole>> ax3_;
  std::vector<std::vector<AxRole>> ax4_;  // indexed by filler
  std::unordered_set<std::uint64_t> axiom_keys_;

  std::vector<Fact> queue_;
  std::vector<Ev> trail_;
  bool trailing_ = false;
  const Deadline* deadline_ = nullptr;
};

}  // namespace dln::detail
