#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dln/kb.hpp"

namespace dln {

namespace detail {
class ElEngine;
class TabEngine;
}  // namespace detail

// ============================================================================
// Classical entailment: EL-with-Bot completion + ALC tableau back-ends
// ============================================================================

/// Wall-clock budget checked cooperatively inside long-running constructions.
struct Deadline {
  std::chrono::steady_clock::time_point at;

  static Deadline after_ms(std::int64_t ms) {
    return {std::chrono::steady_clock::now() + std::chrono::milliseconds(ms)};
  }
  bool expired() const { return std::chrono::steady_clock::now() >= at; }
};

class TimeoutError : public std::runtime_error {
public:
  TimeoutError() : std::runtime_error("query deadline exceeded") {}
};

/// Raised when an operation restricted to the existential fragment
/// (no not/or/all) is invoked on axioms outside it.
class FragmentError : public std::runtime_error {
public:
  explicit FragmentError(const std::string& what) : std::runtime_error(what) {}
};

/// Counters accumulated across an entire query pipeline.
struct ReasonerStats {
  std::int64_t entailment_checks = 0;
  std::int64_t session_rebuilds = 0;
};

enum class Backend : std::uint8_t { Auto, Completion, Tableau };

/// True when the concept stays inside the existential fragment handled by the
/// completion back-end (atoms, Top/Bot, and, some; normality concepts count as
/// atoms).
bool in_el_fragment(const ConceptPtr& c);
bool in_el_fragment(const StrongAxiom& ax);

/// Deduplicating, order-preserving set of strong axioms.  This is the input
/// type of the classical back-ends; normality subterms are handled opaquely
/// (as atomic names) by both engines.
class ClassicalAxiomSet {
public:
  ClassicalAxiomSet() = default;
  explicit ClassicalAxiomSet(std::span<const StrongAxiom> axioms) {
    for (const auto& ax : axioms) add(ax);
  }

  /// Returns true if the axiom was new.
  bool add(const StrongAxiom& ax) {
    if (!keys_.insert(ax.key()).second) return false;
    axioms_.push_back(ax);
    el_ = el_ && in_el_fragment(ax);
    return true;
  }
  bool contains(const StrongAxiom& ax) const { return keys_.count(ax.key()) != 0; }
  bool contains_key(const std::string& key) const { return keys_.count(key) != 0; }

  const std::vector<StrongAxiom>& axioms() const { return axioms_; }
  std::size_t size() const { return axioms_.size(); }
  bool all_el() const { return el_; }

private:
  std::vector<StrongAxiom> axioms_;
  std::unordered_set<std::string> keys_;
  bool el_ = true;
};

/// One-shot classical entailment with automatic back-end selection: the
/// completion engine when every axiom and the query fit the existential
/// fragment, the tableau otherwise.
bool entails(const ClassicalAxiomSet& axioms, const Query& q,
             ReasonerStats* stats = nullptr, Backend backend = Backend::Auto,
             const Deadline* deadline = nullptr);

/// All entailed subsumptions between atomic names of the axiom set (normality
/// names included), reflexive pairs included; unsatisfiable names additionally
/// pair with "Bot".  Existential fragment only — throws FragmentError.
std::vector<std::pair<std::string, std::string>> classify(
    const ClassicalAxiomSet& axioms, ReasonerStats* stats = nullptr);

// ============================================================================
// Incremental sessions
// ============================================================================

/// A reasoning session over a fixed base set plus a growing set of additions.
///
/// Answers are always exact over base ∪ additions.  Monotone extensions reuse
/// the saturated state; any non-monotone `session_check` target triggers a
/// rebuild (counted — this is the deletion-cost proxy the benchmarks measure).
/// Opening the session counts as the first rebuild.
class ReasonerSession {
public:
  explicit ReasonerSession(ClassicalAxiomSet base, ReasonerStats* sink = nullptr);
  ~ReasonerSession();
  ReasonerSession(ReasonerSession&&) noexcept;
  ReasonerSession& operator=(ReasonerSession&&) noexcept;

  void set_deadline(const Deadline* dl) { deadline_ = dl; }

  /// Monotone extension of the additions; never rebuilds.
  void add(std::span<const StrongAxiom> axioms);

  /// Entailment over base ∪ additions.
  bool check(const Query& q);

  /// Entailment over base ∪ `target`: if `target` extends the current
  /// additions it is adopted incrementally, otherwise the session rebuilds
  /// with exactly `target` as its additions.
  bool session_check(std::span<const StrongAxiom> target, const Query& q);

  /// One-step undo point over the additions (and the underlying saturation).
  /// Marks must be released LIFO.  Rolling back is not a rebuild.
  std::size_t mark();
  void rollback(std::size_t mark);

  std::int64_t rebuilds() const { return rebuilds_; }
  std::int64_t checks() const { return checks_; }
  const ClassicalAxiomSet& base() const { return base_; }
  const std::vector<StrongAxiom>& additions() const { return additions_; }

private:
  void reset_additions(std::span<const StrongAxiom> target);
  void push_addition(const StrongAxiom& ax);
  bool eval(const Query& q);
  bool el_usable(const Query& q) const;
  void ensure_el_built();
  void ensure_tab_built();

  ClassicalAxiomSet base_;
  std::vector<StrongAxiom> additions_;
  std::unordered_set<std::string> addition_keys_;
  int non_el_additions_ = 0;

  // Each engine is built lazily from base-then-current-additions.  While an
  // engine exists, *_add_pos_[i] is its trail position just before
  // additions_[i] was fed to it, so truncating the additions can truncate the
  // saturation exactly.  A timeout can leave an engine mid-saturation; it is
  // discarded ("poisoned") and the whole session is expected to be dropped.
  std::unique_ptr<detail::ElEngine> el_;
  std::vector<std::size_t> el_add_pos_;
  std::unique_ptr<detail::TabEngine> tab_;
  std::vector<std::size_t> tab_add_pos_;

  std::vector<std::size_t> marks_;  // additions_.size() at mark time

  std::int64_t rebuilds_ = 0;
  std::int64_t checks_ = 0;
  ReasonerStats* sink_ = nullptr;
  const Deadline* deadline_ = nullptr;
};

}  // namespace dln
