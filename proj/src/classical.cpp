#include "dln/classical.hpp"

#include <cassert>

#include "el_engine.hpp"
#include "tableau_engine.hpp"

namespace dln {

bool in_el_fragment(const ConceptPtr& c) {
  switch (c->kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bottom:
    case ConceptKind::Atomic:
    case ConceptKind::Norm:
      return true;
    case ConceptKind::Not:
    case ConceptKind::Or:
    case ConceptKind::Forall:
      return false;
    case ConceptKind::And: {
      for (const auto& ch : c->children())
        if (!in_el_fragment(ch)) return false;
      return true;
    }
    case ConceptKind::Exists:
      return in_el_fragment(c->child());
  }
  assert(false);
  return false;
}

bool in_el_fragment(const StrongAxiom& ax) {
  return in_el_fragment(ax.lhs) && in_el_fragment(ax.rhs);
}

namespace {

bool in_el_fragment(const Query& q) {
  return in_el_fragment(q.lhs) && in_el_fragment(q.rhs);
}

}  // namespace

bool entails(const ClassicalAxiomSet& axioms, const Query& q, ReasonerStats* stats,
             Backend backend, const Deadline* deadline) {
  bool use_el = false;
  switch (backend) {
    case Backend::Completion:
      if (!axioms.all_el() || !in_el_fragment(q))
        throw FragmentError("completion back-end outside the existential fragment");
      use_el = true;
      break;
    case Backend::Tableau:
      use_el = false;
      break;
    case Backend::Auto:
      use_el = axioms.all_el() && in_el_fragment(q);
      break;
  }
  if (stats != nullptr) {
    stats->entailment_checks += 1;
    stats->session_rebuilds += 1;
  }
  if (use_el) {
    detail::ElEngine eng;
    eng.set_deadline(deadline);
    for (const auto& ax : axioms.axioms()) eng.add_axiom(ax);
    return eng.check(q);
  }
  detail::TabEngine eng;
  eng.set_deadline(deadline);
  for (const auto& ax : axioms.axioms()) eng.add_axiom(ax);
  return eng.check(q);
}

std::vector<std::pair<std::string, std::string>> classify(const ClassicalAxiomSet& axioms,
                                                          ReasonerStats* stats) {
  if (!axioms.all_el())
    throw FragmentError("classification requires the existential fragment");
  if (stats != nullptr) {
    stats->entailment_checks += 1;
    stats->session_rebuilds += 1;
  }
  detail::ElEngine eng;
  for (const auto& ax : axioms.axioms()) eng.add_axiom(ax);
  return eng.classify();
}

// ============================================================================
// ReasonerSession
// ============================================================================

ReasonerSession::ReasonerSession(ClassicalAxiomSet base, ReasonerStats* sink)
    : base_(std::move(base)), sink_(sink) {
  rebuilds_ = 1;  // opening the session is its first build
  if (sink_ != nullptr) sink_->session_rebuilds += 1;
}

ReasonerSession::~ReasonerSession() = default;
ReasonerSession::ReasonerSession(ReasonerSession&&) noexcept = default;
ReasonerSession& ReasonerSession::operator=(ReasonerSession&&) noexcept = default;

void ReasonerSession::ensure_el_built() {
  if (el_) return;
  assert(base_.all_el() && non_el_additions_ == 0);
  auto eng = std::make_unique<detail::ElEngine>();
  eng->set_deadline(deadline_);
  el_add_pos_.clear();
  for (const auto& ax : base_.axioms()) eng->add_axiom(ax);
  eng->finish_base();
  for (const auto& ax : additions_) {
    el_add_pos_.push_back(eng->trail_mark());
    eng->add_axiom(ax);
  }
  el_ = std::move(eng);
}

void ReasonerSession::ensure_tab_built() {
  if (tab_) return;
  auto eng = std::make_unique<detail::TabEngine>();
  eng->set_deadline(deadline_);
  tab_add_pos_.clear();
  for (const auto& ax : base_.axioms()) eng->add_axiom(ax);
  eng->finish_base();
  for (const auto& ax : additions_) {
    tab_add_pos_.push_back(eng->trail_mark());
    eng->add_axiom(ax);
  }
  tab_ = std::move(eng);
}

void ReasonerSession::push_addition(const StrongAxiom& ax) {
  if (!addition_keys_.insert(ax.key()).second) return;
  additions_.push_back(ax);
  bool el = in_el_fragment(ax);
  if (!el) non_el_additions_ += 1;
  if (el_) {
    el_->set_deadline(deadline_);
    el_add_pos_.push_back(el_->trail_mark());
    if (el) {
      try {
        el_->add_axiom(ax);
      } catch (const TimeoutError&) {
        // Mid-saturation state is unusable; the caller abandons the session.
        el_.reset();
        el_add_pos_.clear();
        throw;
      }
    }
  }
  if (tab_) {
    tab_add_pos_.push_back(tab_->trail_mark());
    tab_->add_axiom(ax);
  }
}

void ReasonerSession::add(std::span<const StrongAxiom> axioms) {
  for (const auto& ax : axioms) push_addition(ax);
}

bool ReasonerSession::el_usable(const Query& q) const {
  return base_.all_el() && non_el_additions_ == 0 && in_el_fragment(q.lhs) &&
         in_el_fragment(q.rhs);
}

bool ReasonerSession::eval(const Query& q) {
  checks_ += 1;
  if (sink_ != nullptr) sink_->entailment_checks += 1;
  if (el_usable(q)) {
    ensure_el_built();
    el_->set_deadline(deadline_);
    try {
      return el_->check(q);
    } catch (const TimeoutError&) {
      el_.reset();
      el_add_pos_.clear();
      throw;
    }
  }
  ensure_tab_built();
  tab_->set_deadline(deadline_);
  // A timed-out search leaves the compiled indexes untouched, so no cleanup.
  return tab_->check(q);
}

bool ReasonerSession::check(const Query& q) { return eval(q); }

bool ReasonerSession::session_check(std::span<const StrongAxiom> target, const Query& q) {
  std::unordered_set<std::string> target_keys;
  target_keys.reserve(target.size());
  for (const auto& ax : target) target_keys.insert(ax.key());

  bool monotone = true;
  for (const auto& key : addition_keys_)
    if (target_keys.count(key) == 0) {
      monotone = false;
      break;
    }

  if (monotone) {
    for (const auto& ax : target)
      if (addition_keys_.count(ax.key()) == 0) push_addition(ax);
  } else {
    reset_additions(target);
  }
  return eval(q);
}

void ReasonerSession::reset_additions(std::span<const StrongAxiom> target) {
  assert(marks_.empty() && "rebuild inside a marked region");
  rebuilds_ += 1;
  if (sink_ != nullptr) sink_->session_rebuilds += 1;
  additions_.clear();
  addition_keys_.clear();
  non_el_additions_ = 0;
  if (el_) {
    el_->rollback(0);  // back to the base state
    el_add_pos_.clear();
  }
  if (tab_) {
    tab_->rollback(0);
    tab_add_pos_.clear();
  }
  for (const auto& ax : target) push_addition(ax);
}

std::size_t ReasonerSession::mark() {
  // Realize the engine the marked region will query, so the per-candidate
  // work inside the region is incremental rather than a from-scratch build.
  if (base_.all_el() && non_el_additions_ == 0)
    ensure_el_built();
  else
    ensure_tab_built();
  marks_.push_back(additions_.size());
  return additions_.size();
}

void ReasonerSession::rollback(std::size_t mark) {
  assert(!marks_.empty() && marks_.back() == mark && "marks are LIFO");
  marks_.pop_back();
  assert(mark <= additions_.size());
  for (std::size_t i = mark; i < additions_.size(); ++i) {
    addition_keys_.erase(additions_[i].key());
    if (!in_el_fragment(additions_[i])) non_el_additions_ -= 1;
  }
  additions_.resize(mark);
  if (el_ && mark < el_add_pos_.size()) {
    el_->rollback(el_add_pos_[mark]);
    el_add_pos_.resize(mark);
  }
  if (tab_ && mark < tab_add_pos_.size()) {
    tab_->rollback(tab_add_pos_[mark]);
    tab_add_pos_.resize(mark);
  }
}

}  // namespace dln
