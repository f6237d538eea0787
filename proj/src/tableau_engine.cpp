#include "tableau_engine.hpp"

#include <algorithm>
#include <cassert>

namespace dln::detail {

int TabEngine::intern_atom(const std::string& name) {
  auto it = atom_ids_.find(name);
  if (it != atom_ids_.end()) return it->second;
  int id = static_cast<int>(atom_names_.size());
  atom_ids_.emplace(name, id);
  atom_names_.push_back(name);
  unfold_.emplace_back();
  return id;
}

int TabEngine::intern_role(const std::string& name) {
  auto it = role_ids_.find(name);
  if (it != role_ids_.end()) return it->second;
  int id = static_cast<int>(role_names_.size());
  role_ids_.emplace(name, id);
  role_names_.push_back(name);
  role_ax_.emplace_back();
  return id;
}

int TabEngine::intern(Op op, int atom, int role, std::vector<int> kids) {
  if (op == Op::And || op == Op::Or) {
    // Flatten nested same-op lists and fold constants so every disjunction
    // the search branches on is irredundant.
    std::vector<int> flat;
    for (int k : kids) {
      const TNode& n = nodes_[static_cast<std::size_t>(k)];
      if (n.op == op) {
        flat.insert(flat.end(), n.kids.begin(), n.kids.end());
      } else {
        flat.push_back(k);
      }
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    std::vector<int> kept;
    for (int k : flat) {
      Op ko = nodes_[static_cast<std::size_t>(k)].op;
      if (op == Op::And) {
        if (ko == Op::Bot) return intern(Op::Bot, -1, -1, {});
        if (ko == Op::Top) continue;
      } else {
        if (ko == Op::Top) return intern(Op::Top, -1, -1, {});
        if (ko == Op::Bot) continue;
      }
      kept.push_back(k);
    }
    if (kept.empty()) return intern(op == Op::And ? Op::Top : Op::Bot, -1, -1, {});
    if (kept.size() == 1) return kept[0];
    kids = std::move(kept);
  }

  std::string key;
  key.reserve(16 + kids.size() * 8);
  key += std::to_string(static_cast<int>(op));
  key += ':';
  key += std::to_string(atom);
  key += ':';
  key += std::to_string(role);
  key += ':';
  for (int k : kids) {
    key += std::to_string(k);
    key += ',';
  }
  auto it = node_ids_.find(key);
  if (it != node_ids_.end()) return it->second;
  int id = static_cast<int>(nodes_.size());
  nodes_.push_back({op, atom, role, std::move(kids)});
  neg_.push_back(-1);
  node_ids_.emplace(std::move(key), id);
  return id;
}

int TabEngine::negate(int id) {
  int cached = neg_[static_cast<std::size_t>(id)];
  if (cached >= 0) return cached;
  const TNode n = nodes_[static_cast<std::size_t>(id)];  // copy: intern may reallocate
  int out = -1;
  switch (n.op) {
    case Op::Top: out = intern(Op::Bot, -1, -1, {}); break;
    case Op::Bot: out = intern(Op::Top, -1, -1, {}); break;
    case Op::Atom: out = intern(Op::NegAtom, n.atom, -1, {}); break;
    case Op::NegAtom: out = intern(Op::Atom, n.atom, -1, {}); break;
    case Op::And:
    case Op::Or: {
      std::vector<int> kids;
      kids.reserve(n.kids.size());
      for (int k : n.kids) kids.push_back(negate(k));
      out = intern(n.op == Op::And ? Op::Or : Op::And, -1, -1, std::move(kids));
      break;
    }
    case Op::Exists:
      out = intern(Op::Forall, -1, n.role, {negate(n.kids[0])});
      break;
    case Op::Forall:
      out = intern(Op::Exists, -1, n.role, {negate(n.kids[0])});
      break;
  }
  neg_[static_cast<std::size_t>(id)] = out;
  if (static_cast<std::size_t>(out) < neg_.size() && neg_[static_cast<std::size_t>(out)] < 0)
    neg_[static_cast<std::size_t>(out)] = id;
  return out;
}

int TabEngine::nnf(const ConceptPtr& c, bool negated) {
  std::string memo_key = (negated ? "!" : "+") + c->repr();
  auto it = nnf_memo_.find(memo_key);
  if (it != nnf_memo_.end()) return it->second;
  int out = -1;
  switch (c->kind()) {
    case ConceptKind::Top: out = intern(negated ? Op::Bot : Op::Top, -1, -1, {}); break;
    case ConceptKind::Bottom: out = intern(negated ? Op::Top : Op::Bot, -1, -1, {}); break;
    case ConceptKind::Atomic:
      out = intern(negated ? Op::NegAtom : Op::Atom, intern_atom(c->name()), -1, {});
      break;
    case ConceptKind::Norm:
      out = intern(negated ? Op::NegAtom : Op::Atom, intern_atom(c->repr()), -1, {});
      break;
    case ConceptKind::Not: out = nnf(c->child(), !negated); break;
    case ConceptKind::And:
    case ConceptKind::Or: {
      bool is_and = (c->kind() == ConceptKind::And) != negated;
      std::vector<int> kids;
      kids.reserve(c->children().size());
      for (const auto& ch : c->children()) kids.push_back(nnf(ch, negated));
      out = intern(is_and ? Op::And : Op::Or, -1, -1, std::move(kids));
      break;
    }
    case ConceptKind::Exists:
    case ConceptKind::Forall: {
      bool is_exists = (c->kind() == ConceptKind::Exists) != negated;
      int r = intern_role(c->name());
      out = intern(is_exists ? Op::Exists : Op::Forall, -1, r, {nnf(c->child(), negated)});
      break;
    }
  }
  nnf_memo_.emplace(std::move(memo_key), out);
  return out;
}

void TabEngine::add_unfold(int atom, int concept_id) {
  unfold_[static_cast<std::size_t>(atom)].push_back(concept_id);
  if (trailing_) trail_.push_back({kEvUnfold, atom});
}

void TabEngine::add_role_axiom(int role, int concept_id) {
  role_ax_[static_cast<std::size_t>(role)].push_back(concept_id);
  if (trailing_) trail_.push_back({kEvRoleAx, role});
}

void TabEngine::add_gci(int concept_id) {
  gci_.push_back(concept_id);
  if (trailing_) trail_.push_back({kEvGci, 0});
}

void TabEngine::absorb(const StrongAxiom& ax) {
  const ConceptPtr& lhs = ax.lhs;
  const ConceptPtr& rhs = ax.rhs;
  switch (lhs->kind()) {
    case ConceptKind::Bottom:
      return;
    case ConceptKind::Top:
      add_gci(nnf(rhs, false));
      return;
    case ConceptKind::Atomic:
      add_unfold(intern_atom(lhs->name()), nnf(rhs, false));
      return;
    case ConceptKind::Norm:
      add_unfold(intern_atom(lhs->repr()), nnf(rhs, false));
      return;
    case ConceptKind::Exists: {
      // `some r.X <= D` constrains exactly the nodes with an r-successor;
      // attach `all r.(not X) or D` there and nowhere else.
      int r = intern_role(lhs->name());
      int guard = intern(Op::Forall, -1, r, {nnf(lhs->child(), true)});
      add_role_axiom(r, intern(Op::Or, -1, -1, {guard, nnf(rhs, false)}));
      return;
    }
    case ConceptKind::And: {
      // Hang the axiom behind one atomic conjunct; a normality atom is the
      // best trigger since few labels carry one.
      const ConceptPtr* pick = nullptr;
      for (const auto& ch : lhs->children())
        if (ch->kind() == ConceptKind::Norm) {
          pick = &ch;
          break;
        }
      if (pick == nullptr)
        for (const auto& ch : lhs->children())
          if (ch->kind() == ConceptKind::Atomic) {
            pick = &ch;
            break;
          }
      if (pick != nullptr) {
        int trigger = (*pick)->kind() == ConceptKind::Norm
                          ? intern_atom((*pick)->repr())
                          : intern_atom((*pick)->name());
        std::vector<int> kids;
        for (const auto& ch : lhs->children())
          if (ch.get() != pick->get()) kids.push_back(nnf(ch, true));
        kids.push_back(nnf(rhs, false));
        add_unfold(trigger, intern(Op::Or, -1, -1, std::move(kids)));
        return;
      }
      break;  // no atomic conjunct: fall through to internalization
    }
    case ConceptKind::Not:
    case ConceptKind::Or:
    case ConceptKind::Forall:
      break;
  }
  add_gci(intern(Op::Or, -1, -1, {nnf(lhs, true), nnf(rhs, false)}));
}

void TabEngine::add_axiom(const StrongAxiom& ax) { absorb(ax); }

void TabEngine::rollback(std::size_t mark) {
  assert(mark <= trail_.size());
  while (trail_.size() > mark) {
    Ev ev = trail_.back();
    trail_.pop_back();
    switch (ev.tag) {
      case kEvUnfold: unfold_[static_cast<std::size_t>(ev.slot)].pop_back(); break;
      case kEvRoleAx: role_ax_[static_cast<std::size_t>(ev.slot)].pop_back(); break;
      case kEvGci: gci_.pop_back(); break;
    }
  }
}

void TabEngine::tick() {
  if ((++ticks_ & 0x7ff) == 0 && deadline_ && deadline_->expired()) throw TimeoutError();
}

bool TabEngine::saturate(Label& label, std::vector<int>& open_ors) {
  open_ors.clear();
  for (std::size_t i = 0; i < label.items.size(); ++i) {
    int id = label.items[i];
    const TNode& n = nodes_[static_cast<std::size_t>(id)];
    switch (n.op) {
      case Op::Bot:
        return false;
      case Op::Top:
        break;
      case Op::Atom: {
        if (label.has(negate(id))) return false;
        for (int c : unfold_[static_cast<std::size_t>(n.atom)]) label.insert(c);
        break;
      }
      case Op::NegAtom:
        if (label.has(negate(id))) return false;
        break;
      case Op::And:
        for (int k : n.kids) label.insert(k);
        break;
      case Op::Or: {
        bool settled = false;
        for (int k : n.kids)
          if (label.has(k)) {
            settled = true;
            break;
          }
        if (!settled) open_ors.push_back(id);
        break;
      }
      case Op::Exists:
      case Op::Forall:
        break;
    }
  }
  return true;
}

bool TabEngine::satisfiable(Label label, std::vector<std::vector<int>>& path) {
  tick();
  for (int g : gci_) label.insert(g);

  std::vector<int> open_ors;
  for (;;) {
    if (!saturate(label, open_ors)) return false;

    if (!open_ors.empty()) {
      // Resolve forced disjunctions deterministically; branch on the
      // tightest remaining one.
      int branch_or = -1;
      std::size_t branch_width = static_cast<std::size_t>(-1);
      bool forced = false;
      for (int oid : open_ors) {
        const TNode& n = nodes_[static_cast<std::size_t>(oid)];
        // A forced insertion above may have settled this one already.
        bool settled = false;
        for (int k : n.kids)
          if (label.has(k)) {
            settled = true;
            break;
          }
        if (settled) continue;
        std::vector<int> viable;
        for (int k : n.kids)
          if (!label.has(negate(k))) viable.push_back(k);
        if (viable.empty()) return false;
        if (viable.size() == 1) {
          label.insert(viable[0]);
          forced = true;
          continue;
        }
        if (viable.size() < branch_width) {
          branch_width = viable.size();
          branch_or = oid;
        }
      }
      if (forced) continue;
      assert(branch_or >= 0);
      const TNode& n = nodes_[static_cast<std::size_t>(branch_or)];
      for (int k : n.kids) {
        if (label.has(negate(k))) continue;
        Label next = label;
        next.insert(k);
        if (satisfiable(std::move(next), path)) return true;
      }
      return false;
    }

    // Fully expanded. Attach the per-role choices for roles this node is
    // about to generate successors for; re-saturate if anything is new.
    bool grew = false;
    for (int id : label.items) {
      const TNode& n = nodes_[static_cast<std::size_t>(id)];
      if (n.op != Op::Exists) continue;
      for (int c : role_ax_[static_cast<std::size_t>(n.role)]) grew |= label.insert(c);
    }
    if (grew) continue;
    break;
  }

  std::vector<int> exists;
  for (int id : label.items)
    if (nodes_[static_cast<std::size_t>(id)].op == Op::Exists) exists.push_back(id);
  if (exists.empty()) return true;

  std::vector<int> canon = label.items;
  std::sort(canon.begin(), canon.end());
  for (const auto& anc : path)
    if (anc == canon) return true;  // ancestor repeats: unravel through it

  path.push_back(std::move(canon));
  bool ok = true;
  for (int eid : exists) {
    const TNode& e = nodes_[static_cast<std::size_t>(eid)];
    Label child;
    child.insert(e.kids[0]);
    for (int id : label.items) {
      const TNode& n = nodes_[static_cast<std::size_t>(id)];
      if (n.op == Op::Forall && n.role == e.role) child.insert(n.kids[0]);
    }
    if (!satisfiable(std::move(child), path)) {
      ok = false;
      break;
    }
  }
  path.pop_back();
  return ok;
}

bool TabEngine::check(const Query& q) {
  Label root;
  root.insert(nnf(q.lhs, false));
  root.insert(nnf(q.rhs, true));
  std::vector<std::vector<int>> path;
  return !satisfiable(std::move(root), path);
}

}  // namespace dln::detail
