#include "el_engine.hpp"

#include <cassert>

namespace dln::detail {

namespace {

constexpr std::uint64_t kEdgeBits = 21;  // atoms in edge keys; roles get the rest
constexpr std::uint64_t kEdgeMask = (1ull << kEdgeBits) - 1;

std::uint64_t pack_edge(int r, int a, int b) {
  assert(a >= 0 && b >= 0 && r >= 0);
  assert(static_cast<std::uint64_t>(a) <= kEdgeMask &&
         static_cast<std::uint64_t>(b) <= kEdgeMask);
  return (static_cast<std::uint64_t>(r) << (2 * kEdgeBits)) |
         (static_cast<std::uint64_t>(a) << kEdgeBits) | static_cast<std::uint64_t>(b);
}

// Exact axiom identity for deduplication: 2 form bits + three 20-bit fields.
// Atom ids are bounded by the packing; far beyond desk scale.
constexpr std::uint64_t kAxBits = 20;
constexpr std::uint64_t kAxMask = (1ull << kAxBits) - 1;

std::uint64_t pack_axiom(std::uint64_t form, std::uint64_t x, std::uint64_t y,
                         std::uint64_t z) {
  assert(x <= kAxMask && y <= kAxMask && z <= kAxMask);
  return form | (x << 2) | (y << (2 + kAxBits)) | (z << (2 + 2 * kAxBits));
}

}  // namespace

ElEngine::ElEngine() {
  intern_atom("Top", false);
  intern_atom("Bot", false);
  assert(atom_names_[kTop] == "Top" && atom_names_[kBot] == "Bot");
}

int ElEngine::intern_atom(const std::string& name, bool user) {
  auto it = atom_ids_.find(name);
  if (it != atom_ids_.end()) return it->second;
  int id = static_cast<int>(atom_names_.size());
  atom_ids_.emplace(name, id);
  atom_names_.push_back(name);
  atom_user_.push_back(user);
  sub_.emplace_back();
  inv_.emplace_back();
  ax1_.emplace_back();
  ax2_.emplace_back();
  ax3_.emplace_back();
  ax4_.emplace_back();
  record({kEvAtom, id, 0, 0, 0});
  // Reflexivity and Top membership; queued so rules fire on them.
  add_sub(id, id);
  if (id != kTop) add_sub(id, kTop);
  return id;
}

int ElEngine::intern_role(const std::string& name) {
  auto it = role_ids_.find(name);
  if (it != role_ids_.end()) return it->second;
  int id = static_cast<int>(role_names_.size());
  role_ids_.emplace(name, id);
  role_names_.push_back(name);
  pred_.emplace_back();
  record({kEvRole, id, 0, 0, 0});
  return id;
}

int ElEngine::fresh_atom() {
  // Serialized concept reprs contain spaces or parens, plain names don't;
  // the '!' prefix keeps generated names out of both spaces.
  return intern_atom("!g" + std::to_string(fresh_counter_++), false);
}

int ElEngine::atomize(const ConceptPtr& c) {
  switch (c->kind()) {
    case ConceptKind::Top: return kTop;
    case ConceptKind::Bottom: return kBot;
    case ConceptKind::Atomic: return intern_atom(c->name(), true);
    case ConceptKind::Norm: return intern_atom(c->repr(), true);
    case ConceptKind::And: {
      auto it = atom_ids_.find(c->repr());
      if (it != atom_ids_.end()) return it->second;
      int f = intern_atom(c->repr(), false);
      std::vector<int> parts;
      parts.reserve(c->children().size());
      for (const auto& ch : c->children()) parts.push_back(atomize(ch));
      // f <= each part, and the folded conjunction <= f.
      for (int p : parts) emit1(f, p);
      int cur = parts[0];
      for (std::size_t i = 1; i + 1 < parts.size(); ++i) {
        int g = fresh_atom();
        emit2(cur, parts[i], g);
        cur = g;
      }
      emit2(cur, parts.back(), f);
      return f;
    }
    case ConceptKind::Exists: {
      auto it = atom_ids_.find(c->repr());
      if (it != atom_ids_.end()) return it->second;
      int f = intern_atom(c->repr(), false);
      int r = intern_role(c->name());
      int filler = atomize(c->child());
      emit3(f, r, filler);
      emit4(r, filler, f);
      return f;
    }
    case ConceptKind::Not:
    case ConceptKind::Or:
    case ConceptKind::Forall:
      throw FragmentError("concept outside the existential fragment: " + c->repr());
  }
  assert(false);
  return kTop;
}

void ElEngine::add_axiom(const StrongAxiom& ax) {
  normalize(ax.lhs, ax.rhs);
  drain();
}

void ElEngine::normalize(const ConceptPtr& lhs, const ConceptPtr& rhs) {
  // Split conjunctive right-hand sides; drop tautologies.
  if (rhs->kind() == ConceptKind::And) {
    for (const auto& ch : rhs->children()) normalize(lhs, ch);
    return;
  }
  if (rhs->kind() == ConceptKind::Top) return;
  if (lhs->kind() == ConceptKind::Bottom) return;

  switch (lhs->kind()) {
    case ConceptKind::Top:
    case ConceptKind::Atomic:
    case ConceptKind::Norm:
    case ConceptKind::Bottom: {
      int x = atomize(lhs);
      if (rhs->kind() == ConceptKind::Exists) {
        int r = intern_role(rhs->name());
        emit3(x, r, atomize(rhs->child()));
      } else {
        emit1(x, atomize(rhs));
      }
      return;
    }
    case ConceptKind::Exists: {
      int r = intern_role(lhs->name());
      int filler = atomize(lhs->child());
      emit4(r, filler, atomize(rhs));
      return;
    }
    case ConceptKind::And: {
      std::vector<int> parts;
      parts.reserve(lhs->children().size());
      for (const auto& ch : lhs->children()) parts.push_back(atomize(ch));
      int d = atomize(rhs);
      if (parts.size() == 1) {
        emit1(parts[0], d);
        return;
      }
      int cur = parts[0];
      for (std::size_t i = 1; i + 1 < parts.size(); ++i) {
        int g = fresh_atom();
        emit2(cur, parts[i], g);
        cur = g;
      }
      emit2(cur, parts.back(), d);
      return;
    }
    case ConceptKind::Not:
    case ConceptKind::Or:
    case ConceptKind::Forall:
      throw FragmentError("axiom outside the existential fragment: " + lhs->repr());
  }
}

bool ElEngine::note_axiom(std::uint64_t key) {
  if (!axiom_keys_.insert(key).second) return false;
  record({kEvAxKey, 0, 0, 0, key});
  return true;
}

void ElEngine::emit1(int x, int b) {
  if (!note_axiom(pack_axiom(0, static_cast<std::uint64_t>(x),
                             static_cast<std::uint64_t>(b), 0)))
    return;
  ax1_[static_cast<std::size_t>(x)].push_back(b);
  record({kEvAx1, x, 0, 0, 0});
  // Seed: everything currently below x picks up b.
  std::vector<int> snapshot = inv_[static_cast<std::size_t>(x)];
  for (int a : snapshot) add_sub(a, b);
}

void ElEngine::emit2(int x1, int x2, int b) {
  std::uint64_t lo = static_cast<std::uint64_t>(std::min(x1, x2));
  std::uint64_t hi = static_cast<std::uint64_t>(std::max(x1, x2));
  if (!note_axiom(pack_axiom(1, lo, hi, static_cast<std::uint64_t>(b)))) return;
  ax2_[static_cast<std::size_t>(x1)].push_back({x2, b});
  record({kEvAx2, x1, 0, 0, 0});
  if (x1 != x2) {
    ax2_[static_cast<std::size_t>(x2)].push_back({x1, b});
    record({kEvAx2, x2, 0, 0, 0});
  }
  const auto& i1 = inv_[static_cast<std::size_t>(x1)];
  const auto& i2 = inv_[static_cast<std::size_t>(x2)];
  std::vector<int> snapshot = i1.size() <= i2.size() ? i1 : i2;
  int other = i1.size() <= i2.size() ? x2 : x1;
  for (int a : snapshot)
    if (sub_[static_cast<std::size_t>(a)].count(other) != 0) add_sub(a, b);
}

void ElEngine::emit3(int x, int r, int b) {
  if (!note_axiom(pack_axiom(2, static_cast<std::uint64_t>(x),
                             static_cast<std::uint64_t>(b),
                             static_cast<std::uint64_t>(r))))
    return;
  ax3_[static_cast<std::size_t>(x)].push_back({r, b});
  record({kEvAx3, x, 0, 0, 0});
  std::vector<int> snapshot = inv_[static_cast<std::size_t>(x)];
  for (int a : snapshot) add_edge(r, a, b);
}

void ElEngine::emit4(int r, int x, int b) {
  if (!note_axiom(pack_axiom(3, static_cast<std::uint64_t>(x),
                             static_cast<std::uint64_t>(b),
                             static_cast<std::uint64_t>(r))))
    return;
  ax4_[static_cast<std::size_t>(x)].push_back({r, b});
  record({kEvAx4, x, 0, 0, 0});
  std::vector<int> snapshot = inv_[static_cast<std::size_t>(x)];
  auto& byRole = pred_[static_cast<std::size_t>(r)];
  for (int y : snapshot) {
    if (static_cast<std::size_t>(y) >= byRole.size()) continue;
    std::vector<int> preds = byRole[static_cast<std::size_t>(y)];
    for (int p : preds) add_sub(p, b);
  }
}

void ElEngine::add_sub(int a, int b) {
  if (!sub_[static_cast<std::size_t>(a)].insert(b).second) return;
  inv_[static_cast<std::size_t>(b)].push_back(a);
  record({kEvSub, a, b, 0, 0});
  queue_.push_back({0, a, b, 0});
}

void ElEngine::add_edge(int r, int a, int b) {
  if (!edges_.insert(pack_edge(r, a, b)).second) return;
  auto& byRole = pred_[static_cast<std::size_t>(r)];
  if (static_cast<std::size_t>(b) >= byRole.size())
    byRole.resize(static_cast<std::size_t>(b) + 1);
  byRole[static_cast<std::size_t>(b)].push_back(a);
  record({kEvEdge, a, b, r, 0});
  queue_.push_back({1, a, b, r});
}

void ElEngine::drain() {
  std::size_t steps = 0;
  while (!queue_.empty()) {
    if ((++steps & 0x1fff) == 0 && deadline_ && deadline_->expired())
      throw TimeoutError();
    Fact f = queue_.back();
    queue_.pop_back();
    if (f.kind == 0) {
      const int a = f.a, x = f.b;
      for (int b : ax1_[static_cast<std::size_t>(x)]) add_sub(a, b);
      for (const Ax2& ax : ax2_[static_cast<std::size_t>(x)])
        if (sub_[static_cast<std::size_t>(a)].count(ax.other) != 0) add_sub(a, ax.b);
      for (const AxRole& ax : ax3_[static_cast<std::size_t>(x)])
        add_edge(ax.r, a, ax.b);
      // a as an edge filler: axioms `some r.x <= b` and Bot propagation.
      for (const AxRole& ax : ax4_[static_cast<std::size_t>(x)]) {
        const auto& byRole = pred_[static_cast<std::size_t>(ax.r)];
        if (static_cast<std::size_t>(a) < byRole.size()) {
          std::vector<int> preds = byRole[static_cast<std::size_t>(a)];
          for (int p : preds) add_sub(p, ax.b);
        }
      }
      if (x == kBot) {
        for (std::size_t r = 0; r < pred_.size(); ++r) {
          if (static_cast<std::size_t>(a) >= pred_[r].size()) continue;
          std::vector<int> preds = pred_[r][static_cast<std::size_t>(a)];
          for (int p : preds) add_sub(p, kBot);
        }
      }
    } else {
      const int a = f.a, b = f.b, r = f.r;
      if (sub_[static_cast<std::size_t>(b)].count(kBot) != 0) add_sub(a, kBot);
      // Snapshot: add_sub may touch sub_[a], and a self-edge aliases it.
      std::vector<int> fillers(sub_[static_cast<std::size_t>(b)].begin(),
                               sub_[static_cast<std::size_t>(b)].end());
      for (int x : fillers)
        for (const AxRole& ax : ax4_[static_cast<std::size_t>(x)])
          if (ax.r == r) add_sub(a, ax.b);
    }
  }
}

bool ElEngine::check(const Query& q) {
  int x = atomize(q.lhs);
  int y = atomize(q.rhs);
  drain();
  return subsumes(x, y);
}

void ElEngine::rollback(std::size_t mark) {
  assert(queue_.empty() && "rollback with pending facts");
  assert(mark <= trail_.size());
  while (trail_.size() > mark) {
    const Ev ev = trail_.back();
    trail_.pop_back();
    switch (ev.tag) {
      case kEvSub: {
        sub_[static_cast<std::size_t>(ev.a)].erase(ev.b);
        auto& v = inv_[static_cast<std::size_t>(ev.b)];
        assert(!v.empty() && v.back() == ev.a);
        v.pop_back();
        break;
      }
      case kEvEdge: {
        edges_.erase(pack_edge(ev.r, ev.a, ev.b));
        auto& v = pred_[static_cast<std::size_t>(ev.r)][static_cast<std::size_t>(ev.b)];
        assert(!v.empty() && v.back() == ev.a);
        v.pop_back();
        break;
      }
      case kEvAtom: {
        assert(ev.a == static_cast<int>(atom_names_.size()) - 1);
        atom_ids_.erase(atom_names_.back());
        atom_names_.pop_back();
        atom_user_.pop_back();
        assert(sub_.back().empty());
        sub_.pop_back();
        inv_.pop_back();
        ax1_.pop_back();
        ax2_.pop_back();
        ax3_.pop_back();
        ax4_.pop_back();
        break;
      }
      case kEvRole: {
        assert(ev.a == static_cast<int>(role_names_.size()) - 1);
        role_ids_.erase(role_names_.back());
        role_names_.pop_back();
        pred_.pop_back();
        break;
      }
      case kEvAx1: ax1_[static_cast<std::size_t>(ev.a)].pop_back(); break;
      case kEvAx2: ax2_[static_cast<std::size_t>(ev.a)].pop_back(); break;
      case kEvAx3: ax3_[static_cast<std::size_t>(ev.a)].pop_back(); break;
      case kEvAx4: ax4_[static_cast<std::size_t>(ev.a)].pop_back(); break;
      case kEvAxKey: axiom_keys_.erase(ev.key); break;
      default: assert(false);
    }
  }
}

std::vector<std::pair<std::string, std::string>> ElEngine::classify() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t a = 0; a < atom_names_.size(); ++a) {
    if (!atom_user_[a]) continue;
    const auto& s = sub_[a];
    for (int b : s)
      if (atom_user_[static_cast<std::size_t>(b)])
        out.emplace_back(atom_names_[a], atom_names_[static_cast<std::size_t>(b)]);
    if (s.count(kBot) != 0) out.emplace_back(atom_names_[a], "Bot");
  }
  return out;
}

}  // namespace dln::detail
