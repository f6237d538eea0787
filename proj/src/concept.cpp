#include "dln/concept.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <stdexcept>

namespace dln {

namespace {

// Precedence levels used when serializing: `or` binds loosest, `and` tighter,
// unary constructs (not / quantifiers / atoms / N(...) / parens) tightest.
enum Level : int { kOr = 0, kAnd = 1, kUnary = 2 };

int level_of(ConceptKind k) {
  switch (k) {
    case ConceptKind::Or: return kOr;
    case ConceptKind::And: return kAnd;
    default: return kUnary;
  }
}

// Serialize `c` for a context requiring at least `min` precedence,
// parenthesizing when the node binds looser than the context.
std::string render(const ConceptPtr& c, int min) {
  if (level_of(c->kind()) < min) return "(" + c->repr() + ")";
  return c->repr();
}

std::string render_node(ConceptKind kind, const std::string& name,
                        const std::vector<ConceptPtr>& children) {
  switch (kind) {
    case ConceptKind::Top: return "Top";
    case ConceptKind::Bottom: return "Bot";
    case ConceptKind::Atomic: return name;
    case ConceptKind::Not: return "not " + render(children.front(), kUnary);
    case ConceptKind::Exists:
      return "some " + name + " . " + render(children.front(), kUnary);
    case ConceptKind::Forall:
      return "all " + name + " . " + render(children.front(), kUnary);
    case ConceptKind::Norm: return "N(" + children.front()->repr() + ")";
    case ConceptKind::And: {
      std::string out;
      for (const auto& ch : children) {
        if (!out.empty()) out += " and ";
        out += render(ch, kAnd + 1);
      }
      return out;
    }
    case ConceptKind::Or: {
      std::string out;
      for (const auto& ch : children) {
        if (!out.empty()) out += " or ";
        out += render(ch, kOr + 1);
      }
      return out;
    }
  }
  assert(false && "unreachable concept kind");
  return {};
}

ConceptPtr make(ConceptKind kind, std::string name, std::vector<ConceptPtr> children) {
  return std::make_shared<ConceptNode>(kind, std::move(name), std::move(children),
                                       std::string());
}

// Flatten nested And/And (resp. Or/Or), sort by serialization, drop duplicates.
std::vector<ConceptPtr> canonical_children(ConceptKind kind,
                                           std::span<const ConceptPtr> cs) {
  std::vector<ConceptPtr> flat;
  flat.reserve(cs.size());
  for (const auto& c : cs) {
    assert(c && "null concept operand");
    if (c->kind() == kind) {
      for (const auto& ch : c->children()) flat.push_back(ch);
    } else {
      flat.push_back(c);
    }
  }
  std::sort(flat.begin(), flat.end(), ConceptLess{});
  flat.erase(std::unique(flat.begin(), flat.end(),
                         [](const ConceptPtr& a, const ConceptPtr& b) {
                           return equal(a, b);
                         }),
             flat.end());
  return flat;
}

ConceptPtr nary(ConceptKind kind, std::span<const ConceptPtr> cs) {
  auto flat = canonical_children(kind, cs);
  assert(!flat.empty() && "empty And/Or");
  if (flat.size() == 1) return flat.front();
  return make(kind, "", std::move(flat));
}

}  // namespace

ConceptNode::ConceptNode(ConceptKind kind, std::string name,
                         std::vector<ConceptPtr> children, std::string repr)
    : kind_(kind), name_(std::move(name)), children_(std::move(children)),
      repr_(std::move(repr)) {
  // A node's repr is computed from its (already canonical) children.
  if (repr_.empty()) repr_ = render_node(kind_, name_, children_);
  hash_ = std::hash<std::string>{}(repr_);
}

ConceptPtr top() {
  static const ConceptPtr t = make(ConceptKind::Top, "", {});
  return t;
}

ConceptPtr bottom() {
  static const ConceptPtr b = make(ConceptKind::Bottom, "", {});
  return b;
}

ConceptPtr atom(std::string name) {
  assert(!name.empty());
  return make(ConceptKind::Atomic, std::move(name), {});
}

ConceptPtr negate(ConceptPtr c) { return make(ConceptKind::Not, "", {std::move(c)}); }

ConceptPtr conj(ConceptPtr a, ConceptPtr b) {
  const ConceptPtr cs[] = {std::move(a), std::move(b)};
  return nary(ConceptKind::And, cs);
}

ConceptPtr conj(std::span<const ConceptPtr> cs) { return nary(ConceptKind::And, cs); }

ConceptPtr disj(ConceptPtr a, ConceptPtr b) {
  const ConceptPtr cs[] = {std::move(a), std::move(b)};
  return nary(ConceptKind::Or, cs);
}

ConceptPtr disj(std::span<const ConceptPtr> cs) { return nary(ConceptKind::Or, cs); }

ConceptPtr exists(std::string role, ConceptPtr filler) {
  assert(!role.empty());
  return make(ConceptKind::Exists, std::move(role), {std::move(filler)});
}

ConceptPtr forall(std::string role, ConceptPtr filler) {
  assert(!role.empty());
  return make(ConceptKind::Forall, std::move(role), {std::move(filler)});
}

ConceptPtr norm(ConceptPtr c) {
  if (contains_norm(c))
    throw std::invalid_argument("normality concepts cannot be nested: N applied to " +
                                c->repr());
  return make(ConceptKind::Norm, "", {std::move(c)});
}

bool contains_norm(const ConceptPtr& c) {
  if (c->kind() == ConceptKind::Norm) return true;
  for (const auto& ch : c->children())
    if (contains_norm(ch)) return true;
  return false;
}

}  // namespace dln
