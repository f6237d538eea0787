#include "dln/kb.hpp"

#include <algorithm>
#include <unordered_set>

namespace dln {

void collect_signature(const ConceptPtr& c, Signature& out) {
  switch (c->kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bottom:
      return;
    case ConceptKind::Atomic:
      out.concepts.insert(c->name());
      return;
    case ConceptKind::Norm:
      // Opaque: the normality concept is its own atomic name.
      out.concepts.insert(c->repr());
      return;
    case ConceptKind::Exists:
    case ConceptKind::Forall:
      out.roles.insert(c->name());
      collect_signature(c->child(), out);
      return;
    case ConceptKind::Not:
    case ConceptKind::And:
    case ConceptKind::Or:
      for (const auto& ch : c->children()) collect_signature(ch, out);
      return;
  }
}

Signature signature_of(const ConceptPtr& c) {
  Signature s;
  collect_signature(c, s);
  return s;
}

Signature signature_of(const StrongAxiom& ax) {
  Signature s;
  collect_signature(ax.lhs, s);
  collect_signature(ax.rhs, s);
  return s;
}

Signature signature_of(const DefeasibleInclusion& di) {
  Signature s;
  collect_signature(di.pre, s);
  collect_signature(di.con, s);
  return s;
}

Signature signature_of(const Query& q) {
  Signature s;
  collect_signature(q.lhs, s);
  collect_signature(q.rhs, s);
  return s;
}

Signature signature_of(const KnowledgeBase& kb) {
  Signature s;
  for (const auto& ax : kb.strong) {
    collect_signature(ax.lhs, s);
    collect_signature(ax.rhs, s);
  }
  for (const auto& di : kb.defeasible) {
    collect_signature(di.pre, s);
    collect_signature(di.con, s);
  }
  return s;
}

void collect_norms(const ConceptPtr& c, std::vector<ConceptPtr>& out) {
  if (c->kind() == ConceptKind::Norm) {
    out.push_back(c);
    return;  // no nesting below a normality concept
  }
  for (const auto& ch : c->children()) collect_norms(ch, out);
}

std::vector<ConceptPtr> collect_sigma(const KnowledgeBase& kb, const Query& q) {
  std::vector<ConceptPtr> all;
  for (const auto& ax : kb.strong) {
    collect_norms(ax.lhs, all);
    collect_norms(ax.rhs, all);
  }
  for (const auto& di : kb.defeasible) {
    collect_norms(di.pre, all);  // premises are N-free by invariant; harmless
    collect_norms(di.con, all);
  }
  collect_norms(q.lhs, all);
  collect_norms(q.rhs, all);

  std::sort(all.begin(), all.end(), ConceptLess{});
  all.erase(std::unique(all.begin(), all.end(),
                        [](const ConceptPtr& a, const ConceptPtr& b) {
                          return equal(a, b);
                        }),
            all.end());
  return all;
}

bool is_n_free(const KnowledgeBase& kb) {
  for (const auto& ax : kb.strong)
    if (contains_norm(ax.lhs) || contains_norm(ax.rhs)) return false;
  for (const auto& di : kb.defeasible)
    if (contains_norm(di.pre) || contains_norm(di.con)) return false;
  return true;
}

std::string to_string(const StrongAxiom& ax) {
  return ax.lhs->repr() + " <= " + ax.rhs->repr();
}

std::string to_string(const DefeasibleInclusion& di) {
  return di.pre->repr() + " <~ " + di.con->repr();
}

std::string to_string(const Query& q) {
  return q.lhs->repr() + " <= " + q.rhs->repr();
}

std::string print_kb(const KnowledgeBase& kb) {
  std::string out;
  for (const auto& ax : kb.strong) {
    out += to_string(ax);
    out += '\n';
  }
  for (const auto& di : kb.defeasible) {
    out += to_string(di);
    out += '\n';
  }
  return out;
}

}  // namespace dln
