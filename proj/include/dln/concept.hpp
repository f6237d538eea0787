#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace dln {

// ============================================================================
// Concept expressions
// ============================================================================

enum class ConceptKind : std::uint8_t {
  Top,
  Bottom,
  Atomic,
  Not,
  And,
  Or,
  Exists,
  Forall,
  Norm,
};

class ConceptNode;
/// Concepts are immutable and shared; build them through the factory functions
/// below, never directly.
using ConceptPtr = std::shared_ptr<const ConceptNode>;

/// Immutable concept expression node.
///
/// And/Or children are flattened, deduplicated and sorted lexicographically by
/// their serialization, so two structurally equal concept sets map to the same
/// node shape and the same serialization.  `repr()` is that canonical
/// serialization (re-parseable concept syntax); equality, hashing and ordering
/// all reduce to it.
class ConceptNode {
public:
  ConceptKind kind() const { return kind_; }

  /// Atomic concept name, or role name for Exists/Forall.
  const std::string& name() const { return name_; }

  const std::vector<ConceptPtr>& children() const { return children_; }

  /// Single child of Not/Exists/Forall/Norm.
  const ConceptPtr& child() const { return children_.front(); }

  /// Canonical serialization; doubles as the opaque atomic name of a Norm
  /// concept ("N(...)") in signatures and classical back-ends.
  const std::string& repr() const { return repr_; }

  std::size_t hash() const { return hash_; }

  ConceptNode(ConceptKind kind, std::string name, std::vector<ConceptPtr> children,
              std::string repr);

private:
  ConceptKind kind_;
  std::string name_;
  std::vector<ConceptPtr> children_;
  std::string repr_;
  std::size_t hash_;
};

ConceptPtr top();
ConceptPtr bottom();
ConceptPtr atom(std::string name);
ConceptPtr negate(ConceptPtr c);
ConceptPtr conj(ConceptPtr a, ConceptPtr b);
ConceptPtr conj(std::span<const ConceptPtr> cs);
ConceptPtr disj(ConceptPtr a, ConceptPtr b);
ConceptPtr disj(std::span<const ConceptPtr> cs);
ConceptPtr exists(std::string role, ConceptPtr filler);
ConceptPtr forall(std::string role, ConceptPtr filler);

/// Normality concept N(c).  Throws std::invalid_argument if `c` already
/// contains a normality concept (nesting is not part of the language).
ConceptPtr norm(ConceptPtr c);

bool contains_norm(const ConceptPtr& c);

inline bool equal(const ConceptPtr& a, const ConceptPtr& b) {
  return a == b || (a && b && a->repr() == b->repr());
}

inline const std::string& to_string(const ConceptPtr& c) { return c->repr(); }

/// Container helpers keyed on the canonical serialization.
struct ConceptHash {
  std::size_t operator()(const ConceptPtr& c) const { return c->hash(); }
};
struct ConceptEq {
  bool operator()(const ConceptPtr& a, const ConceptPtr& b) const { return equal(a, b); }
};
struct ConceptLess {
  bool operator()(const ConceptPtr& a, const ConceptPtr& b) const {
    return a->repr() < b->repr();
  }
};

}  // namespace dln
