#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "silverchase/silver.hpp"

namespace silverchase {

struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Label = std::uint64_t;
using LabelString = std::vector<Label>;

/// A total labeling of all nonempty strings of length <= horizon over an
/// alphabet of the given arity. The empty string carries no label.
class PsiTable {
 public:
  PsiTable(int arity, int horizon);

  int arity() const { return arity_; }
  int horizon() const { return horizon_; }

  Label label(const SymbolString& s) const;
  void set_label(const SymbolString& s, Label value);

  std::size_t entry_count() const { return labels_.size(); }

  /// Enumerates all nonempty strings of length <= horizon in (length, lex) order.
  std::vector<SymbolString> all_strings() const;

  friend bool operator==(const PsiTable& a, const PsiTable& b) {
    return a.arity_ == b.arity_ && a.horizon_ == b.horizon_ && a.labels_ == b.labels_;
  }

 private:
  std::size_t index_of(const SymbolString& s) const;

  int arity_;
  int horizon_;
  std::vector<Label> labels_;  // contiguous, strings grouped by length
};

// A partial assignment is structurally a Silver condition: a partial map with
// cofinite free set. The psi machinery reads its arity as the alphabet size.
using PartialAssignment = SilverCondition;

/// A finite prefix-closed set of label strings.
struct LabeledTree {
  std::set<LabelString> nodes;

  bool contains(const LabelString& s) const { return nodes.count(s) != 0; }
  std::vector<LabelString> successors(const LabelString& s) const;
  int depth() const;

  friend bool operator==(const LabeledTree&, const LabeledTree&) = default;
};

/// Levelwise relabeling: result(m) is the label of the (m+1)-prefix of t.
LabelString psi_star(const PsiTable& psi, const SymbolString& t);

/// All strings of length <= ell over the assignment's alphabet that agree with
/// it on the assigned positions.
std::set<SymbolString> witness_set(const PartialAssignment& xi, int ell);

/// Image of the witness set under psi_star.
LabeledTree localization_tree(const PsiTable& psi, const PartialAssignment& xi, int ell);

/// "~": equality of psi_star images.
bool equiv_star(const PsiTable& psi, const SymbolString& s, const SymbolString& t);

/// "==_D": agreement of the raw labeling on every common extension that fits
/// within the horizon (the empty extension included when s, t are nonempty).
bool equiv_horizon(const PsiTable& psi, const SymbolString& s, const SymbolString& t);

/// Every node has at most k immediate successors.
bool is_k_ary(const LabeledTree& tree, int k);

/// Per-level maximum successor count; empty for the one-node tree.
std::map<int, int> branching_profile(const LabeledTree& tree);

}  // namespace silverchase
