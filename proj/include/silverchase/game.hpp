#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "silverchase/silver.hpp"

namespace silverchase {

/// Order convention throughout: a stronger condition is the larger one.
struct FinitePoset {
  int size = 0;
  std::vector<std::vector<bool>> le;  // le[a][b] iff a <= b

  void validate() const;  // reflexive, antisymmetric, transitive
  bool leq(int a, int b) const;
  bool compatible_elems(int a, int b) const;  // common upper bound exists

  friend bool operator==(const FinitePoset&, const FinitePoset&) = default;
};

struct BoundedSilverPoset {
  int arity = 2;

  friend bool operator==(const BoundedSilverPoset&, const BoundedSilverPoset&) = default;
};

using PosetSpec = std::variant<FinitePoset, BoundedSilverPoset>;

using GameCondition = std::variant<int, SilverCondition>;

/// The nice set K, either an arithmetic progression or an explicit finite set.
struct NiceSet {
  bool is_progression = true;
  int stride = 1;
  int offset = 0;
  std::set<int> members;

  bool contains(int i) const;
  static NiceSet progression(int stride, int offset);
  static NiceSet explicit_set(std::set<int> members);
  /// The preset K = {4j+2}.
  static NiceSet four_j_plus_two() { return progression(4, 2); }

  friend bool operator==(const NiceSet&, const NiceSet&) = default;
};

struct FiniteTree {
  std::set<SymbolString> nodes;

  bool contains(const SymbolString& s) const { return nodes.count(s) != 0; }
  bool is_prefix_closed() const;
  std::vector<SymbolString> maximal() const;
  int succ_count(const SymbolString& s) const;

  friend bool operator==(const FiniteTree&, const FiniteTree&) = default;
};

struct Round {
  FiniteTree tree;
  std::vector<SymbolString> enumeration;  // of the tree's maximal nodes
  std::vector<std::pair<GameCondition, GameCondition>> moves;  // (generic, antigeneric)

  friend bool operator==(const Round&, const Round&) = default;
};

struct GameTranscript {
  int splitting = 2;  // n
  NiceSet nice_set;
  GameCondition root;
  std::vector<Round> rounds;
  std::optional<GameCondition> claimed_witness;

  friend bool operator==(const GameTranscript&, const GameTranscript&) = default;
};

struct RuleFailure {
  int round;
  std::string rule_id;
  std::string detail;
};

enum class WinStatus { generic_wins, no_witness, undetermined };

struct WinVerdict {
  WinStatus status = WinStatus::undetermined;
  std::optional<GameCondition> witness;
  std::vector<int> certified_rounds;  // claimed-witness partial certificate
  std::vector<int> failed_rounds;
};

struct Verdict {
  bool legal = true;
  std::vector<RuleFailure> failures;  // first failure per rule per round
  WinVerdict win;
};

bool cond_leq(const PosetSpec& poset, const GameCondition& a, const GameCondition& b);
bool cond_compatible(const PosetSpec& poset, const GameCondition& a, const GameCondition& b);

/// Rules (alpha): round-0 size bound, subtree pass-through, 1..n extension bound.
std::vector<RuleFailure> check_tree_growth(const FiniteTree* prev, const FiniteTree& next,
                                           int n, int round_index);

/// The shape constraints of a K-nice strategy: alphabet, depth discipline,
/// label n off K, full splitting on K.
std::vector<RuleFailure> check_nice(const FiniteTree& tree, int round_index, const NiceSet& K,
                                    int n);

/// Rules (gamma) plus the K-round pairwise-incompatibility demand.
std::vector<RuleFailure> check_condition_rules(const PosetSpec& poset, const GameCondition& root,
                                               const GameTranscript& transcript, int round_index);

/// Every element above q has a common upper bound with some member of the family.
bool predense_above(const FinitePoset& poset, int q, const std::vector<int>& family);

/// Finite posets are searched exhaustively; bounded Silver needs a claimed
/// witness and yields a partial certificate only.
WinVerdict win_check(const PosetSpec& poset, const GameTranscript& transcript);

Verdict validate_transcript(const PosetSpec& poset, const GameTranscript& transcript);

/// A scripted Generic strategy on the bounded Silver poset: one fresh splitting
/// position per K-round, label n elsewhere; Antigeneric answers in kind.
GameTranscript scripted_silver_play(int n, const NiceSet& K, const SilverCondition& root,
                                    int rounds);

}  // namespace silverchase
