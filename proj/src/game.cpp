#include "silverchase/game.hpp"

#include <algorithm>
#include <functional>

namespace silverchase {

namespace {

std::string seq_str(const SymbolString& s) {
  std::string out = "<";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + ">";
}

bool proper_prefix(const SymbolString& nu, const SymbolString& eta) {
  return nu.size() < eta.size() && std::equal(nu.begin(), nu.end(), eta.begin());
}

}  // namespace

void FinitePoset::validate() const {
  if (size < 1) throw std::invalid_argument("finite poset needs at least one element");
  if (static_cast<int>(le.size()) != size)
    throw std::invalid_argument("order matrix has wrong row count");
  for (const auto& row : le)
    if (static_cast<int>(row.size()) != size)
      throw std::invalid_argument("order matrix has wrong column count");
  for (int a = 0; a < size; ++a) {
    if (!le[a][a]) throw std::invalid_argument("order matrix is not reflexive");
    for (int b = 0; b < size; ++b) {
      if (a != b && le[a][b] && le[b][a])
        throw std::invalid_argument("order matrix is not antisymmetric");
      for (int c = 0; c < size; ++c)
        if (le[a][b] && le[b][c] && !le[a][c])
          throw std::invalid_argument("order matrix is not transitive");
    }
  }
}

bool FinitePoset::leq(int a, int b) const {
  if (a < 0 || a >= size || b < 0 || b >= size)
    throw std::out_of_range("unknown poset element");
  return le[a][b];
}

bool FinitePoset::compatible_elems(int a, int b) const {
  for (int u = 0; u < size; ++u)
    if (leq(a, u) && leq(b, u)) return true;
  return false;
}

bool NiceSet::contains(int i) const {
  if (is_progression) return stride > 0 && i >= offset && (i - offset) % stride == 0;
  return members.count(i) != 0;
}

NiceSet NiceSet::progression(int stride, int offset) {
  if (stride <= 0) throw std::invalid_argument("progression stride must be positive");
  NiceSet k;
  k.is_progression = true;
  k.stride = stride;
  k.offset = offset;
  return k;
}

NiceSet NiceSet::explicit_set(std::set<int> members) {
  NiceSet k;
  k.is_progression = false;
  k.members = std::move(members);
  return k;
}

bool FiniteTree::is_prefix_closed() const {
  if (!contains({})) return false;
  for (const auto& node : nodes) {
    if (node.empty()) continue;
    SymbolString parent(node.begin(), node.end() - 1);
    if (!contains(parent)) return false;
  }
  return true;
}

std::vector<SymbolString> FiniteTree::maximal() const {
  std::vector<SymbolString> out;
  for (const auto& node : nodes) {
    bool has_extension = false;
    for (const auto& other : nodes)
      if (proper_prefix(node, other)) {
        has_extension = true;
        break;
      }
    if (!has_extension) out.push_back(node);
  }
  return out;
}

int FiniteTree::succ_count(const SymbolString& s) const {
  int count = 0;
  for (const auto& node : nodes)
    if (node.size() == s.size() + 1 && std::equal(s.begin(), s.end(), node.begin())) ++count;
  return count;
}

bool cond_leq(const PosetSpec& poset, const GameCondition& a, const GameCondition& b) {
  if (const auto* fp = std::get_if<FinitePoset>(&poset))
    return fp->leq(std::get<int>(a), std::get<int>(b));
  return leq(std::get<SilverCondition>(a), std::get<SilverCondition>(b));
}

bool cond_compatible(const PosetSpec& poset, const GameCondition& a, const GameCondition& b) {
  if (const auto* fp = std::get_if<FinitePoset>(&poset))
    return fp->compatible_elems(std::get<int>(a), std::get<int>(b));
  return compatible(std::get<SilverCondition>(a), std::get<SilverCondition>(b));
}

std::vector<RuleFailure> check_tree_growth(const FiniteTree* prev, const FiniteTree& next,
                                           int n, int round_index) {
  std::vector<RuleFailure> failures;
  auto next_max = next.maximal();
  if (prev == nullptr) {
    if (static_cast<int>(next_max.size()) > n)
      failures.push_back({round_index, "alpha.size",
                          "round 0 has " + std::to_string(next_max.size()) +
                              " maximal nodes, allowed at most " + std::to_string(n)});
    return failures;
  }
  for (const auto& node : prev->nodes)
    if (!next.contains(node)) {
      failures.push_back({round_index, "alpha.passthrough",
                          "node " + seq_str(node) + " of the previous tree was dropped"});
      return failures;
    }
  auto prev_max = prev->maximal();
  for (const auto& eta : next_max) {
    bool passes = false;
    for (const auto& nu : prev_max)
      if (proper_prefix(nu, eta)) {
        passes = true;
        break;
      }
    if (!passes) {
      failures.push_back({round_index, "alpha.passthrough",
                          "maximal node " + seq_str(eta) +
                              " misses the previous round's maximal front"});
      break;
    }
  }
  for (const auto& nu : prev_max) {
    int extensions = 0;
    for (const auto& eta : next_max)
      if (proper_prefix(nu, eta)) ++extensions;
    if (extensions < 1 || extensions > n) {
      failures.push_back({round_index, "alpha.bound",
                          "maximal node " + seq_str(nu) + " has " +
                              std::to_string(extensions) + " extensions, allowed 1.." +
                              std::to_string(n)});
      break;
    }
  }
  return failures;
}

std::vector<RuleFailure> check_nice(const FiniteTree& tree, int round_index, const NiceSet& K,
                                    int n) {
  std::vector<RuleFailure> failures;
  for (const auto& node : tree.nodes) {
    for (Symbol c : node)
      if (c < 0 || c > n) {
        failures.push_back({round_index, "nice.alphabet",
                            "node " + seq_str(node) + " uses symbol " + std::to_string(c) +
                                " outside 0.." + std::to_string(n)});
        goto alphabet_done;
      }
  }
alphabet_done:
  auto maximal = tree.maximal();
  for (const auto& node : tree.nodes)
    if (static_cast<int>(node.size()) > round_index + 1) {
      failures.push_back({round_index, "nice.depth",
                          "node " + seq_str(node) + " deeper than level " +
                              std::to_string(round_index + 1)});
      break;
    }
  for (const auto& eta : maximal)
    if (static_cast<int>(eta.size()) != round_index + 1) {
      failures.push_back({round_index, "nice.depth",
                          "maximal node " + seq_str(eta) + " not at level " +
                              std::to_string(round_index + 1)});
      break;
    }
  const bool in_k = K.contains(round_index);
  for (const auto& eta : maximal) {
    if (static_cast<int>(eta.size()) != round_index + 1) continue;
    if (!in_k && eta[round_index] != n) {
      failures.push_back({round_index, "nice.label",
                          "maximal node " + seq_str(eta) + " does not end with label " +
                              std::to_string(n)});
      break;
    }
  }
  if (in_k) {
    for (const auto& eta : maximal) {
      if (static_cast<int>(eta.size()) != round_index + 1) continue;
      SymbolString parent(eta.begin(), eta.begin() + round_index);
      if (tree.succ_count(parent) != n) {
        failures.push_back({round_index, "nice.split",
                            "node " + seq_str(parent) + " has " +
                                std::to_string(tree.succ_count(parent)) +
                                " successors, the nice set demands exactly " +
                                std::to_string(n)});
        break;
      }
    }
  }
  return failures;
}

std::vector<RuleFailure> check_condition_rules(const PosetSpec& poset, const GameCondition& root,
                                               const GameTranscript& transcript,
                                               int round_index) {
  std::vector<RuleFailure> failures;
  const Round& round = transcript.rounds[static_cast<std::size_t>(round_index)];
  bool root_failed = false, chain_failed = false, answer_failed = false;
  for (std::size_t l = 0; l < round.enumeration.size(); ++l) {
    const SymbolString& eta = round.enumeration[l];
    const auto& [generic, antigeneric] = round.moves[l];
    if (!root_failed && !cond_leq(poset, root, generic)) {
      failures.push_back({round_index, "gamma.root",
                          "generic condition at " + seq_str(eta) +
                              " is not above the root condition"});
      root_failed = true;
    }
    for (int j = 0; j < round_index && !chain_failed; ++j) {
      const Round& earlier = transcript.rounds[static_cast<std::size_t>(j)];
      for (std::size_t k = 0; k < earlier.enumeration.size(); ++k) {
        if (!proper_prefix(earlier.enumeration[k], eta)) continue;
        if (!cond_leq(poset, earlier.moves[k].second, generic)) {
          failures.push_back({round_index, "gamma.chain",
                              "generic condition at " + seq_str(eta) +
                                  " is not above the round-" + std::to_string(j) +
                                  " answer at " + seq_str(earlier.enumeration[k])});
          chain_failed = true;
          break;
        }
      }
    }
    if (!answer_failed && !cond_leq(poset, generic, antigeneric)) {
      failures.push_back({round_index, "gamma.answer",
                          "answer at " + seq_str(eta) +
                              " is not stronger than the generic condition"});
      answer_failed = true;
    }
  }
  if (transcript.nice_set.contains(round_index)) {
    for (std::size_t a = 0; a < round.moves.size(); ++a) {
      for (std::size_t b = a + 1; b < round.moves.size(); ++b) {
        if (cond_compatible(poset, round.moves[a].first, round.moves[b].first)) {
          failures.push_back({round_index, "nice.incompat",
                              "generic conditions at " + seq_str(round.enumeration[a]) +
                                  " and " + seq_str(round.enumeration[b]) +
                                  " are compatible on a nice round"});
          return failures;
        }
      }
    }
  }
  return failures;
}

bool predense_above(const FinitePoset& poset, int q, const std::vector<int>& family) {
  for (int r = 0; r < poset.size; ++r) {
    if (!poset.leq(q, r)) continue;
    bool met = false;
    for (int a : family)
      if (poset.compatible_elems(r, a)) {
        met = true;
        break;
      }
    if (!met) return false;
  }
  return true;
}

namespace {

WinVerdict win_check_finite(const FinitePoset& poset, const GameTranscript& transcript) {
  WinVerdict verdict;
  int root = std::get<int>(transcript.root);
  for (int q = 0; q < poset.size; ++q) {
    if (!poset.leq(root, q)) continue;
    bool all = true;
    for (const auto& round : transcript.rounds) {
      std::vector<int> family;
      family.reserve(round.moves.size());
      for (const auto& move : round.moves) family.push_back(std::get<int>(move.second));
      if (!predense_above(poset, q, family)) {
        all = false;
        break;
      }
    }
    if (all) {
      verdict.status = WinStatus::generic_wins;
      verdict.witness = GameCondition{q};
      return verdict;
    }
  }
  verdict.status = WinStatus::no_witness;
  return verdict;
}

WinVerdict win_check_silver(const GameTranscript& transcript) {
  WinVerdict verdict;
  if (!transcript.claimed_witness) {
    verdict.status = WinStatus::undetermined;
    return verdict;
  }
  const auto& witness = std::get<SilverCondition>(*transcript.claimed_witness);
  const auto& root = std::get<SilverCondition>(transcript.root);
  if (!leq(root, witness)) {
    verdict.status = WinStatus::no_witness;
    return verdict;
  }
  int bound = std::max(root.bound, witness.bound);
  for (const auto& round : transcript.rounds)
    for (const auto& move : round.moves) {
      bound = std::max(bound, std::get<SilverCondition>(move.first).bound);
      bound = std::max(bound, std::get<SilverCondition>(move.second).bound);
    }
  std::vector<int> free_positions;
  for (int p = 0; p < bound; ++p)
    if (witness.is_free(p)) free_positions.push_back(p);

  // Enumerate every condition above the witness that assigns only inside the
  // transcript's bound: each free position is left open or given a value.
  auto every_extension_meets = [&](const std::vector<const SilverCondition*>& family) {
    SilverCondition r = witness;
    r.bound = bound;
    std::function<bool(std::size_t)> probe = [&](std::size_t idx) -> bool {
      if (idx == free_positions.size()) {
        for (const auto* a : family)
          if (compatible(r, *a)) return true;
        return false;
      }
      if (!probe(idx + 1)) return false;
      for (Symbol v = 0; v < witness.value_arity; ++v) {
        r.assignments[free_positions[idx]] = v;
        bool ok = probe(idx + 1);
        r.assignments.erase(free_positions[idx]);
        if (!ok) return false;
      }
      return true;
    };
    return probe(0);
  };

  for (std::size_t i = 0; i < transcript.rounds.size(); ++i) {
    std::vector<const SilverCondition*> family;
    for (const auto& move : transcript.rounds[i].moves)
      family.push_back(&std::get<SilverCondition>(move.second));
    if (every_extension_meets(family))
      verdict.certified_rounds.push_back(static_cast<int>(i));
    else
      verdict.failed_rounds.push_back(static_cast<int>(i));
  }
  verdict.status = WinStatus::undetermined;  // a partial certificate, never a full win
  verdict.witness = *transcript.claimed_witness;
  return verdict;
}

void check_structure(const PosetSpec& poset, const GameTranscript& transcript) {
  if (transcript.splitting < 2)
    throw std::invalid_argument("splitting parameter must be at least 2");
  auto check_condition = [&](const GameCondition& c) {
    if (std::holds_alternative<FinitePoset>(poset)) {
      if (!std::holds_alternative<int>(c))
        throw std::invalid_argument("finite poset transcript carries a Silver condition");
      int e = std::get<int>(c);
      const auto& fp = std::get<FinitePoset>(poset);
      if (e < 0 || e >= fp.size) throw std::out_of_range("unknown poset element");
    } else {
      if (!std::holds_alternative<SilverCondition>(c))
        throw std::invalid_argument("Silver transcript carries a poset element index");
      if (std::get<SilverCondition>(c).value_arity != std::get<BoundedSilverPoset>(poset).arity)
        throw arity_error("condition arity differs from the poset arity");
    }
  };
  check_condition(transcript.root);
  if (transcript.claimed_witness) check_condition(*transcript.claimed_witness);
  for (std::size_t i = 0; i < transcript.rounds.size(); ++i) {
    const Round& round = transcript.rounds[i];
    if (!round.tree.is_prefix_closed())
      throw std::invalid_argument("round " + std::to_string(i) + " tree is not prefix closed");
    auto maximal = round.tree.maximal();
    std::sort(maximal.begin(), maximal.end());
    auto enumeration = round.enumeration;
    std::sort(enumeration.begin(), enumeration.end());
    if (maximal != enumeration)
      throw std::invalid_argument("round " + std::to_string(i) +
                                  " enumeration does not list the maximal nodes");
    if (round.moves.size() != round.enumeration.size())
      throw std::invalid_argument("round " + std::to_string(i) +
                                  " has a move count differing from its enumeration");
    for (const auto& move : round.moves) {
      check_condition(move.first);
      check_condition(move.second);
    }
  }
}

}  // namespace

WinVerdict win_check(const PosetSpec& poset, const GameTranscript& transcript) {
  if (std::holds_alternative<FinitePoset>(poset))
    return win_check_finite(std::get<FinitePoset>(poset), transcript);
  return win_check_silver(transcript);
}

Verdict validate_transcript(const PosetSpec& poset, const GameTranscript& transcript) {
  if (const auto* fp = std::get_if<FinitePoset>(&poset)) fp->validate();
  check_structure(poset, transcript);

  Verdict verdict;
  for (std::size_t i = 0; i < transcript.rounds.size(); ++i) {
    int round_index = static_cast<int>(i);
    const FiniteTree* prev = i == 0 ? nullptr : &transcript.rounds[i - 1].tree;
    auto growth = check_tree_growth(prev, transcript.rounds[i].tree, transcript.splitting,
                                    round_index);
    auto nice = check_nice(transcript.rounds[i].tree, round_index, transcript.nice_set,
                           transcript.splitting);
    auto conditions = check_condition_rules(poset, transcript.root, transcript, round_index);
    for (auto* batch : {&growth, &nice, &conditions})
      for (auto& failure : *batch) verdict.failures.push_back(std::move(failure));
  }
  verdict.legal = verdict.failures.empty();
  if (verdict.legal) verdict.win = win_check(poset, transcript);
  return verdict;
}

GameTranscript scripted_silver_play(int n, const NiceSet& K, const SilverCondition& root,
                                    int rounds) {
  if (root.value_arity != n) throw arity_error("root condition arity differs from n");
  GameTranscript transcript;
  transcript.splitting = n;
  transcript.nice_set = K;
  transcript.root = root;

  FiniteTree tree;
  tree.nodes.insert(SymbolString{});
  std::map<SymbolString, SilverCondition> branch;  // answer attached to each maximal node
  branch[{}] = root;
  int fresh = root.bound;  // positions >= bound are free in every condition built here

  for (int i = 0; i < rounds; ++i) {
    const bool split = K.contains(i);
    std::map<SymbolString, SilverCondition> next_branch;
    Round round;
    for (const auto& [nu, base] : branch) {
      if (split) {
        for (Symbol c = 0; c < n; ++c) {
          SymbolString eta = nu;
          eta.push_back(c);
          SilverCondition p = base;
          p.assignments[fresh] = c;
          p.bound = std::max(p.bound, fresh + 1);
          next_branch.emplace(std::move(eta), std::move(p));
        }
      } else {
        SymbolString eta = nu;
        eta.push_back(n);
        next_branch.emplace(std::move(eta), base);
      }
    }
    if (split) ++fresh;
    for (const auto& [eta, cond] : next_branch) {
      tree.nodes.insert(eta);
      round.enumeration.push_back(eta);
      round.moves.emplace_back(GameCondition{cond}, GameCondition{cond});
    }
    round.tree = tree;
    transcript.rounds.push_back(std::move(round));
    branch = std::move(next_branch);
  }
  return transcript;
}

}  // namespace silverchase
