#include "silverchase/psi.hpp"

#include <algorithm>
#include <functional>

namespace silverchase {

namespace {

// Number of nonempty strings of length < m over the given arity.
std::size_t length_offset(int arity, int m) {
  std::size_t total = 0;
  std::size_t level = 1;
  for (int l = 1; l < m; ++l) {
    level *= static_cast<std::size_t>(arity);
    total += level;
  }
  return total;
}

}  // namespace

PsiTable::PsiTable(int arity, int horizon) : arity_(arity), horizon_(horizon) {
  if (arity < 2) throw arity_error("psi table arity must be at least 2");
  if (horizon < 1) throw std::invalid_argument("psi table horizon must be at least 1");
  labels_.assign(length_offset(arity, horizon + 1), 0);
}

std::size_t PsiTable::index_of(const SymbolString& s) const {
  if (s.empty()) throw domain_error("the empty string carries no label");
  if (static_cast<int>(s.size()) > horizon_)
    throw domain_error("string of length " + std::to_string(s.size()) +
                       " beyond horizon " + std::to_string(horizon_));
  std::size_t value = 0;
  for (Symbol c : s) {
    if (c < 0 || c >= arity_)
      throw domain_error("symbol " + std::to_string(c) + " outside the alphabet");
    value = value * static_cast<std::size_t>(arity_) + static_cast<std::size_t>(c);
  }
  return length_offset(arity_, static_cast<int>(s.size())) + value;
}

Label PsiTable::label(const SymbolString& s) const { return labels_[index_of(s)]; }

void PsiTable::set_label(const SymbolString& s, Label value) { labels_[index_of(s)] = value; }

std::vector<SymbolString> PsiTable::all_strings() const {
  std::vector<SymbolString> out;
  out.reserve(labels_.size());
  for (int m = 1; m <= horizon_; ++m) {
    SymbolString s(m, 0);
    while (true) {
      out.push_back(s);
      int p = m - 1;
      while (p >= 0 && s[p] == arity_ - 1) s[p--] = 0;
      if (p < 0) break;
      ++s[p];
    }
  }
  return out;
}

std::vector<LabelString> LabeledTree::successors(const LabelString& s) const {
  std::vector<LabelString> out;
  for (const auto& node : nodes) {
    if (node.size() != s.size() + 1) continue;
    if (std::equal(s.begin(), s.end(), node.begin())) out.push_back(node);
  }
  return out;
}

int LabeledTree::depth() const {
  int d = 0;
  for (const auto& node : nodes) d = std::max(d, static_cast<int>(node.size()));
  return d;
}

LabelString psi_star(const PsiTable& psi, const SymbolString& t) {
  LabelString out;
  out.reserve(t.size());
  SymbolString prefix;
  prefix.reserve(t.size());
  for (Symbol c : t) {
    prefix.push_back(c);
    out.push_back(psi.label(prefix));
  }
  return out;
}

std::set<SymbolString> witness_set(const PartialAssignment& xi, int ell) {
  if (ell < 0) throw std::invalid_argument("witness level must be non-negative");
  std::set<SymbolString> out;
  SymbolString current;
  std::function<void()> grow = [&] {
    out.insert(current);
    if (static_cast<int>(current.size()) >= ell) return;
    int pos = static_cast<int>(current.size());
    auto it = xi.assignments.find(pos);
    if (it != xi.assignments.end()) {
      current.push_back(it->second);
      grow();
      current.pop_back();
    } else {
      for (Symbol c = 0; c < xi.value_arity; ++c) {
        current.push_back(c);
        grow();
        current.pop_back();
      }
    }
  };
  grow();
  return out;
}

LabeledTree localization_tree(const PsiTable& psi, const PartialAssignment& xi, int ell) {
  if (ell > psi.horizon())
    throw domain_error("localization level " + std::to_string(ell) + " beyond horizon " +
                       std::to_string(psi.horizon()));
  if (xi.value_arity != psi.arity()) throw arity_error("assignment arity differs from table");
  LabeledTree tree;
  for (const auto& t : witness_set(xi, ell)) tree.nodes.insert(psi_star(psi, t));
  return tree;
}

bool equiv_star(const PsiTable& psi, const SymbolString& s, const SymbolString& t) {
  return psi_star(psi, s) == psi_star(psi, t);
}

bool equiv_horizon(const PsiTable& psi, const SymbolString& s, const SymbolString& t) {
  int d = psi.horizon();
  if (static_cast<int>(s.size()) > d || static_cast<int>(t.size()) > d)
    throw domain_error("equiv_horizon argument beyond horizon");
  if (s.empty() != t.empty())
    throw std::invalid_argument("equiv_horizon needs both strings nonempty or both empty");
  if (s.empty() && t.empty()) return true;
  int max_theta = d - static_cast<int>(std::max(s.size(), t.size()));
  SymbolString left = s, right = t;
  std::function<bool(int)> probe = [&](int remaining) -> bool {
    if (psi.label(left) != psi.label(right)) return false;
    if (remaining == 0) return true;
    for (Symbol c = 0; c < psi.arity(); ++c) {
      left.push_back(c);
      right.push_back(c);
      bool ok = probe(remaining - 1);
      left.pop_back();
      right.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return probe(max_theta);
}

bool is_k_ary(const LabeledTree& tree, int k) {
  if (k < 1) throw std::invalid_argument("arity bound must be at least 1");
  std::map<LabelString, int> succ_count;
  for (const auto& node : tree.nodes) {
    if (node.empty()) continue;
    LabelString parent(node.begin(), node.end() - 1);
    if (++succ_count[parent] > k) return false;
  }
  return true;
}

std::map<int, int> branching_profile(const LabeledTree& tree) {
  std::map<int, int> profile;
  std::map<LabelString, int> succ_count;
  for (const auto& node : tree.nodes) {
    if (node.empty()) continue;
    LabelString parent(node.begin(), node.end() - 1);
    ++succ_count[parent];
  }
  for (const auto& [parent, count] : succ_count) {
    int level = static_cast<int>(parent.size());
    auto it = profile.find(level);
    if (it == profile.end() || it->second < count) profile[level] = count;
  }
  return profile;
}

}  // namespace silverchase
