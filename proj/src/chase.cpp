#include "silverchase/chase.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <set>

namespace silverchase {

namespace {

// Candidate strings d^<b>^xi for the extension searches.
SymbolString splice(const SymbolString& d, Symbol b, const std::map<int, Symbol>& values,
                    int frontier) {
  SymbolString s = d;
  s.push_back(b);
  for (int pos = static_cast<int>(d.size()) + 1; pos < frontier; ++pos) s.push_back(values.at(pos));
  return s;
}

template <typename Pred>
std::optional<Extension> search_extension(const PsiTable& psi, const SymbolString& d,
                                          const std::map<int, Symbol>& floor_values,
                                          int frontier_base, Pred accept) {
  const int arity = psi.arity();
  for (int frontier = frontier_base + 1; frontier <= psi.horizon(); ++frontier) {
    const int fresh = frontier - frontier_base;
    std::uint64_t count = 1;
    for (int k = 0; k < fresh; ++k) count *= static_cast<std::uint64_t>(arity);
    for (std::uint64_t counter = 0; counter < count; ++counter) {
      std::map<int, Symbol> values = floor_values;
      std::uint64_t c = counter;
      for (int k = 0; k < fresh; ++k) {
        values[frontier_base + k] = static_cast<Symbol>(c % arity);
        c /= arity;
      }
      SymbolString lo = splice(d, 0, values, frontier);
      SymbolString hi = splice(d, 1, values, frontier);
      if (accept(lo, hi)) return Extension{frontier, std::move(values)};
    }
  }
  return std::nullopt;
}

void verify_stage(const PsiTable& psi, const ChaseStage& stage) {
  if (!is_k_ary(localization_tree(psi, stage.assignment, stage.frontier), 2))
    throw std::logic_error("stage " + std::to_string(stage.index) +
                           ": localization tree is not binary");
  std::vector<SymbolString> maximal;
  for (const auto& w : witness_set(stage.assignment, stage.frontier))
    if (static_cast<int>(w.size()) == stage.frontier) maximal.push_back(w);
  for (std::size_t a = 0; a < maximal.size(); ++a)
    for (std::size_t b = a + 1; b < maximal.size(); ++b)
      if (equiv_star(psi, maximal[a], maximal[b]) &&
          !equiv_horizon(psi, maximal[a], maximal[b]))
        throw std::logic_error("stage " + std::to_string(stage.index) +
                               ": ~-equivalent maximal witnesses are not context-equivalent");
}

}  // namespace

std::optional<Extension> find_equalizing_extension(const PsiTable& psi, const SymbolString& d,
                                                   const std::map<int, Symbol>& floor_values,
                                                   int frontier_base) {
  return search_extension(psi, d, floor_values, frontier_base,
                          [&](const SymbolString& lo, const SymbolString& hi) {
                            return equiv_horizon(psi, lo, hi);
                          });
}

std::optional<Extension> find_separating_extension(const PsiTable& psi, const SymbolString& d,
                                                   const std::map<int, Symbol>& floor_values,
                                                   int frontier_base) {
  return search_extension(psi, d, floor_values, frontier_base,
                          [&](const SymbolString& lo, const SymbolString& hi) {
                            return !equiv_star(psi, lo, hi);
                          });
}

std::vector<SymbolString> select_representatives(const PsiTable& psi,
                                                 const std::vector<SymbolString>& maximal) {
  std::vector<SymbolString> sorted = maximal;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::set<LabelString> seen;
  std::vector<SymbolString> delta;
  for (const auto& s : sorted)
    if (seen.insert(psi_star(psi, s)).second) delta.push_back(s);
  return delta;
}

ChaseResult chase(const PsiTable& psi, int max_stages) {
  if (psi.arity() != 2)
    throw arity_error("chase is defined for binary tables; arity " +
                      std::to_string(psi.arity()) + " is unsupported");
  if (max_stages < 0) throw std::invalid_argument("max_stages must be non-negative");

  ChaseResult result;
  result.stages.push_back(ChaseStage{0, 0, empty_condition(2), {}, {}});

  for (int m = 0; m < max_stages; ++m) {
    const ChaseStage& cur = result.stages.back();
    const int frontier = cur.frontier;
    if (frontier + 2 > psi.horizon()) break;  // no room for an extension step

    std::vector<SymbolString> maximal;
    for (const auto& w : witness_set(cur.assignment, frontier))
      if (static_cast<int>(w.size()) == frontier) maximal.push_back(w);
    auto delta = select_representatives(psi, maximal);

    int inner_frontier = frontier + 1;
    std::map<int, Symbol> inner_values;
    std::vector<InnerStep> steps;
    bool exhausted = false;
    for (const auto& d : delta) {
      auto eq = find_equalizing_extension(psi, d, inner_values, inner_frontier);
      if (eq) {
        steps.push_back(InnerStep{d, BranchKind::equalized, eq->frontier, eq->values});
        inner_frontier = eq->frontier;
        inner_values = std::move(eq->values);
        continue;
      }
      auto sep = find_separating_extension(psi, d, inner_values, inner_frontier);
      if (sep) {
        steps.push_back(InnerStep{d, BranchKind::separated, sep->frontier, sep->values});
        inner_frontier = sep->frontier;
        inner_values = std::move(sep->values);
        continue;
      }
      result.status = ChaseStatus::horizon_exhausted;
      result.exhausted_stage = m + 1;
      result.exhausted_representative = d;
      result.exhausted_reason = "no equalizing or separating extension within the horizon";
      exhausted = true;
      break;
    }
    if (exhausted) break;

    PartialAssignment next = cur.assignment;
    next.bound = inner_frontier;
    for (const auto& [pos, val] : inner_values) next.assignments[pos] = val;
    ChaseStage stage{m + 1, inner_frontier, std::move(next), std::move(delta), std::move(steps)};
    verify_stage(psi, stage);
    result.stages.push_back(std::move(stage));
  }

  const ChaseStage& last = result.stages.back();
  result.final_assignment = last.assignment;
  result.final_tree = localization_tree(psi, last.assignment, last.frontier);
  return result;
}

std::vector<PartialAssignment> oracle_search(const PsiTable& psi, int depth, int free_count,
                                             int k, int threads) {
  if (depth > psi.horizon()) throw domain_error("oracle depth beyond horizon");
  if (free_count < 0 || free_count > depth)
    throw std::invalid_argument("free count must lie in [0, depth]");
  const int arity = psi.arity();

  // Free-position combinations in lexicographic order.
  std::vector<std::vector<int>> combos;
  std::vector<int> combo(free_count);
  for (int i = 0; i < free_count; ++i) combo[i] = i;
  while (true) {
    combos.push_back(combo);
    int i = free_count - 1;
    while (i >= 0 && combo[i] == depth - free_count + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < free_count; ++j) combo[j] = combo[j - 1] + 1;
  }

  auto evaluate = [&](const std::vector<int>& free_positions) {
    std::vector<PartialAssignment> hits;
    std::vector<int> assigned;
    std::set<int> free_set(free_positions.begin(), free_positions.end());
    for (int p = 0; p < depth; ++p)
      if (!free_set.count(p)) assigned.push_back(p);
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < assigned.size(); ++i) count *= static_cast<std::uint64_t>(arity);
    for (std::uint64_t counter = 0; counter < count; ++counter) {
      std::map<int, Symbol> values;
      std::uint64_t c = counter;
      for (int pos : assigned) {
        values[pos] = static_cast<Symbol>(c % arity);
        c /= arity;
      }
      PartialAssignment xi(arity, depth, std::move(values));
      if (is_k_ary(localization_tree(psi, xi, depth), k)) hits.push_back(std::move(xi));
    }
    return hits;
  };

  std::vector<PartialAssignment> out;
  if (threads <= 1 || combos.size() <= 1) {
    for (const auto& c : combos) {
      auto hits = evaluate(c);
      out.insert(out.end(), hits.begin(), hits.end());
    }
    return out;
  }
  std::vector<std::future<std::vector<PartialAssignment>>> futures;
  futures.reserve(combos.size());
  for (const auto& c : combos)
    futures.push_back(std::async(std::launch::async | std::launch::deferred, evaluate, c));
  for (auto& fut : futures) {
    auto hits = fut.get();
    out.insert(out.end(), hits.begin(), hits.end());
  }
  return out;
}

PsiTable gen_psi(std::uint64_t seed, int arity, int horizon, std::uint64_t label_range,
                 PsiKind kind) {
  if (label_range == 0) throw std::invalid_argument("label range must be positive");
  if (kind == PsiKind::level_injective && label_range < static_cast<std::uint64_t>(arity))
    throw std::invalid_argument("level-injective tables need label_range >= arity");
  if (kind == PsiKind::collapsing) {
    if (horizon < 2) throw std::invalid_argument("collapsing tables need horizon >= 2");
    if (label_range < static_cast<std::uint64_t>(arity) * static_cast<std::uint64_t>(arity))
      throw std::invalid_argument("collapsing tables need label_range >= arity^2");
  }

  PsiTable table(arity, horizon);
  std::mt19937_64 rng(seed);
  auto draw = [&] { return static_cast<Label>(rng() % label_range); };
  auto draw_distinct = [&](std::size_t n) {
    std::set<Label> seen;
    std::vector<Label> out;
    while (out.size() < n) {
      Label v = draw();
      if (seen.insert(v).second) out.push_back(v);
    }
    return out;
  };

  switch (kind) {
    case PsiKind::constant: {
      Label c = draw();
      for (const auto& s : table.all_strings()) table.set_label(s, c);
      break;
    }
    case PsiKind::random_labels: {
      for (const auto& s : table.all_strings()) table.set_label(s, draw());
      break;
    }
    case PsiKind::level_injective: {
      // Children of each parent get pairwise distinct labels.
      std::vector<SymbolString> parents = {{}};
      for (const auto& s : table.all_strings())
        if (static_cast<int>(s.size()) < horizon) parents.push_back(s);
      for (const auto& p : parents) {
        auto labels = draw_distinct(static_cast<std::size_t>(arity));
        SymbolString child = p;
        child.push_back(0);
        for (Symbol c = 0; c < arity; ++c) {
          child.back() = c;
          table.set_label(child, labels[static_cast<std::size_t>(c)]);
        }
      }
      break;
    }
    case PsiKind::collapsing: {
      // Level 1 collapses to one label, level 2 is fully distinct, deeper
      // levels are random.
      Label c = draw();
      std::size_t level2 = static_cast<std::size_t>(arity) * static_cast<std::size_t>(arity);
      auto labels2 = draw_distinct(level2);
      std::size_t next2 = 0;
      for (const auto& s : table.all_strings()) {
        if (s.size() == 1)
          table.set_label(s, c);
        else if (s.size() == 2)
          table.set_label(s, labels2[next2++]);
        else
          table.set_label(s, draw());
      }
      break;
    }
  }
  return table;
}

}  // namespace silverchase
