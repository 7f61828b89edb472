#include "silverchase/silver.hpp"

namespace silverchase {

SilverCondition::SilverCondition(int arity, int bound_, std::map<int, Symbol> assigns)
    : value_arity(arity), bound(bound_), assignments(std::move(assigns)) {
  if (value_arity < 2) throw arity_error("value arity must be at least 2");
  if (bound < 0) throw std::invalid_argument("bound must be non-negative");
  for (const auto& [pos, val] : assignments) {
    if (pos < 0 || pos >= bound)
      throw std::invalid_argument("assigned position " + std::to_string(pos) +
                                  " outside [0, " + std::to_string(bound) + ")");
    if (val < 0 || val >= value_arity)
      throw arity_error("assigned value " + std::to_string(val) + " outside [0, " +
                        std::to_string(value_arity) + ")");
  }
}

SilverCondition empty_condition(int arity) { return SilverCondition(arity, 0, {}); }

int free_point(const SilverCondition& f, int i) {
  if (i < 0) throw std::invalid_argument("free point index must be non-negative");
  // Walk the assignment map in position order, counting free gaps.
  int remaining = i;
  int candidate = 0;
  for (const auto& [pos, val] : f.assignments) {
    (void)val;
    int gap = pos - candidate;
    if (remaining < gap) return candidate + remaining;
    remaining -= gap;
    candidate = pos + 1;
  }
  return candidate + remaining;
}

SilverCondition star(const SilverCondition& f, const SymbolString& sigma) {
  SilverCondition result = f;
  int last_filled = -1;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i] < 0 || sigma[i] >= f.value_arity)
      throw arity_error("symbol " + std::to_string(sigma[i]) + " outside [0, " +
                        std::to_string(f.value_arity) + ")");
    int pos = free_point(f, static_cast<int>(i));
    result.assignments[pos] = sigma[i];
    last_filled = pos;
  }
  if (last_filled >= 0 && last_filled + 1 > result.bound) result.bound = last_filled + 1;
  return result;
}

bool leq(const SilverCondition& f, const SilverCondition& g) {
  if (f.value_arity != g.value_arity) throw arity_error("arity mismatch in leq");
  for (const auto& [pos, val] : f.assignments) {
    auto it = g.assignments.find(pos);
    if (it == g.assignments.end() || it->second != val) return false;
  }
  return true;
}

bool leq_star(int i, const SilverCondition& f, const SilverCondition& g) {
  if (i < 0) throw std::invalid_argument("leq_star index must be non-negative");
  if (!leq(f, g)) return false;
  for (int j = 0; j < i / 4; ++j)
    if (free_point(f, j) != free_point(g, j)) return false;
  return true;
}

bool compatible(const SilverCondition& f, const SilverCondition& g) {
  if (f.value_arity != g.value_arity) throw arity_error("arity mismatch in compatible");
  const auto& small = f.assignments.size() <= g.assignments.size() ? f : g;
  const auto& large = &small == &f ? g : f;
  for (const auto& [pos, val] : small.assignments) {
    auto it = large.assignments.find(pos);
    if (it != large.assignments.end() && it->second != val) return false;
  }
  return true;
}

SilverCondition join(const SilverCondition& f, const SilverCondition& g) {
  if (f.value_arity != g.value_arity) throw arity_error("arity mismatch in join");
  SilverCondition result = f;
  result.bound = std::max(f.bound, g.bound);
  for (const auto& [pos, val] : g.assignments) {
    auto it = result.assignments.find(pos);
    if (it != result.assignments.end() && it->second != val) throw clash_error(pos);
    result.assignments[pos] = val;
  }
  return result;
}

}  // namespace silverchase
