#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace silverchase {

using Symbol = int;
using SymbolString = std::vector<Symbol>;

struct arity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct clash_error : std::runtime_error {
  int position;
  explicit clash_error(int pos)
      : std::runtime_error("conditions clash at position " + std::to_string(pos)),
        position(pos) {}
};

/// A bounded n-Silver condition: a partial map from positions to symbols.
/// Positions >= bound are implicitly free, so the free set is always cofinite.
struct SilverCondition {
  int value_arity = 2;            // n >= 2
  int bound = 0;                  // B >= 0
  std::map<int, Symbol> assignments;  // keys in [0, bound), values in [0, value_arity)

  SilverCondition() = default;
  SilverCondition(int arity, int bound_, std::map<int, Symbol> assigns);

  bool is_assigned(int position) const { return assignments.count(position) != 0; }
  bool is_free(int position) const { return !is_assigned(position); }

  // Extensional equality: the same partial function, bounds may differ.
  friend bool operator==(const SilverCondition& a, const SilverCondition& b) {
    return a.value_arity == b.value_arity && a.assignments == b.assignments;
  }
};

SilverCondition empty_condition(int arity);

/// The i-th free position of f in increasing order (0-indexed).
int free_point(const SilverCondition& f, int i);

/// f*sigma: fill the first |sigma| free points of f with the symbols of sigma.
SilverCondition star(const SilverCondition& f, const SymbolString& sigma);

/// The inclusion order: g extends f as a partial function.
bool leq(const SilverCondition& f, const SilverCondition& g);

/// leq plus agreement of the first floor(i/4) free points.
bool leq_star(int i, const SilverCondition& f, const SilverCondition& g);

/// f and g agree wherever both are defined.
bool compatible(const SilverCondition& f, const SilverCondition& g);

/// Least common upper bound of two compatible conditions.
SilverCondition join(const SilverCondition& f, const SilverCondition& g);

}  // namespace silverchase
