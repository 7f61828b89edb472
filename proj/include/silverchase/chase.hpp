#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "silverchase/psi.hpp"

namespace silverchase {

enum class BranchKind { equalized, separated };

/// Audit record for one representative handled inside a stage.
struct InnerStep {
  SymbolString representative;
  BranchKind branch;
  int frontier_after;                  // the inner frontier after this step
  std::map<int, Symbol> extension;     // total on [N_m+1, frontier_after)

  friend bool operator==(const InnerStep&, const InnerStep&) = default;
};

struct ChaseStage {
  int index = 0;
  int frontier = 0;                    // N_m
  PartialAssignment assignment;        // xi_m, free below the frontier exactly at earlier frontiers
  std::vector<SymbolString> representatives;  // the Delta this stage was built from
  std::vector<InnerStep> inner;

  friend bool operator==(const ChaseStage&, const ChaseStage&) = default;
};

enum class ChaseStatus { completed, horizon_exhausted };

struct ChaseResult {
  ChaseStatus status = ChaseStatus::completed;
  std::vector<ChaseStage> stages;
  PartialAssignment final_assignment;
  LabeledTree final_tree;
  // Populated on horizon exhaustion only.
  int exhausted_stage = -1;
  SymbolString exhausted_representative;
  std::string exhausted_reason;

  friend bool operator==(const ChaseResult&, const ChaseResult&) = default;
};

/// Runs the tree-taming construction: starting from the empty assignment,
/// repeatedly frees one position per stage and extends the assignment so that
/// the localization tree stays binary. Stops at max_stages, when the horizon
/// leaves no room for another stage, or when neither an equalizing nor a
/// separating extension exists within the horizon.
ChaseResult chase(const PsiTable& psi, int max_stages);

/// Lexicographically least member of each ~-class, output sorted.
std::vector<SymbolString> select_representatives(const PsiTable& psi,
                                                 const std::vector<SymbolString>& maximal);

struct Extension {
  int frontier;                  // new inner frontier N
  std::map<int, Symbol> values;  // total on [base_of_stage, frontier)

  friend bool operator==(const Extension&, const Extension&) = default;
};

/// First extension in search order (frontier ascending, new values as a
/// little-endian counter) making the two one-symbol extensions of d agree on
/// every in-horizon context.
std::optional<Extension> find_equalizing_extension(const PsiTable& psi, const SymbolString& d,
                                                   const std::map<int, Symbol>& floor_values,
                                                   int frontier_base);

/// Same search order; first extension whose two one-symbol extensions of d
/// have different psi_star images.
std::optional<Extension> find_separating_extension(const PsiTable& psi, const SymbolString& d,
                                                   const std::map<int, Symbol>& floor_values,
                                                   int frontier_base);

/// All assignments with exactly free_count free positions inside [0, depth)
/// whose localization tree at that depth is k-ary. Deterministic order:
/// free-position combinations lexicographic, then values as counters.
std::vector<PartialAssignment> oracle_search(const PsiTable& psi, int depth, int free_count,
                                             int k, int threads = 1);

enum class PsiKind { random_labels, level_injective, constant, collapsing };

/// Deterministic seeded table generation for the test corpus.
PsiTable gen_psi(std::uint64_t seed, int arity, int horizon, std::uint64_t label_range,
                 PsiKind kind);

}  // namespace silverchase
