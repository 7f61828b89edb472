#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "silverchase/chase.hpp"
#include "silverchase/game.hpp"
#include "silverchase/psi.hpp"
#include "silverchase/silver.hpp"

namespace silverchase::io {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kFormatVersion = 1;

// --- psi table text format -------------------------------------------------
// First line: `psi a=<arity> D=<horizon>`, then one `<digits> <label>` line
// per nonempty string of length <= D; `#` starts a comment. Digit encoding
// limits the format to arity <= 10.
PsiTable parse_psi(std::istream& in);
PsiTable parse_psi_string(const std::string& text);
std::string write_psi(const PsiTable& table, const std::string& comment = "");

// --- condition text format -------------------------------------------------
// `n=<arity> B=<bound> <pos>=<val>,<pos>=<val>,...`, positions strictly
// increasing; the assignment list is omitted when empty.
SilverCondition parse_condition(const std::string& text);
std::string write_condition(const SilverCondition& f);

// --- JSON documents ---------------------------------------------------------
nlohmann::json poset_to_json(const PosetSpec& poset);
PosetSpec poset_from_json(const nlohmann::json& doc);

nlohmann::json transcript_to_json(const GameTranscript& transcript);
GameTranscript transcript_from_json(const nlohmann::json& doc);

nlohmann::json chase_result_to_json(const ChaseResult& result);
ChaseResult chase_result_from_json(const nlohmann::json& doc);

nlohmann::json verdict_to_json(const Verdict& verdict);

// --- renderings -------------------------------------------------------------
std::string chase_report_text(const ChaseResult& result);
std::string verdict_text(const Verdict& verdict);
std::string tree_to_dot(const LabeledTree& tree, const std::string& name = "tree");
std::string assignment_listing(const std::vector<PartialAssignment>& assignments);

}  // namespace silverchase::io
