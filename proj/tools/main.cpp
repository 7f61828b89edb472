#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "silverchase/chase.hpp"
#include "silverchase/formats.hpp"
#include "silverchase/game.hpp"

namespace {

using namespace silverchase;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitHorizonExhausted = 2;
constexpr int kExitIllegal = 3;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + out_path);
  out << text;
}

PsiTable load_psi(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io::parse_error("cannot open psi table " + path);
  return io::parse_psi(in);
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io::parse_error("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw io::parse_error(std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

int worker_count() {
  const char* env = std::getenv("SILVER_CHASE_THREADS");
  if (env == nullptr) return 1;
  int n = std::atoi(env);
  if (n == 0) {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
  return n < 1 ? 1 : n;
}

PsiKind parse_kind(const std::string& kind) {
  if (kind == "random") return PsiKind::random_labels;
  if (kind == "level_injective") return PsiKind::level_injective;
  if (kind == "constant") return PsiKind::constant;
  if (kind == "collapsing") return PsiKind::collapsing;
  throw CLI::ValidationError("--kind", "unknown table kind '" + kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-scale laboratory for Silver conditions, localization trees and game transcripts"};
  app.require_subcommand(1);

  std::string out_path;
  std::string format = "text";
  app.add_option("--out", out_path, "Write output to a file instead of stdout");
  app.add_option("--format", format, "Output format: text, doc or dot")
      ->check(CLI::IsMember({"text", "doc", "dot"}));

  // psi-gen
  auto* psi_gen = app.add_subcommand("psi-gen", "Generate a seeded psi table");
  std::string kind = "random";
  std::uint64_t seed = 0;
  int arity = 2, horizon = 3;
  std::uint64_t label_range = 4;
  psi_gen->add_option("--kind", kind, "random, level_injective, constant or collapsing");
  psi_gen->add_option("--seed", seed, "Generator seed");
  psi_gen->add_option("--a", arity, "Alphabet arity")->check(CLI::Range(2, 10));
  psi_gen->add_option("--D", horizon, "Table horizon")->check(CLI::PositiveNumber);
  psi_gen->add_option("--label-range", label_range, "Labels are drawn from [0, range)");

  // chase
  auto* chase_cmd = app.add_subcommand("chase", "Run the tree-taming construction");
  std::string psi_path;
  int max_stages = 1000;
  chase_cmd->add_option("--psi", psi_path, "Psi table file")->required();
  chase_cmd->add_option("--max-stages", max_stages, "Stage budget");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustively list assignments with k-ary trees");
  std::string oracle_psi_path;
  int depth = 2, free_count = 1, k_bound = 2;
  oracle_cmd->add_option("--psi", oracle_psi_path, "Psi table file")->required();
  oracle_cmd->add_option("--L", depth, "Search depth")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--free-count", free_count, "Number of free positions in [0, L)");
  oracle_cmd->add_option("--k", k_bound, "Arity bound for the localization tree")
      ->check(CLI::PositiveNumber);

  // game-validate
  auto* game_cmd = app.add_subcommand("game-validate", "Referee a game transcript");
  std::string poset_path, transcript_path;
  game_cmd->add_option("--poset", poset_path, "Poset document")->required();
  game_cmd->add_option("--transcript", transcript_path, "Transcript document")->required();

  // silver
  auto* silver_cmd = app.add_subcommand("silver", "Evaluate a condition expression");
  std::string expression;
  silver_cmd->add_option("expr", expression, "Expression over quoted condition literals")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (psi_gen->parsed()) {
      auto table = gen_psi(seed, arity, horizon, label_range, parse_kind(kind));
      std::ostringstream comment;
      comment << "seed=" << seed << " kind=" << kind << " label_range=" << label_range;
      emit(io::write_psi(table, comment.str()), out_path);
      return kExitOk;
    }

    if (chase_cmd->parsed()) {
      auto table = load_psi(psi_path);
      auto result = chase(table, max_stages);
      if (format == "doc")
        emit(io::chase_result_to_json(result).dump(2) + "\n", out_path);
      else if (format == "dot")
        emit(io::tree_to_dot(result.final_tree), out_path);
      else
        emit(io::chase_report_text(result), out_path);
      return result.status == ChaseStatus::completed ? kExitOk : kExitHorizonExhausted;
    }

    if (oracle_cmd->parsed()) {
      auto table = load_psi(oracle_psi_path);
      auto hits = oracle_search(table, depth, free_count, k_bound, worker_count());
      emit(io::assignment_listing(hits), out_path);
      return kExitOk;
    }

    if (game_cmd->parsed()) {
      auto poset = io::poset_from_json(load_json(poset_path));
      auto transcript = io::transcript_from_json(load_json(transcript_path));
      auto verdict = validate_transcript(poset, transcript);
      if (format == "doc")
        emit(io::verdict_to_json(verdict).dump(2) + "\n", out_path);
      else
        emit(io::verdict_text(verdict), out_path);
      return verdict.legal ? kExitOk : kExitIllegal;
    }

    if (silver_cmd->parsed()) {
      // Forms: FP_<i> of <cond> | <cond> * <digits> | <cond> <= <cond>
      //        | <cond> <=*_<i> <cond> | <cond> compat <cond>
      std::istringstream in(expression);
      auto read_condition = [&]() {
        std::string tok;
        if (!(in >> std::ws) || in.peek() != '"')
          throw io::parse_error("expected a quoted condition literal");
        in.get();
        std::string body;
        std::getline(in, body, '"');
        if (body.empty()) return empty_condition(2);
        return io::parse_condition(body);
      };
      std::string head;
      in >> std::ws;
      if (in.peek() != '"') {
        in >> head;
        if (head.rfind("FP_", 0) == 0) {
          int index = std::stoi(head.substr(3));
          std::string of;
          in >> of;
          if (of != "of") throw io::parse_error("expected 'FP_<i> of <cond>'");
          emit(std::to_string(free_point(read_condition(), index)) + "\n", out_path);
          return kExitOk;
        }
        throw io::parse_error("unknown operator '" + head + "'");
      }
      auto lhs = read_condition();
      std::string op;
      if (!(in >> op)) throw io::parse_error("missing operator");
      if (op == "*") {
        std::string digits;
        in >> digits;
        SymbolString sigma;
        for (char ch : digits) {
          if (ch < '0' || ch > '9') throw io::parse_error("malformed symbol string");
          sigma.push_back(ch - '0');
        }
        emit(io::write_condition(star(lhs, sigma)) + "\n", out_path);
        return kExitOk;
      }
      if (op == "<=") {
        emit(std::string(leq(lhs, read_condition()) ? "true" : "false") + "\n", out_path);
        return kExitOk;
      }
      if (op.rfind("<=*_", 0) == 0) {
        int index = std::stoi(op.substr(4));
        emit(std::string(leq_star(index, lhs, read_condition()) ? "true" : "false") + "\n",
             out_path);
        return kExitOk;
      }
      if (op == "compat") {
        emit(std::string(compatible(lhs, read_condition()) ? "true" : "false") + "\n",
             out_path);
        return kExitOk;
      }
      throw io::parse_error("unknown operator '" + op + "'");
    }
  } catch (const io::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}
