// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#ifndef _WIN32
#include <sys/wait.h>
#endif

#include "game_fixtures.hpp"
#include "silverchase/chase.hpp"
#include "silverchase/formats.hpp"
#include "silverchase/game.hpp"
#include "tables.hpp"

using namespace silverchase;
using namespace silverchase::testing;
namespace io = silverchase::io;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& note) {
  std::cout << "criterion " << number << " (" << name << "): " << (pass ? "PASS" : "FAIL");
  if (!note.empty()) std::cout << " — " << note;
  std::cout << "\n";
  if (!pass) ++g_failures;
}

SilverCondition random_condition(std::mt19937_64& rng, int arity, int max_bound) {
  int bound = static_cast<int>(rng() % static_cast<std::uint64_t>(max_bound + 1));
  std::map<int, Symbol> assignments;
  for (int p = 0; p < bound; ++p)
    if (rng() % 2) assignments[p] = static_cast<Symbol>(rng() % static_cast<std::uint64_t>(arity));
  return SilverCondition(arity, bound, std::move(assignments));
}

SymbolString random_string(std::mt19937_64& rng, int arity, int max_len) {
  SymbolString s(rng() % static_cast<std::uint64_t>(max_len + 1));
  for (auto& c : s) c = static_cast<Symbol>(rng() % static_cast<std::uint64_t>(arity));
  return s;
}

// 1. 500 seeded tables, every completed stage keeps the tree binary and the
//    maximal-witness coherence invariant; under 60 seconds.
void criterion_soundness() {
  auto start = std::chrono::steady_clock::now();
  std::string note;
  bool pass = true;
  std::mt19937_64 seeds(101);
  int stages_checked = 0;
  try {
    for (int trial = 0; trial < 500; ++trial) {
      auto psi = gen_psi(seeds(), 2, 6, 4, PsiKind::random_labels);
      auto result = chase(psi, 100);  // chase itself re-verifies each stage
      for (const auto& stage : result.stages) {
        auto tree = localization_tree(psi, stage.assignment, stage.frontier);
        if (!is_k_ary(tree, 2)) throw std::logic_error("non-binary stage tree");
        std::vector<SymbolString> maximal;
        for (const auto& w : witness_set(stage.assignment, stage.frontier))
          if (static_cast<int>(w.size()) == stage.frontier) maximal.push_back(w);
        for (std::size_t a = 0; a < maximal.size(); ++a)
          for (std::size_t b = a + 1; b < maximal.size(); ++b)
            if (equiv_star(psi, maximal[a], maximal[b]) &&
                !equiv_horizon(psi, maximal[a], maximal[b]))
              throw std::logic_error("~ does not imply horizon equivalence");
        ++stages_checked;
      }
    }
  } catch (const std::exception& e) {
    pass = false;
    note = e.what();
  }
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
  if (pass && elapsed.count() >= 60.0) {
    pass = false;
    note = "sweep took too long";
  }
  if (pass) {
    std::ostringstream o;
    o << "500 tables, " << stages_checked << " stages, " << elapsed.count() << "s";
    note = o.str();
  }
  report(1, "chase soundness sweep", pass, note);
}

// 2. The two worked runs reproduced bit-exactly.
void criterion_fixtures() {
  bool pass = true;
  std::string note;
  try {
    auto sep = chase(make_psi0(), 10);
    std::set<LabelString> sep_tree{{}, {5}, {5, 1}, {5, 3}};
    if (sep.status != ChaseStatus::completed) throw std::logic_error("separating run failed");
    if (io::write_condition(sep.final_assignment) != "n=2 B=2 1=0")
      throw std::logic_error("separating assignment mismatch");
    if (!sep.final_assignment.is_free(0)) throw std::logic_error("position 0 not free");
    if (sep.final_tree.nodes != sep_tree) throw std::logic_error("separating tree mismatch");
    if (sep.stages.back().inner.at(0).branch != BranchKind::separated)
      throw std::logic_error("expected a separating branch");

    auto eq = chase(make_equalizing_table(), 10);
    std::set<LabelString> eq_tree{{}, {5}, {5, 0}};
    if (io::write_condition(eq.final_assignment) != "n=2 B=2 1=0")
      throw std::logic_error("equalizing assignment mismatch");
    if (eq.final_tree.nodes != eq_tree) throw std::logic_error("equalizing chain mismatch");
    if (eq.stages.back().inner.at(0).branch != BranchKind::equalized)
      throw std::logic_error("expected an equalizing branch");

    // byte-exact reproduction across repeated runs
    if (io::chase_result_to_json(sep).dump() != io::chase_result_to_json(chase(make_psi0(), 10)).dump())
      throw std::logic_error("separating run is not reproducible");
  } catch (const std::exception& e) {
    pass = false;
    note = e.what();
  }
  report(2, "worked fixtures bit-exact", pass, note);
}

// 3. Chase output always appears in the brute-force oracle listing; collapsing
//    tables show the unconstrained tree is not binary while chase's is.
void criterion_oracle_agreement() {
  bool pass = true;
  std::string note;
  int tables = 0;
  try {
    std::mt19937_64 seeds(103);
    for (int trial = 0; trial < 120; ++trial) {
      int horizon = 3 + trial % 3;  // D in {3,4,5}
      auto psi = gen_psi(seeds(), 2, horizon, 4, PsiKind::random_labels);
      auto result = chase(psi, 100);
      ++tables;
      for (const auto& stage : result.stages) {
        if (stage.frontier == 0) continue;
        int free_below = 0;
        for (int p = 0; p < stage.frontier; ++p)
          if (stage.assignment.is_free(p)) ++free_below;
        auto listing = oracle_search(psi, stage.frontier, free_below, 2);
        if (std::find(listing.begin(), listing.end(), stage.assignment) == listing.end())
          throw std::logic_error("stage assignment missing from the oracle listing");
      }
    }
    for (int trial = 0; trial < 20; ++trial) {
      auto psi = gen_psi(seeds(), 2, 3, 8, PsiKind::collapsing);
      if (is_k_ary(localization_tree(psi, empty_condition(2), 2), 2))
        throw std::logic_error("collapsing table should start non-binary");
      auto result = chase(psi, 100);
      if (!is_k_ary(result.final_tree, 2))
        throw std::logic_error("chase left a collapsing table non-binary");
      ++tables;
    }
  } catch (const std::exception& e) {
    pass = false;
    note = e.what();
  }
  if (pass) note = std::to_string(tables) + " tables cross-checked";
  report(3, "oracle agreement", pass, note);
}

// 4. 1000 random instances per structural law.
void criterion_laws() {
  bool pass = true;
  std::string note;
  try {
    std::mt19937_64 rng(104);
    for (int trial = 0; trial < 1000; ++trial) {
      auto f = random_condition(rng, 2, 8);
      auto sigma = random_string(rng, 2, 4);
      auto sigma2 = random_string(rng, 2, 4);

      // FP re-indexing
      int i = static_cast<int>(rng() % 6);
      if (free_point(star(f, sigma), i) != free_point(f, i + static_cast<int>(sigma.size())))
        throw std::logic_error("FP re-indexing law failed");

      // composition
      SymbolString joined = sigma;
      joined.insert(joined.end(), sigma2.begin(), sigma2.end());
      if (star(star(f, sigma), sigma2) != star(f, joined))
        throw std::logic_error("star composition law failed");

      // leq_star: reflexivity, constructed transitive chains, antisymmetry,
      // monotonicity in i
      int order = static_cast<int>(rng() % 12);
      if (!leq_star(order, f, f)) throw std::logic_error("leq_star not reflexive");
      auto extend_after = [&](const SilverCondition& base) {
        SilverCondition out = base;
        int keep = order / 4;  // free points below this index stay free
        for (int extra = 0; extra < 2; ++extra) {
          int idx = keep + static_cast<int>(rng() % 3);
          int pos = free_point(out, idx);
          out.assignments[pos] = static_cast<Symbol>(rng() % 2);
          out.bound = std::max(out.bound, pos + 1);
        }
        return out;
      };
      auto g = extend_after(f);
      auto h = extend_after(g);
      if (!leq_star(order, f, g) || !leq_star(order, g, h))
        throw std::logic_error("constructed leq_star extension is not leq_star");
      if (!leq_star(order, f, h)) throw std::logic_error("leq_star not transitive");
      if (leq_star(order, g, f) && !(f == g)) throw std::logic_error("leq_star not antisymmetric");
      int lower = static_cast<int>(rng() % (order + 1));
      if (!leq_star(lower, f, g)) throw std::logic_error("leq_star not monotone in i");

      // psi_star length and prefix laws
      auto psi = random_table(rng, 2, 4, 5);
      auto t = random_string(rng, 2, 4);
      auto image = psi_star(psi, t);
      if (image.size() != t.size()) throw std::logic_error("psi_star changed the length");
      std::size_t cut = rng() % (t.size() + 1);
      auto prefix_image = psi_star(psi, SymbolString(t.begin(), t.begin() + cut));
      if (!std::equal(prefix_image.begin(), prefix_image.end(), image.begin()))
        throw std::logic_error("psi_star is not prefix monotone");
    }
  } catch (const std::exception& e) {
    pass = false;
    note = e.what();
  }
  if (pass) note = "1000 instances per law";
  report(4, "structural laws", pass, note);
}

// 5. Constant tables give chains, level-injective tables give binary trees,
//    for every assignment including the empty one. 100 tables each.
void criterion_degenerate() {
  bool pass = true;
  std::string note;
  try {
    std::mt19937_64 seeds(105);
    std::mt19937_64 rng(106);
    for (int trial = 0; trial < 100; ++trial) {
      auto constant = gen_psi(seeds(), 2, 4, 6, PsiKind::constant);
      auto xi = random_condition(rng, 2, 4);
      if (!is_k_ary(localization_tree(constant, xi, 4), 1))
        throw std::logic_error("constant table tree is not a chain");
      if (!is_k_ary(localization_tree(constant, empty_condition(2), 4), 1))
        throw std::logic_error("unconstrained constant table tree is not a chain");

      auto inj = gen_psi(seeds(), 2, 4, 7, PsiKind::level_injective);
      if (!is_k_ary(localization_tree(inj, xi, 4), 2))
        throw std::logic_error("level-injective tree is not binary");
      if (!is_k_ary(localization_tree(inj, empty_condition(2), 4), 2))
        throw std::logic_error("unconstrained level-injective tree is not binary");
    }
  } catch (const std::exception& e) {
    pass = false;
    note = e.what();
  }
  if (pass) note = "100 tables per class";
  report(5, "degenerate table classes", pass, note);
}

// Definitional predense oracle, coded over up-set bitmasks instead of the
// referee's pairwise search.
bool predense_oracle(const FinitePoset& poset, int q, const std::vector<int>& family) {
  std::vector<std::uint32_t> upset(static_cast<std::size_t>(poset.size), 0);
  for (int a = 0; a < poset.size; ++a)
    for (int b = 0; b < poset.size; ++b)
      if (poset.le[a][b]) upset[static_cast<std::size_t>(a)] |= 1u << b;
  std::uint32_t family_hits = 0;
  for (int r = 0; r < poset.size; ++r) {
    bool met = false;
    for (int a : family)
      if (upset[static_cast<std::size_t>(r)] & upset[static_cast<std::size_t>(a)]) met = true;
    if (met) family_hits |= 1u << r;
  }
  return (upset[static_cast<std::size_t>(q)] & ~family_hits) == 0;
}

std::vector<FinitePoset> load_poset_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open poset corpus " + path);
  std::vector<FinitePoset> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw std::runtime_error("malformed corpus line");
    int size = std::stoi(line.substr(0, colon));
    std::string bits = line.substr(colon + 1);
    if (static_cast<int>(bits.size()) != size * size)
      throw std::runtime_error("corpus matrix has the wrong size");
    FinitePoset poset;
    poset.size = size;
    for (int a = 0; a < size; ++a) {
      std::vector<bool> row;
      for (int b = 0; b < size; ++b)
        row.push_back(bits[static_cast<std::size_t>(a * size + b)] == '1');
      poset.le.push_back(std::move(row));
    }
    poset.validate();
    out.push_back(std::move(poset));
  }
  return out;
}

// 6. Rule ids fire exactly where intended; predense_above matches the oracle on
//    the whole small-poset corpus; the one-element poset always certifies a win.
void criterion_referee() {
  bool pass = true;
  std::string note;
  try {
    std::set<std::string> expected{"alpha.size", "alpha.passthrough", "alpha.bound",
                                   "nice.alphabet", "nice.depth", "nice.label",
                                   "nice.split", "gamma.root", "gamma.chain",
                                   "gamma.answer", "nice.incompat"};
    std::set<std::string> seen;
    for (const auto& fixture : illegal_fixtures()) {
      auto verdict = validate_transcript(fixture.poset, fixture.transcript);
      if (verdict.legal) throw std::logic_error("fixture for " + fixture.rule_id + " is legal");
      bool found = false;
      for (const auto& failure : verdict.failures)
        if (failure.rule_id == fixture.rule_id) found = true;
      if (!found) throw std::logic_error("fixture missed rule " + fixture.rule_id);
      seen.insert(fixture.rule_id);
    }
    if (seen != expected) throw std::logic_error("rule id set differs from the stable 11");
    auto legal = validate_transcript(one_element_poset(), legal_one_element_transcript());
    if (!legal.failures.empty()) throw std::logic_error("legal fixture triggered a rule");
    auto legal_silver = validate_transcript(
        BoundedSilverPoset{2},
        scripted_silver_play(2, NiceSet::four_j_plus_two(), empty_condition(2), 6));
    if (!legal_silver.failures.empty())
      throw std::logic_error("legal scripted play triggered a rule");

    auto corpus = load_poset_corpus(std::string(SILVERCHASE_DATA_DIR) + "/posets_upto5.txt");
    std::map<int, int> per_size;
    for (const auto& poset : corpus) ++per_size[poset.size];
    if (per_size != std::map<int, int>{{1, 1}, {2, 2}, {3, 5}, {4, 16}, {5, 63}})
      throw std::logic_error("poset corpus counts differ from 1,2,5,16,63");
    long checks = 0;
    for (const auto& poset : corpus) {
      for (int q = 0; q < poset.size; ++q) {
        for (std::uint32_t mask = 0; mask < (1u << poset.size); ++mask) {
          std::vector<int> family;
          for (int a = 0; a < poset.size; ++a)
            if (mask >> a & 1) family.push_back(a);
          if (predense_above(poset, q, family) != predense_oracle(poset, q, family))
            throw std::logic_error("predense_above disagrees with the oracle");
          ++checks;
        }
      }
    }

    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 50; ++trial) {
      GameTranscript t;
      t.splitting = 2;
      t.nice_set = NiceSet::four_j_plus_two();
      t.root = 0;
      int rounds = static_cast<int>(rng() % 4);
      FiniteTree tree;
      tree.nodes.insert(SymbolString{});
      SymbolString branch;
      for (int r = 0; r < rounds; ++r) {
        branch.push_back(2);
        tree.nodes.insert(branch);
        t.rounds.push_back(make_round(tree, {branch}, {{GameCondition{0}, GameCondition{0}}}));
      }
      auto win = win_check(one_element_poset(), t);
      if (win.status != WinStatus::generic_wins)
        throw std::logic_error("one-element poset did not certify a win");
    }
    note = std::to_string(checks) + " predense checks across 87 posets";
  } catch (const std::exception& e) {
    pass = false;
    note = e.what();
  }
  report(6, "referee correctness", pass, note);
}

std::string run_cli(const std::string& args, const fs::path& out_file, int expected_exit) {
  std::string cmd = std::string(SILVERCHASE_CLI_PATH) + " --out " + out_file.string() + " " +
                    args + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  int exit_code = -1;
#ifdef WEXITSTATUS
  if (status != -1) exit_code = WEXITSTATUS(status);
#else
  exit_code = status;
#endif
  if (exit_code != expected_exit)
    throw std::runtime_error("command '" + args + "' exited with " + std::to_string(exit_code) +
                             ", expected " + std::to_string(expected_exit));
  std::ifstream in(out_file, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// 7. Byte-identical reruns of the CLI and round-tripping writers.
void criterion_determinism() {
  bool pass = true;
  std::string note;
  try {
    auto dir = fs::temp_directory_path() / "silverchase-acceptance";
    fs::create_directories(dir);
    auto psi_file = dir / "table.psi";
    auto out_a = dir / "a.out";
    auto out_b = dir / "b.out";

    auto gen = run_cli("psi-gen --seed 9 --a 2 --D 5 --label-range 4", psi_file, 0);
    if (run_cli("psi-gen --seed 9 --a 2 --D 5 --label-range 4", out_a, 0) != gen)
      throw std::logic_error("psi-gen is not byte-deterministic");

    auto chase_a = run_cli("--format doc chase --psi " + psi_file.string(), out_a, 0);
    auto chase_b = run_cli("--format doc chase --psi " + psi_file.string(), out_b, 0);
    if (chase_a != chase_b) throw std::logic_error("chase is not byte-deterministic");

    auto oracle_a = run_cli("oracle --psi " + psi_file.string() + " --L 3 --free-count 1", out_a, 0);
    auto oracle_b = run_cli("oracle --psi " + psi_file.string() + " --L 3 --free-count 1", out_b, 0);
    if (oracle_a != oracle_b) throw std::logic_error("oracle is not byte-deterministic");

    std::string fixtures = SILVERCHASE_FIXTURE_DIR;
    auto game_args = "game-validate --poset " + fixtures + "/poset_one.json --transcript " +
                     fixtures + "/transcript_legal.json";
    if (run_cli(game_args, out_a, 0) != run_cli(game_args, out_b, 0))
      throw std::logic_error("game-validate is not byte-deterministic");
    run_cli("game-validate --poset " + fixtures + "/poset_chain2.json --transcript " +
                fixtures + "/transcript_illegal.json",
            out_a, 3);

    // writer round-trips
    std::mt19937_64 seeds(108);
    for (int trial = 0; trial < 30; ++trial) {
      auto table = gen_psi(seeds(), 2, 4, 6, PsiKind::random_labels);
      if (io::parse_psi_string(io::write_psi(table)) != table)
        throw std::logic_error("psi writer does not round-trip");
      auto result = chase(table, 100);
      if (io::chase_result_from_json(io::chase_result_to_json(result)) != result)
        throw std::logic_error("chase document does not round-trip");
    }
    std::mt19937_64 rng(109);
    for (int trial = 0; trial < 100; ++trial) {
      auto f = random_condition(rng, 2 + static_cast<int>(rng() % 3), 6);
      if (io::parse_condition(io::write_condition(f)) != f)
        throw std::logic_error("condition writer does not round-trip");
    }
    for (const auto& poset : {one_element_poset(), chain_poset(5), vee_poset()}) {
      auto spec = PosetSpec{poset};
      if (!(std::get<FinitePoset>(io::poset_from_json(io::poset_to_json(spec))) == poset))
        throw std::logic_error("poset document does not round-trip");
    }
    auto play = scripted_silver_play(2, NiceSet::four_j_plus_two(), empty_condition(2), 5);
    if (!(io::transcript_from_json(io::transcript_to_json(play)) == play))
      throw std::logic_error("transcript document does not round-trip");
  } catch (const std::exception& e) {
    pass = false;
    note = e.what();
  }
  report(7, "determinism and round-trips", pass, note);
}

}  // namespace

int main() {
  criterion_soundness();
  criterion_fixtures();
  criterion_oracle_agreement();
  criterion_laws();
  criterion_degenerate();
  criterion_referee();
  criterion_determinism();
  if (g_failures != 0) {
    std::cout << g_failures << " criteria failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
