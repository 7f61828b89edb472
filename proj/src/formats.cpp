#include "silverchase/formats.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace silverchase::io {

namespace {

std::string seq_text(const SymbolString& s) {
  std::string out = "<";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + ">";
}

std::string label_text(const LabelString& s) {
  std::string out = "<";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + ">";
}

nlohmann::json seq_json(const SymbolString& s) { return nlohmann::json(s); }

SymbolString seq_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw parse_error("expected an array of symbols");
  return j.get<SymbolString>();
}

nlohmann::json cond_json(const GameCondition& c) {
  if (const auto* e = std::get_if<int>(&c)) return nlohmann::json{{"elem", *e}};
  return nlohmann::json{{"silver", write_condition(std::get<SilverCondition>(c))}};
}

GameCondition cond_from_json(const nlohmann::json& j) {
  if (j.contains("elem")) return GameCondition{j.at("elem").get<int>()};
  if (j.contains("silver"))
    return GameCondition{parse_condition(j.at("silver").get<std::string>())};
  throw parse_error("condition must carry either 'elem' or 'silver'");
}

void require_version(const nlohmann::json& doc, const std::string& kind) {
  if (!doc.is_object()) throw parse_error("expected a JSON object");
  if (doc.value("format_version", -1) != kFormatVersion)
    throw parse_error("unsupported format_version");
  if (doc.value("kind", std::string{}) != kind)
    throw parse_error("expected a document of kind '" + kind + "'");
}

}  // namespace

PsiTable parse_psi(std::istream& in) {
  std::string line;
  bool have_header = false;
  int arity = 0, horizon = 0;
  std::map<SymbolString, Label> entries;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (!have_header) {
      int a = 0, d = 0;
      if (first != "psi") throw parse_error("psi table must start with a 'psi a=.. D=..' line");
      std::string fa, fd;
      if (!(fields >> fa >> fd) || fa.rfind("a=", 0) != 0 || fd.rfind("D=", 0) != 0)
        throw parse_error("malformed psi header");
      try {
        a = std::stoi(fa.substr(2));
        d = std::stoi(fd.substr(2));
      } catch (const std::exception&) {
        throw parse_error("malformed psi header");
      }
      if (a < 2 || a > 10) throw parse_error("psi text format supports arity 2..10");
      if (d < 1) throw parse_error("psi horizon must be at least 1");
      arity = a;
      horizon = d;
      have_header = true;
      continue;
    }
    std::string label_field;
    if (!(fields >> label_field))
      throw parse_error("line " + std::to_string(line_no) + ": missing label");
    std::string extra;
    if (fields >> extra)
      throw parse_error("line " + std::to_string(line_no) + ": trailing input");
    SymbolString s;
    for (char ch : first) {
      if (ch < '0' || ch >= '0' + arity)
        throw parse_error("line " + std::to_string(line_no) + ": digit out of alphabet");
      s.push_back(ch - '0');
    }
    if (s.empty() || static_cast<int>(s.size()) > horizon)
      throw parse_error("line " + std::to_string(line_no) + ": string length out of range");
    Label value = 0;
    try {
      value = std::stoull(label_field);
    } catch (const std::exception&) {
      throw parse_error("line " + std::to_string(line_no) + ": malformed label");
    }
    if (!entries.emplace(std::move(s), value).second)
      throw parse_error("line " + std::to_string(line_no) + ": duplicate string");
  }
  if (!have_header) throw parse_error("empty psi table");
  PsiTable table(arity, horizon);
  if (entries.size() != table.entry_count())
    throw parse_error("psi table is not total: " + std::to_string(entries.size()) + " of " +
                      std::to_string(table.entry_count()) + " strings labeled");
  for (const auto& [s, value] : entries) table.set_label(s, value);
  return table;
}

PsiTable parse_psi_string(const std::string& text) {
  std::istringstream in(text);
  return parse_psi(in);
}

std::string write_psi(const PsiTable& table, const std::string& comment) {
  if (table.arity() > 10) throw parse_error("psi text format supports arity 2..10");
  std::ostringstream out;
  out << "psi a=" << table.arity() << " D=" << table.horizon() << "\n";
  if (!comment.empty()) out << "# " << comment << "\n";
  for (const auto& s : table.all_strings()) {
    for (Symbol c : s) out << static_cast<char>('0' + c);
    out << " " << table.label(s) << "\n";
  }
  return out.str();
}

SilverCondition parse_condition(const std::string& text) {
  std::istringstream in(text);
  std::string fn, fb, flist;
  if (!(in >> fn >> fb) || fn.rfind("n=", 0) != 0 || fb.rfind("B=", 0) != 0)
    throw parse_error("condition must look like 'n=<arity> B=<bound> [<pos>=<val>,...]'");
  int arity = 0, bound = 0;
  try {
    arity = std::stoi(fn.substr(2));
    bound = std::stoi(fb.substr(2));
  } catch (const std::exception&) {
    throw parse_error("malformed condition header");
  }
  std::map<int, Symbol> assignments;
  if (in >> flist) {
    std::string extra;
    if (in >> extra) throw parse_error("trailing input after the assignment list");
    std::istringstream items(flist);
    std::string item;
    int last_pos = -1;
    while (std::getline(items, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw parse_error("malformed assignment '" + item + "'");
      int pos = 0, val = 0;
      try {
        pos = std::stoi(item.substr(0, eq));
        val = std::stoi(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw parse_error("malformed assignment '" + item + "'");
      }
      if (pos <= last_pos) throw parse_error("positions must be strictly increasing");
      last_pos = pos;
      assignments[pos] = val;
    }
  }
  try {
    return SilverCondition(arity, bound, std::move(assignments));
  } catch (const std::exception& e) {
    throw parse_error(e.what());
  }
}

std::string write_condition(const SilverCondition& f) {
  std::ostringstream out;
  out << "n=" << f.value_arity << " B=" << f.bound;
  bool first = true;
  for (const auto& [pos, val] : f.assignments) {
    out << (first ? " " : ",") << pos << "=" << val;
    first = false;
  }
  return out.str();
}

nlohmann::json poset_to_json(const PosetSpec& poset) {
  nlohmann::json doc{{"format_version", kFormatVersion}, {"kind", "poset"}};
  if (const auto* fp = std::get_if<FinitePoset>(&poset)) {
    doc["type"] = "finite";
    doc["size"] = fp->size;
    std::vector<std::string> rows;
    for (int a = 0; a < fp->size; ++a) {
      std::string row(static_cast<std::size_t>(fp->size), '0');
      for (int b = 0; b < fp->size; ++b)
        if (fp->le[a][b]) row[static_cast<std::size_t>(b)] = '1';
      rows.push_back(std::move(row));
    }
    doc["le"] = rows;
  } else {
    doc["type"] = "silver";
    doc["arity"] = std::get<BoundedSilverPoset>(poset).arity;
  }
  return doc;
}

PosetSpec poset_from_json(const nlohmann::json& doc) {
  require_version(doc, "poset");
  std::string type = doc.value("type", std::string{});
  if (type == "silver") return BoundedSilverPoset{doc.at("arity").get<int>()};
  if (type != "finite") throw parse_error("poset type must be 'finite' or 'silver'");
  FinitePoset poset;
  poset.size = doc.at("size").get<int>();
  auto rows = doc.at("le").get<std::vector<std::string>>();
  if (static_cast<int>(rows.size()) != poset.size)
    throw parse_error("order matrix row count differs from the declared size");
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != poset.size)
      throw parse_error("order matrix column count differs from the declared size");
    std::vector<bool> bits;
    for (char ch : row) {
      if (ch != '0' && ch != '1') throw parse_error("order matrix entries must be 0 or 1");
      bits.push_back(ch == '1');
    }
    poset.le.push_back(std::move(bits));
  }
  poset.validate();
  return poset;
}

nlohmann::json transcript_to_json(const GameTranscript& transcript) {
  nlohmann::json doc{{"format_version", kFormatVersion}, {"kind", "transcript"}};
  doc["n"] = transcript.splitting;
  if (transcript.nice_set.is_progression)
    doc["K"] = {{"type", "progression"},
                {"stride", transcript.nice_set.stride},
                {"offset", transcript.nice_set.offset}};
  else
    doc["K"] = {{"type", "set"},
                {"members", std::vector<int>(transcript.nice_set.members.begin(),
                                             transcript.nice_set.members.end())}};
  doc["root"] = cond_json(transcript.root);
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& round : transcript.rounds) {
    nlohmann::json tree = nlohmann::json::array();
    for (const auto& node : round.tree.nodes) tree.push_back(seq_json(node));
    nlohmann::json enumeration = nlohmann::json::array();
    for (const auto& eta : round.enumeration) enumeration.push_back(seq_json(eta));
    nlohmann::json moves = nlohmann::json::array();
    for (const auto& [p, q] : round.moves)
      moves.push_back({{"p", cond_json(p)}, {"q", cond_json(q)}});
    rounds.push_back(
        {{"tree", tree}, {"enumeration", enumeration}, {"moves", moves}});
  }
  doc["rounds"] = rounds;
  if (transcript.claimed_witness) doc["witness"] = cond_json(*transcript.claimed_witness);
  return doc;
}

GameTranscript transcript_from_json(const nlohmann::json& doc) {
  require_version(doc, "transcript");
  GameTranscript transcript;
  transcript.splitting = doc.at("n").get<int>();
  const auto& k = doc.at("K");
  std::string ktype = k.value("type", std::string{});
  if (ktype == "progression")
    transcript.nice_set = NiceSet::progression(k.at("stride").get<int>(),
                                               k.at("offset").get<int>());
  else if (ktype == "set") {
    auto members = k.at("members").get<std::vector<int>>();
    transcript.nice_set = NiceSet::explicit_set({members.begin(), members.end()});
  } else
    throw parse_error("nice set type must be 'progression' or 'set'");
  transcript.root = cond_from_json(doc.at("root"));
  for (const auto& r : doc.at("rounds")) {
    Round round;
    for (const auto& node : r.at("tree")) round.tree.nodes.insert(seq_from_json(node));
    for (const auto& eta : r.at("enumeration")) round.enumeration.push_back(seq_from_json(eta));
    for (const auto& move : r.at("moves"))
      round.moves.emplace_back(cond_from_json(move.at("p")), cond_from_json(move.at("q")));
    transcript.rounds.push_back(std::move(round));
  }
  if (doc.contains("witness")) transcript.claimed_witness = cond_from_json(doc.at("witness"));
  return transcript;
}

nlohmann::json chase_result_to_json(const ChaseResult& result) {
  nlohmann::json doc{{"format_version", kFormatVersion}, {"kind", "chase_result"}};
  doc["status"] =
      result.status == ChaseStatus::completed ? "completed" : "horizon_exhausted";
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& stage : result.stages) {
    nlohmann::json reps = nlohmann::json::array();
    for (const auto& d : stage.representatives) reps.push_back(seq_json(d));
    nlohmann::json inner = nlohmann::json::array();
    for (const auto& step : stage.inner) {
      nlohmann::json extension = nlohmann::json::array();
      for (const auto& [pos, val] : step.extension)
        extension.push_back(nlohmann::json::array({pos, val}));
      inner.push_back({{"representative", seq_json(step.representative)},
                       {"branch", step.branch == BranchKind::equalized ? "equalized"
                                                                       : "separated"},
                       {"frontier_after", step.frontier_after},
                       {"extension", extension}});
    }
    stages.push_back({{"index", stage.index},
                      {"frontier", stage.frontier},
                      {"assignment", write_condition(stage.assignment)},
                      {"representatives", reps},
                      {"inner", inner}});
  }
  doc["stages"] = stages;
  doc["final_assignment"] = write_condition(result.final_assignment);
  nlohmann::json tree = nlohmann::json::array();
  for (const auto& node : result.final_tree.nodes) tree.push_back(nlohmann::json(node));
  doc["final_tree"] = tree;
  doc["exhausted_stage"] = result.exhausted_stage;
  doc["exhausted_representative"] = seq_json(result.exhausted_representative);
  doc["exhausted_reason"] = result.exhausted_reason;
  return doc;
}

ChaseResult chase_result_from_json(const nlohmann::json& doc) {
  require_version(doc, "chase_result");
  ChaseResult result;
  std::string status = doc.at("status").get<std::string>();
  if (status == "completed")
    result.status = ChaseStatus::completed;
  else if (status == "horizon_exhausted")
    result.status = ChaseStatus::horizon_exhausted;
  else
    throw parse_error("unknown chase status '" + status + "'");
  for (const auto& s : doc.at("stages")) {
    ChaseStage stage;
    stage.index = s.at("index").get<int>();
    stage.frontier = s.at("frontier").get<int>();
    stage.assignment = parse_condition(s.at("assignment").get<std::string>());
    for (const auto& d : s.at("representatives"))
      stage.representatives.push_back(seq_from_json(d));
    for (const auto& step : s.at("inner")) {
      InnerStep inner;
      inner.representative = seq_from_json(step.at("representative"));
      std::string branch = step.at("branch").get<std::string>();
      if (branch == "equalized")
        inner.branch = BranchKind::equalized;
      else if (branch == "separated")
        inner.branch = BranchKind::separated;
      else
        throw parse_error("unknown branch kind '" + branch + "'");
      inner.frontier_after = step.at("frontier_after").get<int>();
      for (const auto& pair : step.at("extension")) {
        if (!pair.is_array() || pair.size() != 2)
          throw parse_error("extension entries must be [position, value] pairs");
        inner.extension[pair[0].get<int>()] = pair[1].get<Symbol>();
      }
      stage.inner.push_back(std::move(inner));
    }
    result.stages.push_back(std::move(stage));
  }
  result.final_assignment = parse_condition(doc.at("final_assignment").get<std::string>());
  for (const auto& node : doc.at("final_tree"))
    result.final_tree.nodes.insert(node.get<LabelString>());
  result.exhausted_stage = doc.at("exhausted_stage").get<int>();
  result.exhausted_representative = seq_from_json(doc.at("exhausted_representative"));
  result.exhausted_reason = doc.at("exhausted_reason").get<std::string>();
  return result;
}

nlohmann::json verdict_to_json(const Verdict& verdict) {
  nlohmann::json doc{{"format_version", kFormatVersion}, {"kind", "verdict"}};
  doc["legal"] = verdict.legal;
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& failure : verdict.failures)
    failures.push_back(
        {{"round", failure.round}, {"rule", failure.rule_id}, {"detail", failure.detail}});
  doc["failures"] = failures;
  nlohmann::json win;
  switch (verdict.win.status) {
    case WinStatus::generic_wins: win["status"] = "generic_wins"; break;
    case WinStatus::no_witness: win["status"] = "no_witness"; break;
    case WinStatus::undetermined: win["status"] = "undetermined"; break;
  }
  if (verdict.win.witness) win["witness"] = cond_json(*verdict.win.witness);
  win["certified_rounds"] = verdict.win.certified_rounds;
  win["failed_rounds"] = verdict.win.failed_rounds;
  doc["win"] = win;
  return doc;
}

std::string chase_report_text(const ChaseResult& result) {
  std::ostringstream out;
  out << "chase report\n";
  out << "status: "
      << (result.status == ChaseStatus::completed ? "completed" : "horizon_exhausted") << "\n";
  out << "stages: " << result.stages.size() << "\n";
  const ChaseStage& last = result.stages.back();
  out << "final frontier: " << last.frontier << "\n";
  out << "final assignment: " << write_condition(result.final_assignment) << "\n";
  out << "free positions below frontier:";
  for (int p = 0; p < last.frontier; ++p)
    if (result.final_assignment.is_free(p)) out << " " << p;
  out << "\n";
  out << "binary: " << (is_k_ary(result.final_tree, 2) ? "yes" : "no") << "\n";
  if (result.status == ChaseStatus::horizon_exhausted) {
    out << "exhausted at stage: " << result.exhausted_stage << "\n";
    out << "exhausted representative: " << seq_text(result.exhausted_representative) << "\n";
    out << "reason: " << result.exhausted_reason << "\n";
  }
  for (const auto& stage : result.stages) {
    out << "[stage " << stage.index << "]\n";
    out << "frontier: " << stage.frontier << "\n";
    out << "assignment: " << write_condition(stage.assignment) << "\n";
    if (!stage.representatives.empty()) {
      out << "representatives:";
      for (const auto& d : stage.representatives) out << " " << seq_text(d);
      out << "\n";
    }
    for (const auto& step : stage.inner) {
      out << "  " << seq_text(step.representative) << " "
          << (step.branch == BranchKind::equalized ? "equalized" : "separated")
          << " -> frontier " << step.frontier_after << ", extension {";
      bool first = true;
      for (const auto& [pos, val] : step.extension) {
        if (!first) out << ",";
        out << pos << "=" << val;
        first = false;
      }
      out << "}\n";
    }
  }
  out << "final tree:";
  for (const auto& node : result.final_tree.nodes) out << " " << label_text(node);
  out << "\n";
  return out.str();
}

std::string verdict_text(const Verdict& verdict) {
  std::ostringstream out;
  if (verdict.legal)
    out << "verdict: legal\n";
  else
    out << "verdict: illegal(" << verdict.failures.front().rule_id << ")\n";
  for (const auto& failure : verdict.failures)
    out << "round " << failure.round << " " << failure.rule_id << ": " << failure.detail
        << "\n";
  if (verdict.legal) {
    switch (verdict.win.status) {
      case WinStatus::generic_wins:
        out << "win: generic_wins";
        if (verdict.win.witness) {
          if (const auto* e = std::get_if<int>(&*verdict.win.witness))
            out << " witness=" << *e;
          else
            out << " witness=\"" << write_condition(std::get<SilverCondition>(*verdict.win.witness))
                << "\"";
        }
        out << "\n";
        break;
      case WinStatus::no_witness: out << "win: no_witness\n"; break;
      case WinStatus::undetermined: out << "win: undetermined\n"; break;
    }
    if (!verdict.win.certified_rounds.empty() || !verdict.win.failed_rounds.empty()) {
      out << "certified rounds:";
      for (int r : verdict.win.certified_rounds) out << " " << r;
      out << "\n";
      out << "failed rounds:";
      for (int r : verdict.win.failed_rounds) out << " " << r;
      out << "\n";
    }
  }
  return out.str();
}

std::string tree_to_dot(const LabeledTree& tree, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (const auto& node : tree.nodes) out << "  \"" << label_text(node) << "\";\n";
  for (const auto& node : tree.nodes) {
    if (node.empty()) continue;
    LabelString parent(node.begin(), node.end() - 1);
    out << "  \"" << label_text(parent) << "\" -> \"" << label_text(node) << "\";\n";
  }
  out << "}\n";
  return out.str();
}

std::string assignment_listing(const std::vector<PartialAssignment>& assignments) {
  std::ostringstream out;
  for (const auto& xi : assignments) out << write_condition(xi) << "\n";
  out << "count=" << assignments.size() << "\n";
  return out.str();
}

}  // namespace silverchase::io
