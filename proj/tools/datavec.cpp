// Command-line front end: decision procedures over finitely supported data
// vectors, unordered-data nets, and data blind counter automata.
//
// Exit codes: 0 = positive decision, 1 = negative decision, 2 = error or
// inconclusive. Set DATAVEC_LOG=1 for diagnostics on stderr.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "datavec/bca.hpp"
#include "datavec/errors.hpp"
#include "datavec/expressibility.hpp"
#include "datavec/histogram.hpp"
#include "datavec/json_io.hpp"
#include "datavec/oracle.hpp"
#include "datavec/reversibility.hpp"
#include "datavec/rng.hpp"
#include "datavec/updn.hpp"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

bool log_enabled() {
  const char* v = std::getenv("DATAVEC_LOG");
  return v && *v && std::string_view(v) != "0";
}

void log_line(const std::string& msg) {
  if (log_enabled()) std::cerr << "datavec: " << msg << "\n";
}

// Inputs feed both the parser and a running FNV-1a 64 digest, so a report
// identifies exactly what was decided.
struct Session {
  datavec::Interner interner;
  std::uint64_t digest = 14695981039346656037ULL;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  std::string slurp(const std::string& path) {
    std::string bytes;
    if (path == "-") {
      std::ostringstream ss;
      ss << std::cin.rdbuf();
      bytes = ss.str();
    } else {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw std::runtime_error("cannot open '" + path + "'");
      std::ostringstream ss;
      ss << in.rdbuf();
      bytes = ss.str();
    }
    for (unsigned char c : bytes) {
      digest ^= c;
      digest *= 1099511628211ULL;
    }
    return bytes;
  }

  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
        .count();
  }

  std::string digest_hex() const {
    static const char* hex = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 0; i < 16; ++i) s[15 - i] = hex[(digest >> (4 * i)) & 0xf];
    return s;
  }
};

// The decision goes to stdout either as a bare line (plus optional payload
// JSON) or, with --report, as one JSON object.
struct Output {
  bool report = false;
  std::string command;
  std::string decision;
  std::optional<Json> payload;  // witness or similar, keyed by payload_key
  std::string payload_key = "witness";
  Json stats = Json::object();

  void emit(Session& session) const {
    if (report) {
      Json j = Json::object();
      j["command"] = command;
      j["digest"] = session.digest_hex();
      j["decision"] = decision;
      if (payload) j[payload_key] = *payload;
      if (!stats.empty()) j["stats"] = stats;
      j["timing_ms"] = session.elapsed_ms();
      std::cout << j.dump() << "\n";
    } else {
      std::cout << decision << "\n";
      if (payload) std::cout << payload->dump() << "\n";
    }
  }
};

Json ilp_stats_json(const datavec::IlpStats& s) {
  Json j = Json::object();
  j["nodes"] = s.nodes;
  j["lp_calls"] = s.lp_calls;
  j["lp_pivots"] = s.lp_pivots;
  return j;
}

datavec::ExpressibilityInstance read_instance(Session& session, const std::string& path,
                                              bool target_optional) {
  std::string text = session.slurp(path);
  if (target_optional) {
    // The reversibility question only concerns the member list, so "x" may
    // be omitted; an empty target is patched in before the strict parse.
    Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_object() && !j.contains("x")) {
      j["x"] = Json::object();
      text = j.dump();
    }
  }
  return datavec::parse_instance_json(text, session.interner);
}

datavec::ReversibleSetCertificate certified_or_die(const datavec::ExpressibilityInstance& inst) {
  datavec::ReversibilityReport report = datavec::is_reversible_set(inst.members());
  if (!report.reversible)
    throw std::runtime_error("--fast needs a reversible member set, and this one is not");
  return std::move(*report.certificate);
}

int run_expressible(Session& session, const std::string& instance_path, bool want_witness,
                    bool fast, bool report) {
  const auto inst = read_instance(session, instance_path, false);
  Output out;
  out.report = report;
  out.command = "expressible";

  bool yes = false;
  std::optional<datavec::PermutationSumWitness> witness;
  if (fast) {
    const auto cert = certified_or_die(inst);
    const auto r = datavec::fast_is_permutation_sum(inst, cert, want_witness);
    yes = r.yes;
    witness = r.witness;
    out.stats["route"] = "subgroup";
  } else {
    const auto r = datavec::is_permutation_sum(inst, want_witness);
    yes = r.yes;
    witness = r.witness;
    out.stats["route"] = "integer-program";
    out.stats["rounds"] = r.rounds;
    out.stats["fresh_used"] = r.fresh_used;
    out.stats["ilp"] = ilp_stats_json(r.stats);
  }
  out.decision = yes ? "YES" : "NO";
  if (yes && want_witness && witness)
    out.payload = Json::parse(datavec::format_witness_json(*witness, session.interner));
  out.emit(session);
  log_line("expressible: " + out.decision);
  return yes ? kYes : kNo;
}

int run_reversible(Session& session, const std::string& instance_path, bool want_witness,
                   bool report) {
  const auto inst = read_instance(session, instance_path, true);
  const auto r = datavec::is_reversible_set(inst.members());
  Output out;
  out.report = report;
  out.command = "reversible";
  out.decision = r.reversible ? "YES" : "NO";
  Json flags = Json::array();
  for (char f : r.member_reversible) flags.push_back(f != 0);
  out.stats["members"] = std::move(flags);
  if (r.reversible && want_witness) {
    Json witnesses = Json::array();
    for (const auto& rev : r.certificate->reversals)
      witnesses.push_back(
          Json::parse(datavec::format_witness_json(rev.witness, session.interner)));
    out.payload = std::move(witnesses);
    out.payload_key = "reversal_witnesses";
  }
  out.emit(session);
  return r.reversible ? kYes : kNo;
}

int run_hist_decompose(Session& session, const std::string& hist_path, bool report) {
  const auto h = datavec::parse_histogram_json(session.slurp(hist_path), session.interner);
  const auto parts = datavec::decompose(h);
  Output out;
  out.report = report;
  out.command = "hist decompose";
  out.decision = "OK";
  Json arr = Json::array();
  for (const auto& part : parts)
    arr.push_back(Json::parse(datavec::format_histogram_json(part.histogram(), session.interner)));
  out.payload = std::move(arr);
  out.payload_key = "parts";
  out.stats["parts"] = parts.size();
  out.emit(session);
  return kYes;
}

int run_verify(Session& session, const std::string& instance_path, const std::string& witness_path,
               bool report) {
  const auto inst = read_instance(session, instance_path, false);
  const auto witness =
      datavec::parse_witness_json(session.slurp(witness_path), session.interner);
  bool ok;
  try {
    ok = datavec::verify_witness(inst, witness);
  } catch (const std::invalid_argument& e) {
    // Structurally broken witnesses (bad member index, domain gaps) are
    // invalid rather than operator errors.
    log_line(std::string("verify: ") + e.what());
    ok = false;
  }
  Output out;
  out.report = report;
  out.command = "verify";
  out.decision = ok ? "VALID" : "INVALID";
  out.emit(session);
  return ok ? kYes : kNo;
}

int run_updn_check(Session& session, const std::string& net_path, const std::string& from_path,
                   const std::string& to_path, bool want_witness, bool fast, bool report) {
  const auto net = datavec::parse_updn(session.slurp(net_path));
  const auto from = datavec::parse_marking(net, session.slurp(from_path), session.interner);
  const auto to = datavec::parse_marking(net, session.slurp(to_path), session.interner);
  Output out;
  out.report = report;
  out.command = "updn check";

  bool yes = false;
  std::optional<datavec::PermutationSumWitness> witness;
  if (fast) {
    datavec::ReversibilityReport rev = datavec::effects_reversible(net);
    if (!rev.reversible)
      throw std::runtime_error("--fast needs reversible transition effects, and these are not");
    const auto r = datavec::state_equation_fast(net, from, to, *rev.certificate, want_witness);
    yes = r.yes;
    witness = r.witness;
    out.stats["route"] = "subgroup";
  } else {
    const auto r = datavec::state_equation(net, from, to, want_witness);
    yes = r.yes;
    witness = r.witness;
    out.stats["route"] = "integer-program";
    out.stats["ilp"] = ilp_stats_json(r.stats);
  }
  out.decision = yes ? "YES" : "NO";
  if (yes && want_witness && witness)
    out.payload = Json::parse(datavec::format_witness_json(*witness, session.interner));
  out.emit(session);
  return yes ? kYes : kNo;
}

int run_updn_walk(Session& session, const std::string& net_path, const std::string& from_path,
                  std::size_t steps, std::uint64_t seed, bool report) {
  const auto net = datavec::parse_updn(session.slurp(net_path));
  const auto from = datavec::parse_marking(net, session.slurp(from_path), session.interner);
  datavec::Rng rng(seed);
  const auto trail = datavec::random_walk(net, from, steps, rng);
  if (report) {
    Output out;
    out.report = true;
    out.command = "updn walk";
    out.decision = "OK";
    Json arr = Json::array();
    for (const auto& m : trail) arr.push_back(datavec::format_marking(net, m, session.interner));
    out.payload = std::move(arr);
    out.payload_key = "markings";
    out.stats["steps"] = trail.size() - 1;
    out.emit(session);
  } else {
    for (const auto& m : trail)
      std::cout << datavec::format_marking(net, m, session.interner) << "\n";
  }
  return kYes;
}

int run_bca_reach(Session& session, const std::string& bca_path, const std::string& from_path,
                  const std::string& to_path, std::size_t threads, bool report) {
  const auto automaton = datavec::parse_bca(session.slurp(bca_path), session.interner);
  const auto from = datavec::parse_vector_json(session.slurp(from_path), session.interner);
  const auto to = datavec::parse_vector_json(session.slurp(to_path), session.interner);
  datavec::ReachOptions options;
  options.threads = threads;
  const auto r = datavec::reachable(automaton, from, to, options);
  Output out;
  out.report = report;
  out.command = "bca reach";
  switch (r.decision) {
    case datavec::ReachDecision::Yes:
      out.decision = "YES";
      break;
    case datavec::ReachDecision::No:
      out.decision = "NO";
      break;
    case datavec::ReachDecision::InconclusiveCapped:
      out.decision = "INCONCLUSIVE_CAPPED";
      break;
  }
  out.stats["skeleton_walks"] = r.stats.skeleton_walks;
  out.stats["candidates"] = r.stats.candidates;
  out.stats["ilp"] = ilp_stats_json(r.stats.ilp);
  out.emit(session);
  log_line("bca reach: " + out.decision);
  if (r.decision == datavec::ReachDecision::Yes) return kYes;
  return r.decision == datavec::ReachDecision::No ? kNo : kError;
}

int run_oracle(Session& session, const std::string& instance_path, std::size_t max_terms,
               std::size_t node_cap, bool want_witness, bool report) {
  const auto inst = read_instance(session, instance_path, false);
  datavec::OracleBudget budget;
  budget.max_terms = max_terms;
  budget.node_cap = node_cap;
  const auto r = datavec::oracle_decide(inst, budget);
  Output out;
  out.report = report;
  out.command = "oracle";
  out.decision = r.decision == datavec::OracleDecision::Yes ? "YES" : "NO_UP_TO_BUDGET";
  out.stats["nodes"] = r.nodes;
  out.stats["max_terms"] = max_terms;
  if (r.witness && want_witness)
    out.payload = Json::parse(datavec::format_witness_json(*r.witness, session.interner));
  out.emit(session);
  return r.decision == datavec::OracleDecision::Yes ? kYes : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedures for finitely supported data vectors"};
  app.require_subcommand(1);

  bool report = false;
  app.add_flag("--report", report, "emit one JSON report object instead of plain lines");

  auto* expressible = app.add_subcommand(
      "expressible", "is the target a sum of pushforwards of the member vectors?");
  std::string ex_instance;
  bool ex_witness = false, ex_fast = false;
  expressible->add_option("instance", ex_instance, "instance JSON file ('-' for stdin)")
      ->required();
  expressible->add_flag("--witness", ex_witness, "also produce a verified witness");
  expressible->add_flag("--fast", ex_fast,
                        "use the subgroup route (requires a reversible member set)");

  auto* reversible =
      app.add_subcommand("reversible", "is every member's negation expressible over the set?");
  std::string rev_instance;
  bool rev_witness = false;
  reversible->add_option("instance", rev_instance, "instance JSON file; \"x\" may be omitted")
      ->required();
  reversible->add_flag("--witness", rev_witness, "also produce per-member reversal witnesses");

  auto* hist = app.add_subcommand("hist", "histogram tools");
  hist->require_subcommand(1);
  auto* hist_decompose =
      hist->add_subcommand("decompose", "split a histogram into degree-many simple parts");
  std::string hist_path;
  hist_decompose->add_option("histogram", hist_path, "histogram JSON file")->required();

  auto* verify = app.add_subcommand("verify", "check a witness against an instance");
  std::string ver_instance, ver_witness;
  verify->add_option("instance", ver_instance, "instance JSON file")->required();
  verify->add_option("witness", ver_witness, "witness JSON file")->required();

  auto* updn = app.add_subcommand("updn", "unordered-data net tools");
  updn->require_subcommand(1);
  auto* updn_check =
      updn->add_subcommand("check", "state equation between two markings (YES is necessary "
                                    "for reachability)");
  std::string un_net, un_from, un_to;
  bool un_witness = false, un_fast = false;
  updn_check->add_option("net", un_net, "net description file")->required();
  updn_check->add_option("from", un_from, "source marking file")->required();
  updn_check->add_option("to", un_to, "target marking file")->required();
  updn_check->add_flag("--witness", un_witness, "also produce a verified witness");
  updn_check->add_flag("--fast", un_fast,
                       "use the subgroup route (requires reversible transition effects)");
  auto* updn_walk = updn->add_subcommand("walk", "seeded random firing sequence");
  std::string uw_net, uw_from;
  std::size_t uw_steps = 10;
  std::uint64_t uw_seed = 0;
  updn_walk->add_option("net", uw_net, "net description file")->required();
  updn_walk->add_option("from", uw_from, "start marking file")->required();
  updn_walk->add_option("--steps", uw_steps, "maximum steps (default 10)");
  updn_walk->add_option("--seed", uw_seed, "random seed (default 0)");

  auto* bca = app.add_subcommand("bca", "data blind counter automaton tools");
  bca->require_subcommand(1);
  auto* bca_reach = bca->add_subcommand("reach", "configuration reachability");
  std::string bc_aut, bc_from, bc_to;
  std::size_t bc_threads = 1;
  bca_reach->add_option("automaton", bc_aut, "automaton description file")->required();
  bca_reach->add_option("from", bc_from, "initial counters (vector JSON)")->required();
  bca_reach->add_option("to", bc_to, "final counters (vector JSON)")->required();
  bca_reach->add_option("--threads", bc_threads, "worker threads for the candidate systems");

  auto* oracle = app.add_subcommand(
      "oracle", "ground-truth expressibility by bounded exhaustive enumeration");
  std::string or_instance;
  std::size_t or_max_terms = 4, or_node_cap = 1000000;
  bool or_witness = false;
  oracle->add_option("instance", or_instance, "instance JSON file")->required();
  oracle->add_option("--max-terms", or_max_terms, "largest sum length tried (default 4)");
  oracle->add_option("--node-cap", or_node_cap, "enumeration node budget (default 1000000)");
  oracle->add_flag("--witness", or_witness, "also print the found witness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  Session session;
  try {
    if (expressible->parsed())
      return run_expressible(session, ex_instance, ex_witness, ex_fast, report);
    if (reversible->parsed()) return run_reversible(session, rev_instance, rev_witness, report);
    if (hist_decompose->parsed()) return run_hist_decompose(session, hist_path, report);
    if (verify->parsed()) return run_verify(session, ver_instance, ver_witness, report);
    if (updn_check->parsed())
      return run_updn_check(session, un_net, un_from, un_to, un_witness, un_fast, report);
    if (updn_walk->parsed())
      return run_updn_walk(session, uw_net, uw_from, uw_steps, uw_seed, report);
    if (bca_reach->parsed())
      return run_bca_reach(session, bc_aut, bc_from, bc_to, bc_threads, report);
    if (oracle->parsed())
      return run_oracle(session, or_instance, or_max_terms, or_node_cap, or_witness, report);
  } catch (const datavec::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  std::cerr << "error: no subcommand\n";
  return kError;
}
