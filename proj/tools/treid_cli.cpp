// treid: level quotients, twisted conjugacy classes, and separation
// certificates for groups acting on spherically symmetric rooted trees.
//
// JSON is the machine format; text output is derived from it.  Identical
// inputs produce byte-identical JSON bodies; the timestamp lives in the
// envelope only.  No environment variables are consulted.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "treid/treid.hpp"

namespace {

using treid::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotFound = 2;

std::string timestamp_utc() {
  auto now = std::chrono::system_clock::now();
  std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
  return buf;
}

void emit(const json& body, bool as_json, const std::string& text) {
  if (as_json) {
    json report{{"body", body},
                {"envelope", {{"generated_at", timestamp_utc()},
                              {"tool", "treid"},
                              {"version", "0.1.0"}}}};
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw treid::ParseError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw treid::ParseError("'" + path + "': " + e.what());
  }
  return j;
}

treid::WreathRecursion load_group(const std::string& source) {
  if (std::filesystem::exists(source))
    return treid::group_from_json(load_json_file(source));
  return treid::builtin_group(source);
}

// --aut accepts: "identity", "odometer" (binary trees), a portrait JSON
// file, or an inner word over the declared generators.
treid::Portrait load_aut(const treid::WreathRecursion& spec, const std::string& source,
                         std::size_t depth) {
  if (source.empty() || source == "identity")
    return treid::Portrait::identity(spec.tree(), depth);
  if (source == "odometer") {
    if (spec.alphabet_size() != 2)
      throw treid::Error("the odometer lives on the binary tree");
    return treid::binary_odometer(depth);
  }
  if (std::filesystem::exists(source)) {
    treid::Portrait p = treid::portrait_from_json(load_json_file(source), spec.tree());
    return p.depth() >= depth ? p : treid::extended(p, depth);
  }
  return treid::portrait_of_word(spec, treid::GroupWord::parse(source), depth);
}

struct CommonOpts {
  std::string group;
  std::string aut = "identity";
  std::size_t depth = 4;
  std::size_t cap = 2000000;
  bool as_json = false;
};

int cmd_info(const CommonOpts& opt) {
  treid::WreathRecursion spec = load_group(opt.group);
  json body;
  body["alphabet"] = spec.alphabet_size();
  body["generators"] = spec.generators();
  json states = json::array();
  for (const auto& [name, st] : spec.states()) states.push_back(name);
  body["states"] = std::move(states);
  body["portrait_generators"] = spec.extra_portraits().size();
  json levels = json::array();
  for (std::size_t n = 1; n <= opt.depth; ++n)
    levels.push_back(json{{"level", n},
                          {"size", spec.tree().level_size(n)},
                          {"level_transitive", treid::is_level_transitive(spec, n, opt.cap)}});
  body["levels"] = std::move(levels);
  std::ostringstream text;
  text << "alphabet " << spec.alphabet_size() << ", " << spec.generators().size()
       << " generators (" << spec.states().size() << " automaton states, "
       << spec.extra_portraits().size() << " portrait generators)\n";
  for (const auto& row : body["levels"])
    text << "  level " << row["level"] << ": " << row["size"] << " vertices"
         << (row["level_transitive"].get<bool>() ? ", transitive" : ", NOT transitive")
         << "\n";
  emit(body, opt.as_json, text.str());
  return kExitOk;
}

int cmd_orbits(const CommonOpts& opt, std::size_t window) {
  treid::WreathRecursion spec = load_group(opt.group);
  treid::Portrait t = load_aut(spec, opt.aut, opt.depth);
  json body;
  json rows = json::array();
  for (std::size_t n = 1; n <= opt.depth; ++n)
    rows.push_back(treid::orbit_stats_to_json(treid::orbit_stats(t, n)));
  body["orbits"] = std::move(rows);
  body["growth"] = treid::growth_to_json(treid::classify_orbit_growth(t, opt.depth, window));
  body["level_orders"] = json::array();
  for (std::size_t n = 1; n <= opt.depth; ++n)
    body["level_orders"].push_back(treid::level_order(t, n));
  std::ostringstream text;
  for (const auto& row : body["orbits"])
    text << "level " << row["level"] << ": " << row["orbit_count"] << " orbits, lengths "
         << row["lengths"].dump() << ", " << row["fixed_vertices"].size() << " fixed\n";
  text << "growth verdict: " << body["growth"]["verdict"].get<std::string>();
  if (body["growth"].contains("since_level"))
    text << " (M=" << body["growth"]["stable_count"] << " since level "
         << body["growth"]["since_level"] << ")";
  text << " [finite-depth evidence]\n";
  emit(body, opt.as_json, text.str());
  return kExitOk;
}

int cmd_quotient(const CommonOpts& opt) {
  treid::WreathRecursion spec = load_group(opt.group);
  json rows = json::array();
  std::ostringstream text;
  for (std::size_t n = 1; n <= opt.depth; ++n) {
    treid::LevelQuotient q = treid::level_quotient(spec, n, opt.cap);
    rows.push_back(json{{"level", n},
                        {"order", q.group().order()},
                        {"degree", q.group().degree()},
                        {"transitive", treid::is_transitive(q.group())}});
    text << "level " << n << ": order " << q.group().order() << " on "
         << q.group().degree() << " vertices\n";
  }
  emit(json{{"quotients", std::move(rows)}}, opt.as_json, text.str());
  return kExitOk;
}

int cmd_reid(const CommonOpts& opt, std::size_t max_n) {
  treid::WreathRecursion spec = load_group(opt.group);
  treid::Portrait t = load_aut(spec, opt.aut, max_n);
  treid::ReidSeries series = treid::reid_series(spec, t, max_n, opt.cap);
  json body = treid::reid_series_to_json(series);
  std::ostringstream text;
  for (const auto& row : series.rows)
    text << "level " << row.level << ": |Q| = " << row.group_order << ", R = "
         << row.reid_count << ", fixed = " << row.fixed_count << ", orbits = "
         << row.orb_count << "\n";
  if (series.truncated) text << series.truncation_note << "\n";
  emit(body, opt.as_json, text.str());
  return kExitOk;
}

int cmd_wst(const CommonOpts& opt, const std::string& vertex) {
  treid::WreathRecursion spec = load_group(opt.group);
  treid::WstOutcome outcome =
      treid::wst_check(spec, treid::Vertex::parse(vertex), opt.depth, opt.cap);
  json body = treid::wst_to_json(outcome);
  std::ostringstream text;
  if (outcome.status == treid::WstStatus::found)
    text << "found v0 = '" << outcome.evidence->v0.to_string() << "' (quotient level "
         << outcome.evidence->quotient_level << ", child orbit size "
         << outcome.evidence->child_orbit.size() << ")\n";
  else
    text << "not found within depth " << opt.depth << " (not a refutation)\n";
  emit(body, opt.as_json, text.str());
  return outcome.status == treid::WstStatus::found ? kExitOk : kExitNotFound;
}

int cmd_witness(const CommonOpts& opt, const std::string& kind, std::size_t j) {
  treid::WreathRecursion spec = load_group(opt.group);
  if (kind == "parity") {
    treid::ParitySearchResult r = treid::parity_witness(spec, j, opt.depth, opt.cap);
    if (r.status != treid::WitnessStatus::found) {
      emit(json{{"status", "not-found"}, {"note", r.note}}, opt.as_json,
           "not found: " + r.note + "\n");
      return kExitNotFound;
    }
    if (opt.aut.empty()) {
      json body{{"status", "found"},
                {"g_word", r.witness->g_word.to_string()},
                {"j", r.witness->j},
                {"j0", r.witness->j0}};
      emit(body, opt.as_json,
           "odd element " + r.witness->g_word.to_string() + " in the St_" +
               std::to_string(j) + " shadow at level " + std::to_string(r.witness->j0) +
               " (supply --aut to stamp a certificate)\n");
      return kExitOk;
    }
    treid::Portrait t = load_aut(spec, opt.aut, std::max(opt.depth, r.witness->j0));
    treid::SeparationCertificate cert = r.witness->make_certificate(t);
    emit(treid::certificate_to_json(cert), opt.as_json,
         "parity certificate: g = " + cert.g_word.to_string() + ", j = " +
             std::to_string(cert.j) + ", i = " + std::to_string(cert.i) + "\n");
    return kExitOk;
  }
  treid::Portrait t = load_aut(spec, opt.aut, opt.depth);
  treid::WitnessResult r =
      kind == "finite-order"
          ? treid::finite_order_witness(spec, t, j, opt.depth, opt.cap)
          : treid::bounded_orbit_witness(spec, t, j, opt.depth, opt.cap);
  if (r.status != treid::WitnessStatus::found) {
    emit(json{{"status", "not-found"}, {"note", r.note}}, opt.as_json,
         "not found: " + r.note + "\n");
    return kExitNotFound;
  }
  const treid::SeparationCertificate& c = *r.certificate;
  emit(treid::certificate_to_json(c), opt.as_json,
       std::string(treid::to_string(c.obstruction.kind)) + " certificate: g = " +
           c.g_word.to_string() + ", j = " + std::to_string(c.j) + ", i = " +
           std::to_string(c.i) + "\n");
  return kExitOk;
}

int cmd_chain(const CommonOpts& opt, std::size_t n_certs, const std::string& strategy) {
  treid::WreathRecursion spec = load_group(opt.group);
  treid::Portrait t = load_aut(spec, opt.aut, opt.depth);
  treid::ChainStrategy s = treid::ChainStrategy::automatic;
  if (strategy == "finite-order") s = treid::ChainStrategy::finite_order;
  else if (strategy == "bounded-orbit") s = treid::ChainStrategy::bounded_orbit;
  else if (strategy == "parity") s = treid::ChainStrategy::parity;
  else if (strategy != "auto") throw treid::Error("unknown strategy '" + strategy + "'");
  treid::ChainReport report =
      treid::chain_builder(spec, t, n_certs, s, opt.depth, opt.cap);
  std::ostringstream text;
  text << report.certificates.size() << "/" << n_certs << " certificates ("
       << treid::to_string(report.strategy_used) << "), lower bound R >= "
       << report.lower_bound << " at level " << report.deepest_level << "\n";
  for (const auto& c : report.certificates)
    text << "  g = " << c.g_word.to_string() << ", j = " << c.j << ", i = " << c.i
         << " (" << treid::to_string(c.obstruction.kind) << ")\n";
  if (report.distinctness.attempted)
    text << "distinctness cross-check: "
         << (report.distinctness.verified ? "verified" : "FAILED") << " against "
         << report.distinctness.reid_count << " classes\n";
  if (!report.note.empty()) text << report.note << "\n";
  emit(treid::chain_to_json(report), opt.as_json, text.str());
  return report.certificates.size() == n_certs ? kExitOk : kExitNotFound;
}

int cmd_galois(unsigned p, std::size_t cap, bool as_json) {
  auto table = treid::solvable_transitive_analysis(p, cap);
  json body;
  body["p"] = p;
  body["classes"] = treid::transitive_table_to_json(table);
  json flagged = json::array();
  for (const auto& row : table)
    if (row.dichotomy_counterexample) flagged.push_back(row.order);
  if (!flagged.empty())
    body["dichotomy_note"] =
        "orders " + flagged.dump() + ": solvable transitive non-abelian subgroups "
        "with all elements even; these fall outside the Z_p / Z_p:Z_{p-1} "
        "dichotomy (which only covers point stabilizers of full order p-1)";
  body["flagged_orders"] = std::move(flagged);
  std::ostringstream text;
  text << "transitive subgroups of S_" << p << " up to conjugacy:\n";
  for (const auto& row : table)
    text << "  order " << row.order << (row.solvable ? ", solvable" : "")
         << (row.abelian ? ", abelian" : "") << (row.contains_odd ? ", has odd" : "")
         << (row.dichotomy_counterexample ? "  <-- outside the expected dichotomy" : "")
         << "\n";
  if (body.contains("dichotomy_note"))
    text << body["dichotomy_note"].get<std::string>() << "\n";
  emit(body, as_json, text.str());
  return kExitOk;
}

int cmd_certify(const std::string& path, std::size_t cap, bool as_json) {
  json j = load_json_file(path);
  if (j.contains("body")) j = j.at("body");  // unwrap an enveloped report
  std::vector<treid::SeparationCertificate> certs;
  std::size_t claimed_bound = 0;
  bool is_chain = j.contains("certificates");
  if (is_chain) {
    treid::ChainFile f = treid::chain_from_json(j);
    certs = std::move(f.certificates);
    claimed_bound = f.lower_bound;
  } else {
    certs.push_back(treid::certificate_from_json(j));
  }
  json results = json::array();
  bool all_ok = true;
  std::ostringstream text;
  for (std::size_t k = 0; k < certs.size(); ++k) {
    treid::CheckResult res = treid::check_certificate(certs[k], cap);
    if (is_chain && k > 0 && certs[k].j < certs[k - 1].i) {
      res.ok = false;
      res.failure = "chain levels not ordered: j_" + std::to_string(k + 1) +
                    " < i_" + std::to_string(k);
    }
    all_ok = all_ok && res.ok;
    results.push_back(json{{"index", k}, {"ok", res.ok}, {"failure", res.failure}});
    text << "certificate " << k + 1 << "/" << certs.size() << ": "
         << (res.ok ? "PASS" : "FAIL " + res.failure) << "\n";
  }
  if (is_chain && claimed_bound > certs.size() + 1) {
    all_ok = false;
    results.push_back(json{{"index", nullptr},
                           {"ok", false},
                           {"failure", "claimed lower bound exceeds certificate count + 1"}});
    text << "FAIL claimed lower bound exceeds certificate count + 1\n";
  }
  emit(json{{"verified", all_ok}, {"results", std::move(results)}}, as_json, text.str());
  return all_ok ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"level quotients, twisted conjugacy classes, and separation "
               "certificates for tree groups"};
  app.require_subcommand(1);

  CommonOpts opt;
  std::size_t max_n = 3, n_certs = 3, window = 3, j_level = 1;
  unsigned prime = 3;
  bool allow_big = false;
  std::string vertex, kind = "finite-order", strategy = "auto", cert_path;

  auto add_common = [&](CLI::App* sub, bool with_aut) {
    sub->add_option("--group", opt.group, "builtin name or group spec JSON file")
        ->required();
    if (with_aut)
      sub->add_option("--aut", opt.aut,
                      "inner word | portrait JSON file | identity | odometer");
    sub->add_option("--depth", opt.depth, "depth / level budget");
    sub->add_option("--cap", opt.cap, "enumeration cap");
    sub->add_flag("--json", opt.as_json, "emit the JSON report");
  };

  CLI::App* info = app.add_subcommand("info", "tree and generator summary");
  add_common(info, false);

  CLI::App* orbits = app.add_subcommand("orbits", "orbit statistics and growth verdict");
  add_common(orbits, true);
  orbits->add_option("--window", window, "plateau length for the stabilization verdict");

  CLI::App* quotient = app.add_subcommand("quotient", "level quotient orders");
  add_common(quotient, false);

  CLI::App* reid = app.add_subcommand("reid", "Reidemeister class series");
  add_common(reid, true);
  reid->add_option("--max-n", max_n, "deepest level of the series");

  CLI::App* wst = app.add_subcommand("wst", "search for a stabilizer-transitive vertex");
  add_common(wst, false);
  wst->add_option("--vertex", vertex, "start vertex as a dot path (default: root)");

  CLI::App* witness = app.add_subcommand("witness", "separation witness search");
  add_common(witness, true);
  witness->add_option("--kind", kind, "finite-order | bounded-orbit | parity")
      ->check(CLI::IsMember({"finite-order", "bounded-orbit", "parity"}));
  witness->add_option("--j", j_level, "stabilizer level j");

  CLI::App* chain = app.add_subcommand("chain", "chain of separation certificates");
  add_common(chain, true);
  chain->add_option("--max-n", n_certs, "number of certificates");
  chain->add_option("--strategy", strategy, "auto | finite-order | bounded-orbit | parity");

  CLI::App* galois = app.add_subcommand("galois", "transitive subgroups of S_p");
  galois->add_option("-p", prime, "prime degree")->required();
  galois->add_option("--cap", opt.cap, "enumeration cap");
  galois->add_flag("--json", opt.as_json, "emit the JSON report");
  galois->add_flag("--allow-big", allow_big, "allow p = 11 (heavy)");

  CLI::App* certify = app.add_subcommand("certify", "re-verify a certificate file");
  certify->add_option("file", cert_path, "certificate or chain JSON file")->required();
  certify->add_option("--cap", opt.cap, "enumeration cap");
  certify->add_flag("--json", opt.as_json, "emit the JSON report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (info->parsed()) return cmd_info(opt);
    if (orbits->parsed()) return cmd_orbits(opt, window);
    if (quotient->parsed()) return cmd_quotient(opt);
    if (reid->parsed()) return cmd_reid(opt, max_n);
    if (wst->parsed()) return cmd_wst(opt, vertex);
    if (witness->parsed()) return cmd_witness(opt, kind, j_level);
    if (chain->parsed()) return cmd_chain(opt, n_certs, strategy);
    if (galois->parsed()) {
      if (prime > 7 && !allow_big)
        throw treid::PreconditionError("p > 7 needs --allow-big (and a large cap)");
      return cmd_galois(prime, opt.cap, opt.as_json);
    }
    if (certify->parsed()) return cmd_certify(cert_path, opt.cap, opt.as_json);
  } catch (const treid::CapExceededError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitError;
  } catch (const treid::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitError;
  } catch (const treid::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
