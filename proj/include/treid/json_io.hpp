#ifndef TREID_JSON_IO_HPP
#define TREID_JSON_IO_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "treid/certificates.hpp"
#include "treid/errors.hpp"
#include "treid/perm.hpp"
#include "treid/portrait.hpp"
#include "treid/transitive_subgroups.hpp"
#include "treid/tree.hpp"
#include "treid/twisted.hpp"
#include "treid/witness.hpp"
#include "treid/wreath.hpp"

namespace treid {

using json = nlohmann::json;

inline json perm_to_json(const Perm& p) {
  json a = json::array();
  for (Point x : p.images()) a.push_back(x);
  return a;
}

inline Perm perm_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a one-line array");
  std::vector<Point> images;
  for (const auto& x : j) {
    if (!x.is_number_unsigned()) throw ParseError(where + ": non-integer entry");
    images.push_back(x.get<Point>());
  }
  try {
    return Perm(std::move(images));
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline json tree_to_json(const BranchingSequence& t) {
  return json{{"indices", t.indices()}, {"repeat_tail", t.repeat_tail()}};
}

inline BranchingSequence tree_from_json(const json& j) {
  if (!j.is_object() || !j.contains("indices"))
    throw ParseError("tree: expected {indices, repeat_tail}");
  std::vector<std::uint32_t> indices;
  for (const auto& x : j.at("indices")) indices.push_back(x.get<std::uint32_t>());
  bool tail = j.value("repeat_tail", true);
  try {
    return BranchingSequence(std::move(indices), tail);
  } catch (const Error& e) {
    throw ParseError(std::string("tree: ") + e.what());
  }
}

// {"depth": d, "labels": {"<dot-path>": [one-line perm]}}; omitted vertices
// default to identity labels; the root path is the empty string.  A "tree"
// field is written for standalone use and honored when no tree is supplied.
inline json portrait_to_json(const Portrait& p) {
  json labels = json::object();
  for (std::size_t level = 0; level < p.depth(); ++level)
    for (std::uint64_t u = 0; u < p.tree().level_size(level); ++u) {
      const Perm& lab = p.levels()[level][static_cast<std::size_t>(u)];
      if (!lab.is_identity())
        labels[vertex_at(p.tree(), level, u).to_string()] = perm_to_json(lab);
    }
  return json{{"depth", p.depth()},
              {"labels", std::move(labels)},
              {"tree", tree_to_json(p.tree())}};
}

inline Portrait portrait_from_json(const json& j,
                                   std::optional<BranchingSequence> tree = std::nullopt) {
  if (!j.is_object() || !j.contains("depth"))
    throw ParseError("portrait: expected {depth, labels}");
  if (!tree) {
    if (!j.contains("tree"))
      throw ParseError("portrait: no tree field and no tree from context");
    tree = tree_from_json(j.at("tree"));
  }
  std::size_t depth = j.at("depth").get<std::size_t>();
  Portrait p(*tree, depth);
  if (j.contains("labels")) {
    if (!j.at("labels").is_object()) throw ParseError("portrait.labels: expected object");
    for (const auto& [path, perm] : j.at("labels").items()) {
      Vertex v = Vertex::parse(path);
      try {
        p.set_label(v, perm_from_json(perm, "portrait.labels['" + path + "']"));
      } catch (const Error& e) {
        throw ParseError("portrait.labels['" + path + "']: " + e.what());
      }
    }
  }
  return p;
}

// {"alphabet": k, "states": {...}, "generators": [...], "extra_portraits": {...}};
// the identity state name "e" is reserved.
inline json group_to_json(const WreathRecursion& spec) {
  json states = json::object();
  for (const auto& [name, st] : spec.states())
    states[name] = json{{"perm", perm_to_json(st.root_perm)},
                        {"sections", st.sections}};
  json extras = json::object();
  for (const auto& [name, p] : spec.extra_portraits())
    extras[name] = portrait_to_json(p);
  json out{{"alphabet", spec.alphabet_size()},
           {"states", std::move(states)},
           {"generators", spec.generators()}};
  if (!spec.extra_portraits().empty()) out["extra_portraits"] = std::move(extras);
  return out;
}

inline WreathRecursion group_from_json(const json& j) {
  if (!j.is_object() || !j.contains("alphabet") || !j.contains("generators"))
    throw ParseError("group: expected {alphabet, states, generators}");
  std::uint32_t alphabet = j.at("alphabet").get<std::uint32_t>();
  std::map<std::string, AutomatonState> states;
  if (j.contains("states")) {
    for (const auto& [name, st] : j.at("states").items()) {
      if (!st.is_object() || !st.contains("perm") || !st.contains("sections"))
        throw ParseError("states." + name + ": expected {perm, sections}");
      AutomatonState state;
      state.root_perm = perm_from_json(st.at("perm"), "states." + name + ".perm");
      for (const auto& s : st.at("sections"))
        state.sections.push_back(s.get<std::string>());
      states.emplace(name, std::move(state));
    }
  }
  std::vector<std::string> generators;
  for (const auto& g : j.at("generators")) generators.push_back(g.get<std::string>());
  std::map<std::string, Portrait> extras;
  if (j.contains("extra_portraits")) {
    BranchingSequence tree = BranchingSequence::constant(alphabet);
    for (const auto& [name, p] : j.at("extra_portraits").items())
      extras.emplace(name, portrait_from_json(p, tree));
  }
  try {
    return WreathRecursion(alphabet, std::move(states), std::move(generators),
                           std::move(extras));
  } catch (const Error& e) {
    throw ParseError(std::string("group: ") + e.what());
  }
}

inline json vertex_to_json(const Vertex& v) { return v.to_string(); }

inline json obstruction_to_json(const Obstruction& o) {
  json data = json::object();
  switch (o.kind) {
    case ObstructionKind::cycle_type:
      data["gt_cycle_type"] = o.gt_cycle_type;
      data["t_cycle_type"] = o.t_cycle_type;
      break;
    case ObstructionKind::parity:
      data["gt_sign"] = o.gt_sign;
      data["t_sign"] = o.t_sign;
      break;
    case ObstructionKind::exhaustive:
      data["searched_order"] = o.searched_order;
      data["search_completed"] = o.search_completed;
      break;
  }
  return json{{"kind", to_string(o.kind)}, {"data", std::move(data)}};
}

inline Obstruction obstruction_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("data"))
    throw ParseError("obstruction: expected {kind, data}");
  Obstruction o;
  std::string kind = j.at("kind").get<std::string>();
  const json& data = j.at("data");
  if (kind == "cycle-type") {
    o.kind = ObstructionKind::cycle_type;
    for (const auto& x : data.at("gt_cycle_type"))
      o.gt_cycle_type.push_back(x.get<std::size_t>());
    for (const auto& x : data.at("t_cycle_type"))
      o.t_cycle_type.push_back(x.get<std::size_t>());
  } else if (kind == "parity") {
    o.kind = ObstructionKind::parity;
    o.gt_sign = data.at("gt_sign").get<int>();
    o.t_sign = data.at("t_sign").get<int>();
  } else if (kind == "exhaustive") {
    o.kind = ObstructionKind::exhaustive;
    o.searched_order = data.at("searched_order").get<std::uint64_t>();
    o.search_completed = data.at("search_completed").get<bool>();
  } else {
    throw ParseError("obstruction.kind: unknown kind '" + kind + "'");
  }
  return o;
}

inline json certificate_to_json(const SeparationCertificate& c) {
  json context = json::object();
  if (c.context.v0) context["v0"] = c.context.v0->to_string();
  if (c.context.v1) context["v1"] = c.context.v1->to_string();
  if (c.context.v) context["v"] = c.context.v->to_string();
  if (c.context.m) context["m"] = *c.context.m;
  if (c.context.n) context["n"] = *c.context.n;
  if (c.context.b) context["b"] = *c.context.b;
  if (!c.context.orbit_lengths.empty())
    context["orbit_lengths"] = c.context.orbit_lengths;
  return json{{"g_word", c.g_word.to_string()},
              {"j", c.j},
              {"i", c.i},
              {"obstruction", obstruction_to_json(c.obstruction)},
              {"context", std::move(context)},
              {"caveats", c.caveats},
              {"group", group_to_json(c.group)},
              {"t", portrait_to_json(c.t)}};
}

inline SeparationCertificate certificate_from_json(const json& j) {
  if (!j.is_object() || !j.contains("g_word") || !j.contains("group") ||
      !j.contains("t") || !j.contains("obstruction"))
    throw ParseError("certificate: expected {g_word, j, i, obstruction, group, t}");
  WreathRecursion group = group_from_json(j.at("group"));
  SeparationCertificate c{group, portrait_from_json(j.at("t"), group.tree()),
                          GroupWord::parse(j.at("g_word").get<std::string>())};
  c.j = j.at("j").get<std::size_t>();
  c.i = j.at("i").get<std::size_t>();
  c.obstruction = obstruction_from_json(j.at("obstruction"));
  if (j.contains("context")) {
    const json& ctx = j.at("context");
    if (ctx.contains("v0")) c.context.v0 = Vertex::parse(ctx.at("v0").get<std::string>());
    if (ctx.contains("v1")) c.context.v1 = Vertex::parse(ctx.at("v1").get<std::string>());
    if (ctx.contains("v")) c.context.v = Vertex::parse(ctx.at("v").get<std::string>());
    if (ctx.contains("m")) c.context.m = ctx.at("m").get<std::uint64_t>();
    if (ctx.contains("n")) c.context.n = ctx.at("n").get<std::uint64_t>();
    if (ctx.contains("b")) c.context.b = ctx.at("b").get<std::uint64_t>();
    if (ctx.contains("orbit_lengths"))
      for (const auto& x : ctx.at("orbit_lengths"))
        c.context.orbit_lengths.push_back(x.get<std::uint64_t>());
  }
  if (j.contains("caveats"))
    for (const auto& x : j.at("caveats")) c.caveats.push_back(x.get<std::string>());
  return c;
}

inline json chain_to_json(const ChainReport& r) {
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(certificate_to_json(c));
  json distinct{{"attempted", r.distinctness.attempted},
                {"verified", r.distinctness.verified},
                {"reid_count", r.distinctness.reid_count},
                {"representative_classes", r.distinctness.representative_classes},
                {"identity_class", r.distinctness.identity_class},
                {"note", r.distinctness.note}};
  return json{{"certificates", std::move(certs)},
              {"requested", r.requested},
              {"lower_bound", r.lower_bound},
              {"deepest_level", r.deepest_level},
              {"strategy", to_string(r.strategy_used)},
              {"distinctness_check", std::move(distinct)},
              {"proof", r.proof},
              {"note", r.note}};
}

struct ChainFile {
  std::vector<SeparationCertificate> certificates;
  std::size_t lower_bound = 0;
  std::size_t deepest_level = 0;
};

inline ChainFile chain_from_json(const json& j) {
  if (!j.is_object() || !j.contains("certificates"))
    throw ParseError("chain: expected {certificates, lower_bound, deepest_level}");
  ChainFile f;
  for (const auto& c : j.at("certificates"))
    f.certificates.push_back(certificate_from_json(c));
  f.lower_bound = j.value("lower_bound", std::size_t{0});
  f.deepest_level = j.value("deepest_level", std::size_t{0});
  return f;
}

inline json reid_series_to_json(const ReidSeries& s) {
  json rows = json::array();
  for (const auto& row : s.rows) {
    json reps = json::array();
    for (const auto& w : row.representatives) reps.push_back(w.to_string());
    rows.push_back(json{{"level", row.level},
                        {"group_order", row.group_order},
                        {"reid_count", row.reid_count},
                        {"fixed_count", row.fixed_count},
                        {"orb_count", row.orb_count},
                        {"representatives", std::move(reps)}});
  }
  json out{{"rows", std::move(rows)}, {"truncated", s.truncated}};
  if (s.truncated) out["truncation_note"] = s.truncation_note;
  return out;
}

inline json growth_to_json(const GrowthReport& g) {
  json out{{"orbit_counts", g.orbit_counts},
           {"verdict", g.verdict == GrowthVerdict::stabilized ? "stabilized" : "growing"},
           {"window", g.window},
           {"evidence_only", true}};
  if (g.verdict == GrowthVerdict::stabilized) {
    out["stable_count"] = g.stable_count;
    out["since_level"] = g.since_level;
  }
  return out;
}

inline json orbit_stats_to_json(const OrbitStats& s) {
  json fixed = json::array();
  for (const auto& v : s.fixed_vertices) fixed.push_back(v.to_string());
  return json{{"level", s.level},
              {"orbit_count", s.orbit_count},
              {"lengths", s.lengths},
              {"fixed_vertices", std::move(fixed)}};
}

inline json wst_to_json(const WstOutcome& o) {
  json out{{"status", o.status == WstStatus::found ? "found" : "not-found-within-depth"},
           {"searched_depth", o.searched_depth}};
  if (o.evidence) {
    out["v0"] = o.evidence->v0.to_string();
    out["quotient_level"] = o.evidence->quotient_level;
    out["child_orbit"] = o.evidence->child_orbit;
  }
  return out;
}

inline json prime_case_to_json(const PrimeCaseReport& r) {
  json out{{"level", r.level},
           {"prime", r.prime},
           {"quotient_order", r.quotient_order},
           {"fixed_count", r.fixed_count},
           {"orb_prev", r.orb_prev},
           {"fixed_lt_orb", r.fixed_lt_orb},
           {"v0_found", r.v0_found},
           {"classification", to_string(r.classification)}};
  if (r.v0_found) {
    out["v0"] = r.v0->to_string();
    out["orbit_len"] = r.orbit_len;
    out["factors_commute"] = r.factors_commute;
    out["gamma_order"] = r.gamma_order;
    out["gamma_phi_invariant"] = r.gamma_phi_invariant;
    out["gamma_fixed_point_free"] = r.gamma_fixed_point_free;
    out["gamma_solvable"] = r.gamma_solvable;
    out["gv0_transitive"] = r.gv0_transitive;
    out["gv0_abelian"] = r.gv0_abelian;
    out["gv0_has_odd"] = r.gv0_has_odd;
  }
  if (r.parity_certificate)
    out["parity_certificate"] = certificate_to_json(*r.parity_certificate);
  return out;
}

inline json transitive_table_to_json(const std::vector<TransitiveSubgroupClass>& table) {
  json rows = json::array();
  for (const auto& row : table) {
    json gens = json::array();
    for (const auto& g : row.generators) gens.push_back(perm_to_json(g));
    rows.push_back(json{{"order", row.order},
                        {"transitive", row.transitive},
                        {"solvable", row.solvable},
                        {"abelian", row.abelian},
                        {"contains_odd", row.contains_odd},
                        {"dichotomy_counterexample", row.dichotomy_counterexample},
                        {"generators", std::move(gens)}});
  }
  return rows;
}

}  // namespace treid

#endif  // TREID_JSON_IO_HPP
