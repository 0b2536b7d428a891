#include "amcheck/report_json.hpp"

#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "amcheck/errors.hpp"

namespace amc {
namespace {

using njson = nlohmann::ordered_json;

njson subgroup_block(const PermGroup& G, int class_id, long long order,
                     const std::vector<int>& gens) {
  njson j;
  j["class_id"] = class_id;
  j["order"] = order;
  njson arr = njson::array();
  for (int g : gens) arr.push_back(G.element(g).to_cycles());
  j["generators"] = std::move(arr);
  return j;
}

// ---- schema access helpers (violations are InputError) ----------------

const njson& member(const njson& obj, const char* key, const char* where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InputError(std::string("report schema mismatch: missing field '") +
                     key + "' in " + where);
  }
  return obj.at(key);
}

long long int_member(const njson& obj, const char* key, const char* where) {
  const njson& v = member(obj, key, where);
  if (!v.is_number_integer()) {
    throw InputError(std::string("report schema mismatch: field '") + key +
                     "' in " + where + " must be an integer");
  }
  return v.get<long long>();
}

std::string string_member(const njson& obj, const char* key,
                          const char* where) {
  const njson& v = member(obj, key, where);
  if (!v.is_string()) {
    throw InputError(std::string("report schema mismatch: field '") + key +
                     "' in " + where + " must be a string");
  }
  return v.get<std::string>();
}

const njson& object_member(const njson& obj, const char* key,
                           const char* where) {
  const njson& v = member(obj, key, where);
  if (!v.is_object()) {
    throw InputError(std::string("report schema mismatch: field '") + key +
                     "' in " + where + " must be an object");
  }
  return v;
}

std::array<long long, 2> pair_member(const njson& obj, const char* key,
                                     const char* where) {
  const njson& v = member(obj, key, where);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
      !v[1].is_number_integer()) {
    throw InputError(std::string("report schema mismatch: field '") + key +
                     "' in " + where + " must be an array of two integers");
  }
  return {v[0].get<long long>(), v[1].get<long long>()};
}

// ---- certification state ----------------------------------------------

// Everything rebuilt about one subgroup named by a certificate, cached so
// repeated witnesses from the same subgroup are revalidated cheaply.  The
// struct lives on the heap behind a unique_ptr: the character table holds
// a pointer back to the group, so the address must stay put.
struct RebuiltSubgroup {
  explicit RebuiltSubgroup(PermGroup g) : grp(std::move(g)) {}
  PermGroup grp;
  bool has_linears = false;
  std::vector<std::vector<uint32_t>> linears;
  bool has_table = false;
  CharacterTable table;
  int normality = -1;     // -1 unknown, else 0/1
  int subnormality = -1;  // -1 unknown, else 0/1
};

struct Certifier {
  AnalysisSession* s = nullptr;
  std::unordered_map<ElementSet, std::unique_ptr<RebuiltSubgroup>,
                     ElementSetHash>
      cache;
  std::string why;  // first failure, set by the fail() helper

  bool fail(const std::string& reason) {
    if (why.empty()) why = reason;
    return false;
  }

  // Closes the stated generators and checks the stated order and class id
  // against the rebuilt subgroup.  Returns nullptr after fail() when any
  // claim does not hold up.
  RebuiltSubgroup* rebuild(const njson& block, const std::string& where) {
    const PermGroup& G = *s->group;
    long long class_id = int_member(block, "class_id", where.c_str());
    long long order = int_member(block, "order", where.c_str());
    const njson& gens = member(block, "generators", where.c_str());
    if (!gens.is_array()) {
      throw InputError("report schema mismatch: field 'generators' in " +
                       where + " must be an array of strings");
    }
    std::vector<int> idxs;
    for (const njson& g : gens) {
      if (!g.is_string()) {
        throw InputError("report schema mismatch: field 'generators' in " +
                         where + " must be an array of strings");
      }
      const std::string text = g.get<std::string>();
      Permutation p;
      try {
        p = Permutation::from_cycles(text, G.degree());
      } catch (const InputError& e) {
        fail(where + ": generator \"" + text + "\" does not parse: " +
             e.what());
        return nullptr;
      }
      int idx = G.index_of(p);
      if (idx < 0) {
        fail(where + ": generator \"" + text +
             "\" is not an element of the group");
        return nullptr;
      }
      idxs.push_back(idx);
    }
    ElementSet elems = closure_from(G, idxs);
    if (elems.count() != order) {
      fail(where + ": stated order " + std::to_string(order) +
           " but the generators close into a subgroup of order " +
           std::to_string(elems.count()));
      return nullptr;
    }
    if (class_id < 0 || class_id >= s->lattice.class_count()) {
      fail(where + ": subgroup class id " + std::to_string(class_id) +
           " is out of range");
      return nullptr;
    }
    int ri = s->lattice.find(elems);
    if (ri < 0) {
      throw InternalError("a closed subgroup is missing from the lattice");
    }
    int actual = s->lattice.records[ri].class_id;
    if (actual != class_id) {
      fail(where + ": the generators produce subgroup class " +
           std::to_string(actual) + ", not the stated class " +
           std::to_string(class_id));
      return nullptr;
    }
    auto it = cache.find(elems);
    if (it == cache.end()) {
      auto sub = std::make_unique<RebuiltSubgroup>(
          subgroup_from_elements(G, elems));
      it = cache.emplace(std::move(elems), std::move(sub)).first;
    }
    return it->second.get();
  }

  const std::vector<std::vector<uint32_t>>& linears_of(RebuiltSubgroup& h) {
    if (!h.has_linears) {
      h.linears = linear_characters(h.grp, s->ctx);
      h.has_linears = true;
    }
    return h.linears;
  }

  const CharacterTable& table_of(RebuiltSubgroup& h) {
    if (!h.has_table) {
      h.table = character_table(h.grp, s->ctx);
      h.has_table = true;
    }
    return h.table;
  }

  bool is_normal_sub(const ElementSet& elems, RebuiltSubgroup& h) {
    if (h.normality < 0) h.normality = is_normal(*s->group, elems) ? 1 : 0;
    return h.normality == 1;
  }

  bool is_subnormal_sub(const ElementSet& elems, RebuiltSubgroup& h) {
    if (h.subnormality < 0) {
      h.subnormality = is_subnormal(*s->group, elems) ? 1 : 0;
    }
    return h.subnormality == 1;
  }
};

}  // namespace

std::string report_to_json(AnalysisSession& s, const std::string& spec,
                           const PropertyReport& rep,
                           const ElementSet* normal_subgroup) {
  const PermGroup& G = *s.group;
  njson root;
  njson grp;
  grp["spec"] = spec;
  grp["order"] = G.order();
  grp["degree"] = G.degree();
  grp["num_irreducibles"] = s.table.rows();
  root["group"] = std::move(grp);
  root["property"] = rep.property;
  if (normal_subgroup != nullptr) {
    int ri = s.lattice.find(*normal_subgroup);
    if (ri < 0) {
      throw InternalError("the normal subgroup is missing from the lattice");
    }
    const SubgroupRecord& rec = s.lattice.records[ri];
    root["normal_subgroup"] =
        subgroup_block(G, rec.class_id, rec.order, rec.gens);
  } else {
    root["normal_subgroup"] = nullptr;
  }
  root["verdict"] = rep.verdict;
  njson certs = njson::array();
  if (rep.verdict) {
    for (const WitnessCertificate& c : rep.certificates) {
      njson jc;
      jc["pair"] = njson::array({c.pair[0], c.pair[1]});
      jc["subgroup"] =
          subgroup_block(G, c.subgroup_class, c.subgroup_order,
                         c.subgroup_gens);
      njson ch;
      ch["kind"] = c.linear_kind ? "linear" : "irreducible";
      ch["index"] = c.char_index;
      jc["character"] = std::move(ch);
      certs.push_back(std::move(jc));
    }
  }
  root["certificates"] = std::move(certs);
  if (rep.has_uncovered) {
    root["uncovered_pair"] =
        njson::array({rep.uncovered_pair[0], rep.uncovered_pair[1]});
  } else {
    root["uncovered_pair"] = nullptr;
  }
  njson st;
  st["candidates"] = rep.candidates;
  st["inductions"] = rep.inductions;
  st["millis"] = static_cast<long long>(std::llround(rep.millis));
  root["stats"] = std::move(st);
  return root.dump(2) + "\n";
}

CertifyResult certify_report(const PermGroup& G, const std::string& json_text,
                             AnalysisOptions opt) {
  njson root;
  try {
    root = njson::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("report is not valid JSON: ") + e.what());
  }

  // ---- schema and group identity (violations are errors) --------------
  const njson& grp = object_member(root, "group", "report");
  string_member(grp, "spec", "group");
  long long order = int_member(grp, "order", "group");
  long long degree = int_member(grp, "degree", "group");
  long long nirr = int_member(grp, "num_irreducibles", "group");

  std::string property = string_member(root, "property", "report");
  bool row_property =
      property == "monomial" || property == "quasi_monomial";
  bool relative = property == "relative_am";
  if (!row_property && !relative && property != "am" && property != "nam" &&
      property != "sam") {
    throw InputError("report schema mismatch: unknown property '" + property +
                     "'");
  }

  const njson& verdict_node = member(root, "verdict", "report");
  if (!verdict_node.is_boolean()) {
    throw InputError(
        "report schema mismatch: field 'verdict' must be a boolean");
  }
  bool verdict = verdict_node.get<bool>();

  const njson& certs = member(root, "certificates", "report");
  if (!certs.is_array()) {
    throw InputError(
        "report schema mismatch: field 'certificates' must be an array");
  }

  const njson& uncovered = member(root, "uncovered_pair", "report");
  if (verdict && !uncovered.is_null()) {
    throw InputError(
        "report schema mismatch: uncovered_pair must be null when the "
        "verdict is true");
  }
  if (!verdict && uncovered.is_null()) {
    throw InputError(
        "report schema mismatch: a false verdict requires an uncovered_pair");
  }

  const njson& stats = object_member(root, "stats", "report");
  int_member(stats, "candidates", "stats");
  int_member(stats, "inductions", "stats");
  int_member(stats, "millis", "stats");

  if (order != G.order() || degree != G.degree()) {
    throw InputError("report group mismatch: the report describes a group of "
                     "order " + std::to_string(order) + " on " +
                     std::to_string(degree) + " points, but the given group "
                     "has order " + std::to_string(G.order()) + " on " +
                     std::to_string(G.degree()) + " points");
  }

  AnalysisSession session = make_session(G, opt);
  Certifier cert;
  cert.s = &session;
  const int r = session.table.rows();
  if (nirr != r) {
    throw InputError("report group mismatch: the report states " +
                     std::to_string(nirr) + " irreducible characters, the "
                     "given group has " + std::to_string(r));
  }

  const njson& nsub_node = member(root, "normal_subgroup", "report");
  if (relative && !nsub_node.is_object()) {
    throw InputError("report schema mismatch: a relative report requires a "
                     "normal_subgroup object");
  }
  if (!relative && !nsub_node.is_null()) {
    throw InputError("report schema mismatch: normal_subgroup must be null "
                     "unless the property is relative_am");
  }

  // ---- revalidation (failures return ok = false) ----------------------
  ElementSet nset;
  std::unique_ptr<PermGroup> nsub;
  if (relative) {
    RebuiltSubgroup* nh = cert.rebuild(nsub_node, "normal_subgroup");
    if (nh == nullptr) return {false, cert.why};
    nset = ElementSet(static_cast<int>(G.order()));
    for (int i : nh->grp.parent_index()) nset.set(i);
    if (!is_normal(G, nset)) {
      return {false, "normal_subgroup: the stated subgroup is not normal"};
    }
    nsub = std::make_unique<PermGroup>(subgroup_from_elements(G, nset));
  }

  // covered[j*r + k] for pair properties; covered[j] for row properties.
  std::vector<char> covered(row_property ? r : r * r, 0);

  for (size_t ci = 0; ci < certs.size(); ++ci) {
    const std::string where = "certificate " + std::to_string(ci);
    const njson& c = certs[ci];
    if (!c.is_object()) {
      throw InputError("report schema mismatch: " + where +
                       " must be an object");
    }
    std::array<long long, 2> pr = pair_member(c, "pair", where.c_str());
    const njson& sub_node = object_member(c, "subgroup", where.c_str());
    const njson& ch_node = object_member(c, "character", where.c_str());
    std::string kind = string_member(ch_node, "kind", where.c_str());
    if (kind != "linear" && kind != "irreducible") {
      throw InputError("report schema mismatch: " + where +
                       ": character kind must be \"linear\" or "
                       "\"irreducible\"");
    }
    long long index = int_member(ch_node, "index", where.c_str());

    long long j = pr[0], k = pr[1];
    if (j < 0 || j >= r || k < 0 || k >= r) {
      return {false, where + ": row pair (" + std::to_string(j) + ", " +
                         std::to_string(k) + ") is out of range"};
    }
    if (row_property && j != k) {
      return {false, where + ": a per-character witness must pair a row "
                         "with itself"};
    }
    if (!row_property && j == k) {
      return {false, where + ": a separating witness needs two distinct "
                         "rows"};
    }
    if (!relative && kind != "linear") {
      return {false, where + ": the property requires a linear character, "
                         "got kind \"" + kind + "\""};
    }
    if (relative && kind != "irreducible") {
      return {false, where + ": a relative witness names a full "
                         "irreducible character, got kind \"" + kind +
                         "\""};
    }

    RebuiltSubgroup* h = cert.rebuild(sub_node, where);
    if (h == nullptr) return {false, cert.why};
    ElementSet helems(static_cast<int>(G.order()));
    for (int i : h->grp.parent_index()) helems.set(i);

    if (property == "nam" && !cert.is_normal_sub(helems, *h)) {
      return {false, where + ": the inducing subgroup is not normal"};
    }
    if (property == "sam" && !cert.is_subnormal_sub(helems, *h)) {
      return {false, where + ": the inducing subgroup is not subnormal"};
    }
    if (relative && !nset.is_subset_of(helems)) {
      return {false, where + ": the inducing subgroup does not contain the "
                         "normal subgroup"};
    }

    std::vector<uint32_t> theta;
    if (kind == "linear") {
      const auto& lins = cert.linears_of(*h);
      if (index < 0 || index >= static_cast<long long>(lins.size())) {
        return {false, where + ": linear character index " +
                           std::to_string(index) + " is out of range (the "
                           "subgroup has " + std::to_string(lins.size()) +
                           " linear characters)"};
      }
      theta = lins[static_cast<size_t>(index)];
    } else {
      const CharacterTable& ht = cert.table_of(*h);
      if (index < 0 || index >= ht.rows()) {
        return {false, where + ": character index " + std::to_string(index) +
                           " is out of range (the subgroup has " +
                           std::to_string(ht.rows()) + " irreducible "
                           "characters)"};
      }
      theta = ht.values[static_cast<size_t>(index)];
    }

    if (relative) {
      std::vector<uint32_t> restricted = restrict_to(h->grp, *nsub, theta);
      if (scalar_product(*nsub, session.ctx, restricted, restricted) != 1) {
        return {false, where + ": the witness character does not restrict "
                           "irreducibly to the normal subgroup"};
      }
    }

    // The independent oracle: induce with the literal averaging formula,
    // never through the fusion fast path the engine used.
    std::vector<uint32_t> induced =
        induce_naive(G, h->grp, session.ctx, theta);

    if (property == "monomial") {
      if (induced != session.table.values[static_cast<size_t>(j)]) {
        return {false, where + ": the induced character is not equal to "
                           "row " + std::to_string(j)};
      }
      covered[static_cast<size_t>(j)] = 1;
    } else if (property == "quasi_monomial") {
      uint64_t mask = constituent_mask(session.table, induced);
      if (mask != (uint64_t(1) << j)) {
        return {false, where + ": row " + std::to_string(j) + " is not the "
                           "sole constituent of the induced character"};
      }
      covered[static_cast<size_t>(j)] = 1;
    } else {
      uint64_t mask = constituent_mask(session.table, induced);
      if (((mask >> j) & 1) == 0) {
        return {false, where + ": the induced character does not contain "
                           "row " + std::to_string(j)};
      }
      if (((mask >> k) & 1) != 0) {
        return {false, where + ": the induced character contains row " +
                           std::to_string(k) + ", which it must avoid"};
      }
      covered[static_cast<size_t>(j * r + k)] = 1;
    }
  }

  // ---- coverage and verdict consistency --------------------------------
  int miss_j = -1, miss_k = -1;
  if (row_property) {
    for (int j = 0; j < r && miss_j < 0; ++j) {
      if (!covered[static_cast<size_t>(j)]) miss_j = miss_k = j;
    }
  } else {
    for (int j = 0; j < r && miss_j < 0; ++j) {
      for (int k = 0; k < r; ++k) {
        if (j != k && !covered[static_cast<size_t>(j * r + k)]) {
          miss_j = j;
          miss_k = k;
          break;
        }
      }
    }
  }
  bool complete = miss_j < 0;

  if (verdict) {
    if (!complete) {
      return {false, row_property
                         ? "incomplete coverage: no certificate witnesses "
                           "row " + std::to_string(miss_j)
                         : "incomplete coverage: no certificate covers pair "
                           "(" + std::to_string(miss_j) + ", " +
                           std::to_string(miss_k) + ")"};
    }
    return {true, ""};
  }

  if (complete) {
    return {false, "the certificates prove the property, but the verdict "
                   "claims false"};
  }
  std::array<long long, 2> up = pair_member(root, "uncovered_pair", "report");
  long long uj = up[0], uk = up[1];
  if (uj < 0 || uj >= r || uk < 0 || uk >= r ||
      (row_property && uj != uk) || (!row_property && uj == uk)) {
    return {false, "the claimed uncovered pair (" + std::to_string(uj) +
                       ", " + std::to_string(uk) + ") is not a valid pair"};
  }
  bool claimed_covered =
      row_property ? covered[static_cast<size_t>(uj)] != 0
                   : covered[static_cast<size_t>(uj * r + uk)] != 0;
  if (claimed_covered) {
    return {false, "the claimed uncovered pair (" + std::to_string(uj) +
                       ", " + std::to_string(uk) +
                       ") is covered by a certificate"};
  }
  return {true, ""};
}

}  // namespace amc
