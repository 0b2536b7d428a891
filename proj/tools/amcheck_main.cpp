// amcheck: decide monomiality-type properties of finite permutation
// groups and emit machine-checkable witness certificates.
#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "amcheck/corpus.hpp"
#include "amcheck/errors.hpp"
#include "amcheck/group_spec.hpp"
#include "amcheck/property_check.hpp"
#include "amcheck/report_json.hpp"

using namespace amc;

namespace {

struct GlobalOpts {
  int threads = 1;
  long long max_order = 20160;
  long long subgroup_limit = 20000;

  PermGroup::Options group_options() const {
    PermGroup::Options o;
    o.max_order = max_order;
    return o;
  }
  AnalysisOptions analysis_options() const {
    AnalysisOptions o;
    o.subgroup_limit = subgroup_limit;
    o.threads = threads;
    return o;
  }
};

std::string yesno(bool b) { return b ? "yes" : "no"; }

void print_group_header(const std::string& spec, const AnalysisSession& s) {
  std::printf("group %s: order %lld, degree %d, %d irreducible characters\n",
              spec.c_str(), s.group->order(), s.group->degree(),
              s.table.rows());
}

void print_report_line(const PropertyReport& rep) {
  if (rep.verdict) {
    std::printf("%s: yes — %zu witnesses (%lld candidates, %lld "
                "inductions)\n",
                rep.property.c_str(), rep.certificates.size(),
                rep.candidates, rep.inductions);
  } else {
    std::printf("%s: no — uncovered pair (%d, %d) (%lld candidates, %lld "
                "inductions)\n",
                rep.property.c_str(), rep.uncovered_pair[0],
                rep.uncovered_pair[1], rep.candidates, rep.inductions);
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out.good()) {
    throw InputError("cannot write to '" + path + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) {
    throw InputError("cannot read '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes one report as an object, several as an array of objects.
void write_reports_json(const std::string& path, AnalysisSession& s,
                        const std::string& spec,
                        const std::vector<PropertyReport>& reps,
                        const ElementSet* nsub = nullptr) {
  if (reps.size() == 1) {
    write_file(path, report_to_json(s, spec, reps[0], nsub));
    return;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const PropertyReport& rep : reps) {
    arr.push_back(
        nlohmann::ordered_json::parse(report_to_json(s, spec, rep, nsub)));
  }
  write_file(path, arr.dump(2) + "\n");
}

int cmd_props(const GlobalOpts& g, const std::string& spec,
              std::vector<std::string> properties,
              const std::string& json_path) {
  if (properties.empty()) {
    properties = {"monomial", "quasi_monomial", "am", "sam", "nam"};
  }
  for (const std::string& p : properties) {
    if (p != "monomial" && p != "quasi_monomial" && p != "am" && p != "sam" &&
        p != "nam") {
      if (p == "relative_am") {
        throw InputError("relative_am needs a normal subgroup; use the "
                         "'relative' command");
      }
      throw InputError("unknown property '" + p + "' (choose from monomial, "
                       "quasi_monomial, am, sam, nam)");
    }
  }
  PermGroup grp = group_from_spec(spec, g.group_options());
  AnalysisSession s = make_session(grp, g.analysis_options());
  print_group_header(spec, s);
  std::vector<PropertyReport> reps;
  for (const std::string& p : properties) {
    if (p == "monomial") reps.push_back(check_monomial(s));
    else if (p == "quasi_monomial") reps.push_back(check_quasi_monomial(s));
    else if (p == "am") reps.push_back(check_am(s));
    else if (p == "sam") reps.push_back(check_sam(s));
    else reps.push_back(check_nam(s));
    print_report_line(reps.back());
  }
  if (!json_path.empty()) write_reports_json(json_path, s, spec, reps);
  return 0;
}

int cmd_chartab(const GlobalOpts& g, const std::string& spec, bool lift) {
  PermGroup grp = group_from_spec(spec, g.group_options());
  AnalysisSession s = make_session(grp, g.analysis_options());
  print_group_header(spec, s);
  std::printf("arithmetic: values mod p = %u, exponent e = %lld\n",
              s.ctx.p, s.ctx.exponent);
  const ConjugacyData& cd = grp.classes();
  std::printf("classes (size, representative):\n");
  for (int c = 0; c < cd.count(); ++c) {
    std::printf("  %2d: %4lld  %s\n", c, cd.sizes[c],
                grp.element(cd.reps[c]).to_cycles().c_str());
  }
  if (lift) {
    std::printf("%s", table_text(s.table).c_str());
  } else {
    std::printf("rows (degree | residues):\n");
    for (int i = 0; i < s.table.rows(); ++i) {
      std::printf("  %2d: d=%-4lld |", i, s.table.degrees[i]);
      for (int c = 0; c < s.table.num_classes; ++c) {
        std::printf(" %6u", s.table.values[i][c]);
      }
      std::printf("\n");
    }
  }
  return 0;
}

int cmd_subgroups(const GlobalOpts& g, const std::string& spec) {
  PermGroup grp = group_from_spec(spec, g.group_options());
  AnalysisSession s = make_session(grp, g.analysis_options());
  print_group_header(spec, s);
  std::printf("%s", lattice_summary(s.lattice).c_str());
  return 0;
}

int cmd_lt(const GlobalOpts& g, const std::string& spec) {
  PermGroup grp = group_from_spec(spec, g.group_options());
  AnalysisSession s = make_session(grp, g.analysis_options());
  print_group_header(spec, s);
  LtProfile prof = lt_profile(s);
  std::printf("distinct induced-constituent sets: %zu; union closure size: "
              "%zu\n",
              prof.basic_masks.size(), prof.closure.size());
  std::printf("%-10s", "t:");
  for (int t = 1; t <= prof.r; ++t) std::printf(" %6d", t);
  std::printf("\n%-10s", "L[t]:");
  for (int t = 1; t <= prof.r; ++t)
    std::printf(" %6lld", prof.L[static_cast<size_t>(t)]);
  std::printf("\n%-10s", "N[r,t]:");
  for (int t = 1; t <= prof.r - 1; ++t)
    std::printf(" %6lld", prof.threshold[static_cast<size_t>(t)]);
  std::printf("      -\n");
  std::printf("threshold met: %s\n", yesno(prof.threshold_met).c_str());
  std::printf("top layer full (L[r-1] = r): %s\n",
              yesno(prof.top_layer_full).c_str());
  std::printf("coverage engine agrees: %s\n",
              yesno(profile_crosscheck(s)).c_str());
  return 0;
}

int cmd_relative(const GlobalOpts& g, const std::string& spec,
                 int normal_index, const std::string& normal_file,
                 const std::string& json_path) {
  PermGroup grp = group_from_spec(spec, g.group_options());
  AnalysisSession s = make_session(grp, g.analysis_options());
  ElementSet nset;
  if (normal_index >= 0) {
    if (normal_index >= s.lattice.class_count()) {
      throw InputError("normal subgroup class id " +
                       std::to_string(normal_index) + " is out of range (" +
                       std::to_string(s.lattice.class_count()) +
                       " classes; see the 'subgroups' command)");
    }
    if (s.lattice.class_sizes[normal_index] != 1) {
      throw InputError("subgroup class " + std::to_string(normal_index) +
                       " has " +
                       std::to_string(s.lattice.class_sizes[normal_index]) +
                       " conjugates, so it is not normal; pick a class of "
                       "size 1");
    }
    nset = s.lattice.rep(normal_index).elems;
  } else {
    PermGroup nfile = load_group(normal_file, g.group_options());
    if (nfile.degree() != grp.degree()) {
      throw InputError("the normal subgroup file acts on " +
                       std::to_string(nfile.degree()) + " points, the group "
                       "on " + std::to_string(grp.degree()));
    }
    nset = ElementSet(static_cast<int>(grp.order()));
    for (const Permutation& p : nfile.elements()) {
      int idx = grp.index_of(p);
      if (idx < 0) {
        throw InputError("element " + p.to_cycles() + " from the normal "
                         "subgroup file is not in the group");
      }
      nset.set(idx);
    }
  }
  PropertyReport rep = check_relative_am(s, nset);
  print_group_header(spec, s);
  int ri = s.lattice.find(nset);
  std::printf("normal subgroup: class %d, order %lld\n",
              ri >= 0 ? s.lattice.records[ri].class_id : -1, nset.count());
  print_report_line(rep);
  if (!json_path.empty()) {
    write_reports_json(json_path, s, spec, {rep}, &nset);
  }
  return 0;
}

int cmd_certify(const GlobalOpts& g, const std::string& spec,
                const std::string& cert_path) {
  PermGroup grp = group_from_spec(spec, g.group_options());
  std::string text = read_file(cert_path);
  nlohmann::ordered_json root;
  try {
    root = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("report is not valid JSON: ") + e.what());
  }
  bool all_ok = true;
  if (root.is_array()) {
    if (root.empty()) throw InputError("the report array is empty");
    for (size_t i = 0; i < root.size(); ++i) {
      CertifyResult cr =
          certify_report(grp, root[i].dump(), g.analysis_options());
      std::string prop = root[i].contains("property") &&
                                 root[i]["property"].is_string()
                             ? root[i]["property"].get<std::string>()
                             : "?";
      std::printf("report %zu (%s): %s%s%s\n", i, prop.c_str(),
                  cr.ok ? "certified" : "REJECTED", cr.ok ? "" : " — ",
                  cr.reason.c_str());
      all_ok = all_ok && cr.ok;
    }
  } else {
    CertifyResult cr = certify_report(grp, text, g.analysis_options());
    all_ok = cr.ok;
    if (!cr.ok) std::printf("reason: %s\n", cr.reason.c_str());
  }
  std::printf("certified: %s\n", yesno(all_ok).c_str());
  return 0;
}

int cmd_corpus(const GlobalOpts& g, const std::string& tier) {
  bool slow = tier == "slow";
  const auto& cat = corpus_catalog();
  int total = 0;
  for (const auto& e : cat) {
    if (!e.slow || slow) ++total;
  }
  std::printf("corpus tier: %s (%d groups)\n", tier.c_str(), total);
  std::printf("%-10s %6s %3s  %-8s %-8s %-4s %-4s %-4s %-8s %s\n", "spec",
              "order", "r", "monomial", "quasi", "am", "sam", "nam",
              "profile", "expected");
  int matched = 0, gating = 0;
  std::vector<std::string> observations;
  for (const auto& e : cat) {
    if (e.slow && !slow) continue;
    CorpusVerdicts v = run_corpus_entry(e, g.analysis_options());
    bool match = matches_expectations(v, e);
    const char* profile = v.profile_checked
                              ? (v.profile_consistent ? "agree" : "DISAGREE")
                              : "skipped";
    std::printf("%-10s %6lld %3d  %-8s %-8s %-4s %-4s %-4s %-8s %s\n",
                v.spec.c_str(), v.order, v.num_irreducibles,
                yesno(v.monomial).c_str(), yesno(v.quasi_monomial).c_str(),
                yesno(v.am).c_str(), yesno(v.sam).c_str(),
                yesno(v.nam).c_str(), profile,
                e.observation ? (match ? "match (observation)"
                                       : "MISMATCH (observation)")
                              : (match ? "match" : "MISMATCH"));
    if (e.observation) {
      observations.push_back(v.spec);
    } else {
      ++gating;
      if (match) ++matched;
    }
  }
  std::printf("observations (recorded, not gating):");
  for (const std::string& o : observations) std::printf(" %s", o.c_str());
  std::printf("\nsummary: %d/%d gating entries match expectations\n", matched,
              gating);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"amcheck — monomiality-property checks for finite "
               "permutation groups, with verifiable witness certificates"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--threads", g.threads,
                 "worker threads for candidate evaluation (output is "
                 "identical for every value)")
      ->check(CLI::Range(1, 256));
  app.add_option("--max-order", g.max_order,
                 "largest group order that will be constructed");
  app.add_option("--subgroup-limit", g.subgroup_limit,
                 "largest subgroup count that will be enumerated");

  std::string spec, json_path, normal_file, cert_path, tier;
  std::vector<std::string> properties;
  int normal_index = -1;
  bool lift = false;

  CLI::App* props = app.add_subcommand(
      "props", "decide properties and emit witness certificates");
  props->add_option("group", spec, group_spec_help())->required();
  props->add_option("--properties", properties,
                    "comma-separated subset of monomial, quasi_monomial, "
                    "am, sam, nam (default: all)")
      ->delimiter(',');
  props->add_option("--json", json_path,
                    "write the JSON report(s) to this file");

  CLI::App* chartab =
      app.add_subcommand("chartab", "print the character table");
  chartab->add_option("group", spec, group_spec_help())->required();
  chartab->add_flag("--lift", lift,
                    "print exact root-of-unity lifts instead of residues");

  CLI::App* subgroups = app.add_subcommand(
      "subgroups", "list subgroup conjugacy classes with their class ids");
  subgroups->add_option("group", spec, group_spec_help())->required();

  CLI::App* lt = app.add_subcommand(
      "lt", "print the constituent-set profile and its thresholds");
  lt->add_option("group", spec, group_spec_help())->required();

  CLI::App* relative = app.add_subcommand(
      "relative", "decide the separation property relative to a normal "
                  "subgroup");
  relative->add_option("group", spec, group_spec_help())->required();
  CLI::Option* oidx = relative->add_option(
      "--normal-index", normal_index,
      "subgroup class id of the normal subgroup (see 'subgroups')");
  CLI::Option* ofile = relative->add_option(
      "--normal-file", normal_file,
      "generator file whose group is the normal subgroup");
  oidx->excludes(ofile);
  relative->add_option("--json", json_path,
                       "write the JSON report to this file");

  CLI::App* certify = app.add_subcommand(
      "certify", "revalidate a JSON report with the literal induction "
                 "formula");
  certify->add_option("group", spec, group_spec_help())->required();
  certify->add_option("report", cert_path, "JSON report file from 'props' "
                      "or 'relative'")
      ->required();

  CLI::App* corpus = app.add_subcommand(
      "corpus", "replay the built-in catalog against its pinned verdicts");
  corpus->add_option("tier", tier, "fast | slow")
      ->required()
      ->check(CLI::IsMember({"fast", "slow"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*props) return cmd_props(g, spec, properties, json_path);
    if (*chartab) return cmd_chartab(g, spec, lift);
    if (*subgroups) return cmd_subgroups(g, spec);
    if (*lt) return cmd_lt(g, spec);
    if (*relative) {
      if (normal_index < 0 && normal_file.empty()) {
        throw InputError("pick the normal subgroup with --normal-index or "
                         "--normal-file");
      }
      return cmd_relative(g, spec, normal_index, normal_file, json_path);
    }
    if (*certify) return cmd_certify(g, spec, cert_path);
    if (*corpus) return cmd_corpus(g, tier);
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const CapError& e) {
    std::fprintf(stderr, "refused: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return 0;
}
