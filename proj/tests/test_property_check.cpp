#include <algorithm>
#include <set>
#include <vector>

#include "amcheck/construct.hpp"
#include "amcheck/errors.hpp"
#include "amcheck/property_check.hpp"
#include "doctest.h"

using namespace amc;

namespace {

ElementSet trivial_set(const PermGroup& G) {
  return ElementSet::from_indices(static_cast<int>(G.order()), {0});
}

ElementSet whole_set(const PermGroup& G) {
  return ElementSet::full(static_cast<int>(G.order()));
}

ElementSet span_of(const PermGroup& G, const std::vector<std::string>& words) {
  std::vector<int> idx;
  for (const auto& w : words)
    idx.push_back(G.index_of(Permutation::from_cycles(w, G.degree())));
  return closure_from(G, idx);
}

ElementSet center_set(const PermGroup& G) {
  ElementSet out(static_cast<int>(G.order()));
  std::vector<int> gidx;
  for (const auto& g : G.generators()) gidx.push_back(G.index_of(g));
  for (int e = 0; e < G.order(); ++e) {
    bool central = true;
    for (int g : gidx)
      if (G.mul(e, g) != G.mul(g, e)) {
        central = false;
        break;
      }
    if (central) out.set(e);
  }
  return out;
}

bool cert_equal(const WitnessCertificate& a, const WitnessCertificate& b) {
  return a.pair == b.pair && a.subgroup_class == b.subgroup_class &&
         a.subgroup_order == b.subgroup_order &&
         a.subgroup_gens == b.subgroup_gens &&
         a.linear_kind == b.linear_kind && a.char_index == b.char_index &&
         a.mask == b.mask;
}

// Everything except wall time.
bool report_equal(const PropertyReport& a, const PropertyReport& b) {
  if (a.property != b.property || a.verdict != b.verdict) return false;
  if (a.has_uncovered != b.has_uncovered || a.uncovered_pair != b.uncovered_pair)
    return false;
  if (a.candidates != b.candidates || a.inductions != b.inductions)
    return false;
  if (a.certificates.size() != b.certificates.size()) return false;
  for (size_t i = 0; i < a.certificates.size(); ++i)
    if (!cert_equal(a.certificates[i], b.certificates[i])) return false;
  return true;
}

// Identity of the decision content only (counters excluded): used to
// compare the block engine against the serial reference.
bool decision_equal(const PropertyReport& a, const PropertyReport& b) {
  if (a.verdict != b.verdict) return false;
  if (a.has_uncovered != b.has_uncovered || a.uncovered_pair != b.uncovered_pair)
    return false;
  if (a.certificates.size() != b.certificates.size()) return false;
  for (size_t i = 0; i < a.certificates.size(); ++i)
    if (!cert_equal(a.certificates[i], b.certificates[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("analysis sessions pin the shared arithmetic and refuse wide tables") {
  PermGroup s4 = symmetric_group(4);
  AnalysisSession s = make_session(s4);
  CHECK(s.ctx.p == 37);
  CHECK(s.table.rows() == 5);
  CHECK(s.lattice.class_count() == 11);
  CHECK(s.group == &s4);

  // Class 0 is the trivial subgroup: one linear character, a one-row table.
  CHECK(class_data(s, 0).linears.size() == 1);
  CHECK(subgroup_table(s, 0).rows() == 1);
  // The last class is the whole group.
  const CharacterTable& top = subgroup_table(s, s.lattice.class_count() - 1);
  CHECK(top.rows() == 5);

  PermGroup wide = cyclic_group(65);
  CHECK_THROWS_AS(make_session(wide), CapError);
}

TEST_CASE("candidate pools follow the lattice flags in canonical order") {
  PermGroup s4 = symmetric_group(4);
  AnalysisSession s = make_session(s4);

  auto all = enumerate_candidates(s, SourceKind::AllSubgroupsLinear);
  // Grouped by ascending class, indices 0..k-1 within each class, and the
  // count per class matches that class's linear characters.
  size_t at = 0;
  for (int cid = 0; cid < s.lattice.class_count(); ++cid) {
    size_t k = class_data(s, cid).linears.size();
    REQUIRE(k >= 1);
    for (size_t i = 0; i < k; ++i, ++at) {
      REQUIRE(at < all.size());
      CHECK(all[at].class_id == cid);
      CHECK(all[at].char_index == static_cast<int>(i));
      CHECK(all[at].linear_kind);
    }
  }
  CHECK(at == all.size());

  // Normal pool of S4: trivial, the double-transposition four-group, the
  // alternating subgroup, and the whole group, with 1 + 4 + 3 + 2 linears.
  auto normal = enumerate_candidates(s, SourceKind::NormalLinear);
  CHECK(normal.size() == 10);
  std::set<int> normal_classes;
  for (const auto& c : normal) {
    normal_classes.insert(c.class_id);
    CHECK(s.lattice.rep(c.class_id).normal);
  }
  CHECK(normal_classes.size() == 4);

  auto subnormal = enumerate_candidates(s, SourceKind::SubnormalLinear);
  for (const auto& c : subnormal) CHECK(s.lattice.rep(c.class_id).subnormal);
  // Normal candidates are a subset of subnormal candidates.
  std::set<std::pair<int, int>> sub_pairs;
  for (const auto& c : subnormal) sub_pairs.insert({c.class_id, c.char_index});
  for (const auto& c : normal)
    CHECK(sub_pairs.count({c.class_id, c.char_index}) == 1);
  CHECK(subnormal.size() > normal.size());

  // Relative pool at the trivial subgroup: exactly the degree-one rows,
  // so the per-class counts match the linear pools.
  ElementSet triv = trivial_set(s4);
  auto rel = enumerate_candidates(s, SourceKind::RelativeIrr, &triv);
  REQUIRE(rel.size() == all.size());
  for (size_t i = 0; i < rel.size(); ++i) {
    CHECK(rel[i].class_id == all[i].class_id);
    CHECK_FALSE(rel[i].linear_kind);
    const CharacterTable& T = subgroup_table(s, rel[i].class_id);
    CHECK(T.degrees[rel[i].char_index] == 1);
  }

  // Relative pool at the double-transposition four-group: its own four
  // linears, four from the dihedral overgroup, three from the alternating
  // overgroup, two from the whole group.
  ElementSet v4 = span_of(s4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  auto relv = enumerate_candidates(s, SourceKind::RelativeIrr, &v4);
  std::vector<std::pair<int, int>> per_class;  // (class order, count)
  for (const auto& c : relv) {
    int order = static_cast<int>(s.lattice.rep(c.class_id).order);
    if (per_class.empty() || per_class.back().first != order)
      per_class.push_back({order, 0});
    per_class.back().second++;
  }
  CHECK(per_class == std::vector<std::pair<int, int>>{
                         {4, 4}, {8, 4}, {12, 3}, {24, 2}});

  // Bad inputs: a non-normal subgroup, a non-subgroup set.
  ElementSet c2 = span_of(s4, {"(3,4)"});
  CHECK_THROWS_AS(enumerate_candidates(s, SourceKind::RelativeIrr, &c2),
                  InputError);
  ElementSet open(static_cast<int>(s4.order()));
  open.set(0);
  open.set(1);
  open.set(2);
  CHECK_THROWS_AS(enumerate_candidates(s, SourceKind::RelativeIrr, &open),
                  InputError);
}

TEST_CASE("the block engine and the serial reference decide identically") {
  std::vector<PermGroup> groups;
  groups.push_back(symmetric_group(4));
  groups.push_back(alternating_group(4));
  groups.push_back(sl2_3());
  groups.push_back(gl2_3());
  groups.push_back(dihedral_group(12));
  auto engine_for = [](AnalysisSession& s, SourceKind kind) {
    switch (kind) {
      case SourceKind::NormalLinear: return check_nam(s);
      case SourceKind::SubnormalLinear: return check_sam(s);
      default: return check_am(s);
    }
  };
  for (const PermGroup& G : groups) {
    AnalysisSession s = make_session(G);
    for (SourceKind kind : {SourceKind::AllSubgroupsLinear,
                            SourceKind::NormalLinear,
                            SourceKind::SubnormalLinear}) {
      PropertyReport engine = engine_for(s, kind);
      PropertyReport ref = coverage_check_reference(s, kind);
      CHECK(decision_equal(engine, ref));
      CHECK(ref.inductions <= engine.inductions);
    }
    ElementSet triv = trivial_set(G);
    CHECK(decision_equal(check_relative_am(s, triv),
                         coverage_check_reference(
                             s, SourceKind::RelativeIrr, &triv)));
  }
}

TEST_CASE("identical reports for every thread count") {
  for (bool relative : {false, true}) {
    PropertyReport base;
    bool first = true;
    for (int t : {1, 2, 8}) {
      PermGroup G = gl2_3();
      AnalysisSession s = make_session(G, {20000, t});
      PropertyReport rep;
      if (relative) {
        ElementSet z = center_set(G);
        rep = check_relative_am(s, z);
      } else {
        rep = check_am(s);
      }
      if (first) {
        base = rep;
        first = false;
      } else {
        CHECK(report_equal(base, rep));
      }
    }
  }
}

TEST_CASE("pinned verdicts across the hierarchy") {
  auto run = [](const PermGroup& G) {
    AnalysisSession s = make_session(G);
    struct Out {
      bool monomial, quasi, am, nam, sam;
    } o{};
    o.monomial = check_monomial(s).verdict;
    o.quasi = check_quasi_monomial(s).verdict;
    o.am = check_am(s).verdict;
    o.nam = check_nam(s).verdict;
    o.sam = check_sam(s).verdict;
    // Hierarchy implications hold unconditionally.
    if (o.monomial) CHECK(o.quasi);
    if (o.quasi) CHECK(o.am);
    if (o.nam) CHECK(o.sam);
    if (o.sam) CHECK(o.am);
    // Monomial groups are solvable.
    if (o.monomial) CHECK(is_solvable(G));
    return o;
  };

  auto s3 = run(symmetric_group(3));
  CHECK(s3.monomial);
  CHECK(s3.am);

  auto s4 = run(symmetric_group(4));
  CHECK(s4.monomial);
  CHECK(s4.quasi);
  CHECK(s4.am);
  // The two degree-3 characters differ by the sign twist, which every
  // subnormal-subgroup induction is blind to.
  CHECK_FALSE(s4.sam);
  CHECK_FALSE(s4.nam);

  auto s5 = run(symmetric_group(5));
  CHECK(s5.am);
  CHECK_FALSE(s5.monomial);

  auto a4 = run(alternating_group(4));
  CHECK(a4.monomial);
  CHECK(a4.nam);
  CHECK(a4.sam);

  auto sl = run(sl2_3());
  CHECK_FALSE(sl.monomial);
  CHECK(sl.am);
  CHECK_FALSE(sl.sam);
  CHECK_FALSE(sl.nam);

  auto gl = run(gl2_3());
  CHECK_FALSE(gl.am);
  CHECK_FALSE(gl.monomial);
  CHECK_FALSE(gl.quasi);
  CHECK_FALSE(gl.sam);
  CHECK_FALSE(gl.nam);

  auto d8 = run(dihedral_group(8));
  CHECK(d8.monomial);
  CHECK(d8.nam);

  auto d12 = run(dihedral_group(12));
  CHECK(d12.monomial);
  CHECK(d12.nam);

  auto c6 = run(cyclic_group(6));
  CHECK(c6.monomial);
  CHECK(c6.nam);

  auto v4 = run(direct_product(cyclic_group(2), cyclic_group(2)).group);
  CHECK(v4.monomial);
  CHECK(v4.nam);

  auto wreath = run(wreath_product(symmetric_group(3), cyclic_group(2)));
  CHECK(wreath.sam);
  CHECK_FALSE(wreath.nam);
  CHECK(wreath.am);
}

TEST_CASE("an uncovered pair is reported when separation fails") {
  PermGroup gl = gl2_3();
  AnalysisSession s = make_session(gl);
  PropertyReport rep = check_am(s);
  CHECK_FALSE(rep.verdict);
  REQUIRE(rep.has_uncovered);
  int j = rep.uncovered_pair[0], k = rep.uncovered_pair[1];
  CHECK(j != k);
  CHECK(0 <= j);
  CHECK(j < s.table.rows());
  CHECK(0 <= k);
  CHECK(k < s.table.rows());
  // No candidate mask distinguishes the reported pair.
  for (const Candidate& c :
       enumerate_candidates(s, SourceKind::AllSubgroupsLinear)) {
    uint64_t m = candidate_mask(s, c);
    bool separates = ((m >> j) & 1) == 1 && ((m >> k) & 1) == 0;
    CHECK_FALSE(separates);
  }
  // With every pair needing work until the end, the engine evaluates the
  // whole pool.
  CHECK(rep.inductions == rep.candidates);
}

TEST_CASE("relative checks at the boundary subgroups and against the absolute ones") {
  // Trivial subgroup: the relative machinery (full tables, restriction
  // filter) must reproduce the plain separation verdict.
  std::vector<PermGroup> groups;
  groups.push_back(symmetric_group(4));
  groups.push_back(alternating_group(4));
  groups.push_back(sl2_3());
  groups.push_back(gl2_3());
  groups.push_back(dihedral_group(12));
  for (const PermGroup& G : groups) {
    AnalysisSession s = make_session(G);
    CHECK(check_relative_am(s, trivial_set(G)).verdict ==
          check_am(s).verdict);
    // Whole group: each character separates itself from everything.
    CHECK(check_relative_am(s, whole_set(G)).verdict);
  }

  // A four-group inside the symmetric group: abelian normal inside a
  // separable group, so the relative verdict is forced true.
  PermGroup s4 = symmetric_group(4);
  AnalysisSession ss4 = make_session(s4);
  ElementSet v4 = span_of(s4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  CHECK(check_relative_am(ss4, v4).verdict);

  // The determinant-1 group relative to its center: abelian normal
  // inside a separable solvable group, again forced true.
  PermGroup sl = sl2_3();
  AnalysisSession ssl = make_session(sl);
  ElementSet zsl = center_set(sl);
  CHECK(zsl.count() == 2);
  CHECK(check_relative_am(ssl, zsl).verdict);

  // The full 2x2 group over three elements relative to its center: its
  // Sylow subgroups are abelian and the group is solvable, so a true
  // verdict here would force the (false) absolute one.
  PermGroup gl = gl2_3();
  AnalysisSession sgl = make_session(gl);
  ElementSet zgl = center_set(gl);
  CHECK(zgl.count() == 2);
  CHECK_FALSE(check_relative_am(sgl, zgl).verdict);
  CHECK(is_solvable(gl));
}

TEST_CASE("constituent-set profile: exact layers and thresholds") {
  PermGroup s4 = symmetric_group(4);
  AnalysisSession s = make_session(s4);
  LtProfile P = lt_profile(s);
  REQUIRE(P.r == 5);
  // Every irreducible is induced exactly from some linear, so the
  // singleton sets are all present and the closure is the full power set.
  CHECK(P.closure.size() == 31);
  CHECK(P.L == std::vector<long long>{0, 5, 10, 10, 5, 1});
  CHECK(P.threshold == std::vector<long long>{0, 5, 8, 8, 5});
  CHECK(P.threshold_met);
  CHECK(P.top_layer_full);
  // The trivial subgroup contributes the full constituent set.
  CHECK(std::find(P.basic_masks.begin(), P.basic_masks.end(),
                  uint64_t{31}) != P.basic_masks.end());

  PermGroup c6 = cyclic_group(6);
  AnalysisSession sc6 = make_session(c6);
  LtProfile P6 = lt_profile(sc6);
  CHECK(P6.L == std::vector<long long>{0, 6, 15, 20, 15, 6, 1});
  CHECK(P6.threshold_met);

  PermGroup gl = gl2_3();
  AnalysisSession sgl = make_session(gl);
  LtProfile Pg = lt_profile(sgl);
  REQUIRE(Pg.r == 8);
  CHECK_FALSE(Pg.threshold_met);
  CHECK_FALSE(Pg.top_layer_full);
  CHECK(Pg.L[8] == 1);
  CHECK(Pg.L[7] < 8);
  CHECK(Pg.L[1] < 8);

  PermGroup c1 = cyclic_group(1);
  AnalysisSession sc1 = make_session(c1);
  LtProfile P1 = lt_profile(sc1);
  CHECK(P1.r == 1);
  CHECK(P1.L == std::vector<long long>{0, 1});
  CHECK_FALSE(P1.threshold_met);
  CHECK_FALSE(P1.top_layer_full);

  PermGroup c27 = cyclic_group(27);
  AnalysisSession sc27 = make_session(c27);
  CHECK_THROWS_AS(lt_profile(sc27), CapError);
}

TEST_CASE("profile and coverage machineries always agree") {
  std::vector<PermGroup> groups;
  groups.push_back(cyclic_group(1));
  groups.push_back(cyclic_group(2));
  groups.push_back(cyclic_group(12));
  groups.push_back(direct_product(cyclic_group(2), cyclic_group(2)).group);
  groups.push_back(symmetric_group(3));
  groups.push_back(symmetric_group(4));
  groups.push_back(symmetric_group(5));
  groups.push_back(alternating_group(4));
  groups.push_back(alternating_group(5));
  groups.push_back(dihedral_group(8));
  groups.push_back(dihedral_group(12));
  groups.push_back(sl2_3());
  groups.push_back(gl2_3());
  for (const PermGroup& G : groups) {
    AnalysisSession s = make_session(G);
    CHECK(profile_crosscheck(s));
  }
}

TEST_CASE("witness certificates decode and revalidate from scratch") {
  PermGroup s4 = symmetric_group(4);
  AnalysisSession s = make_session(s4);

  PropertyReport am = check_am(s);
  REQUIRE(am.verdict);
  // One certificate per ordered pair, in row-major pair order.
  REQUIRE(am.certificates.size() == 20);
  size_t at = 0;
  for (int j = 0; j < 5; ++j)
    for (int k = 0; k < 5; ++k) {
      if (j == k) continue;
      const WitnessCertificate& w = am.certificates[at++];
      CHECK(w.pair == std::array<int, 2>{j, k});
      CHECK(((w.mask >> j) & 1) == 1);
      CHECK(((w.mask >> k) & 1) == 0);
      // The stated generators really cut out a subgroup of the stated
      // order in the stated class.
      ElementSet span = closure_from(s4, w.subgroup_gens);
      CHECK(span.count() == w.subgroup_order);
      int rec = s.lattice.find(span);
      REQUIRE(rec >= 0);
      CHECK(s.lattice.records[rec].class_id == w.subgroup_class);
      // Recompute the induced character by literal averaging.
      CHECK(w.linear_kind);
      SubgroupClassData& d = class_data(s, w.subgroup_class);
      std::vector<uint32_t> ind = induce_naive(
          s4, d.sub, s.ctx, d.linears[static_cast<size_t>(w.char_index)]);
      CHECK(constituent_mask(s.table, ind) == w.mask);
    }

  PropertyReport mono = check_monomial(s);
  REQUIRE(mono.verdict);
  REQUIRE(mono.certificates.size() == 5);
  for (const WitnessCertificate& w : mono.certificates) {
    int j = w.pair[0];
    CHECK(w.pair[1] == j);
    SubgroupClassData& d = class_data(s, w.subgroup_class);
    std::vector<uint32_t> ind = induce_naive(
        s4, d.sub, s.ctx, d.linears[static_cast<size_t>(w.char_index)]);
    // Monomial witnesses reproduce the row exactly, not just up to
    // constituents.
    CHECK(ind == s.table.values[static_cast<size_t>(j)]);
  }

  PropertyReport quasi = check_quasi_monomial(s);
  REQUIRE(quasi.verdict);
  for (const WitnessCertificate& w : quasi.certificates)
    CHECK(w.mask == (uint64_t{1} << w.pair[0]));
}

TEST_CASE("counters are block-granular and reproducible") {
  PermGroup s4 = symmetric_group(4);
  AnalysisSession s = make_session(s4);
  PropertyReport am = check_am(s);
  CHECK(am.candidates == static_cast<long long>(
                             enumerate_candidates(
                                 s, SourceKind::AllSubgroupsLinear)
                                 .size()));
  CHECK(am.inductions <= am.candidates);
  bool at_boundary = (am.inductions % 32 == 0) ||
                     (am.inductions == am.candidates);
  CHECK(at_boundary);
  // Re-running the same check reproduces the same counters.
  PropertyReport again = check_am(s);
  CHECK(report_equal(am, again));
}

TEST_CASE("descent conditions: restrictions and induced pairings") {
  PermGroup s4 = symmetric_group(4);
  AnalysisSession s = make_session(s4);

  // Whole group: restrictions are identities and the pairing condition
  // collapses to the hypothesis itself.
  DescentReport top = check_normal_descent(s, whole_set(s4));
  CHECK(top.restriction_condition);
  CHECK(top.vanishing_condition);
  CHECK(top.reducible_rows.empty());
  CHECK(top.violations.empty());

  // Alternating subgroup: only the degree-2 character splits.
  ElementSet a4 = span_of(s4, {"(1,2,3)", "(1,2)(3,4)"});
  DescentReport da4 = check_normal_descent(s, a4);
  CHECK_FALSE(da4.restriction_condition);
  CHECK(da4.reducible_rows == std::vector<int>{2});

  // Four-group: everything of degree > 1 splits.
  ElementSet v4 = span_of(s4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  DescentReport dv4 = check_normal_descent(s, v4);
  CHECK(dv4.reducible_rows == std::vector<int>{2, 3, 4});

  // Trivial subgroup: inducing the restriction back up hits every
  // character of the overgroup, so the pairing condition collapses.
  DescentReport dtr = check_normal_descent(s, trivial_set(s4));
  CHECK(dtr.reducible_rows == std::vector<int>{2, 3, 4});
  CHECK_FALSE(dtr.vanishing_condition);
  REQUIRE_FALSE(dtr.violations.empty());
  CHECK(std::is_sorted(dtr.violations.begin(), dtr.violations.end()));
  for (const auto& v : dtr.violations) {
    CHECK(0 <= v[0]);
    CHECK(v[0] < s.lattice.class_count());
    CHECK(0 <= v[2]);
    CHECK(v[2] < s.table.rows());
  }

  // Deterministic across repeated runs.
  DescentReport dtr2 = check_normal_descent(s, trivial_set(s4));
  CHECK(dtr.reducible_rows == dtr2.reducible_rows);
  CHECK(dtr.violations == dtr2.violations);

  // All-linear case: restrictions stay irreducible.
  PermGroup c6 = cyclic_group(6);
  AnalysisSession sc6 = make_session(c6);
  ElementSet c3 = span_of(c6, {"(1,3,5)(2,4,6)"});
  DescentReport d63 = check_normal_descent(sc6, c3);
  CHECK(d63.restriction_condition);

  // Non-normal subgroups are rejected.
  ElementSet c2 = span_of(s4, {"(3,4)"});
  CHECK_THROWS_AS(check_normal_descent(s, c2), InputError);
}
