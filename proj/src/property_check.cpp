#include "amcheck/property_check.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <sstream>
#include <unordered_set>

#include "amcheck/errors.hpp"

namespace amc {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Candidate masks are evaluated in fixed blocks of this size regardless
// of the thread count, so early exit lands on the same boundary and the
// counters stay reproducible.
constexpr int kBlockSize = 32;

void require_normal_subgroup(const PermGroup& G, const ElementSet& N,
                             const char* what) {
  if (N.capacity() != G.order())
    throw InputError(std::string(what) +
                     ": element set does not match the group");
  if (!N.test(G.identity_index()) ||
      !(closure_from(G, N.to_indices()) == N))
    throw InputError(std::string(what) +
                     ": the element set is not a subgroup");
  if (!is_normal(G, N))
    throw InputError(std::string(what) +
                     ": the subgroup is not normal");
}

// Serial pass touching every cache a block of candidates will read, so
// the parallel mask evaluation that follows is read-only.
void materialize(AnalysisSession& s, const std::vector<Candidate>& cands,
                 size_t begin, size_t end) {
  for (size_t i = begin; i < end; ++i) {
    class_data(s, cands[i].class_id);
    if (!cands[i].linear_kind) subgroup_table(s, cands[i].class_id);
  }
}

void fill_masks(AnalysisSession& s, const std::vector<Candidate>& cands,
                size_t begin, size_t end, std::vector<uint64_t>& masks) {
  materialize(s, cands, begin, end);
  const int nthreads = s.opt.threads;
  const long long lo = static_cast<long long>(begin);
  const long long hi = static_cast<long long>(end);
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads) \
    if (nthreads > 1)
  for (long long i = lo; i < hi; ++i)
    masks[static_cast<size_t>(i)] =
        candidate_mask(s, cands[static_cast<size_t>(i)]);
}

WitnessCertificate make_certificate(const AnalysisSession& s,
                                    const Candidate& c, uint64_t mask, int j,
                                    int k) {
  const SubgroupRecord& rec = s.lattice.rep(c.class_id);
  WitnessCertificate w;
  w.pair = {j, k};
  w.subgroup_class = c.class_id;
  w.subgroup_order = rec.order;
  w.subgroup_gens = rec.gens;
  w.linear_kind = c.linear_kind;
  w.char_index = c.char_index;
  w.mask = mask;
  return w;
}

const char* property_name(SourceKind kind) {
  switch (kind) {
    case SourceKind::AllSubgroupsLinear: return "am";
    case SourceKind::NormalLinear: return "nam";
    case SourceKind::SubnormalLinear: return "sam";
    case SourceKind::RelativeIrr: return "relative_am";
  }
  return "?";
}

// Shared coverage driver.  With use_blocks the masks of a whole block
// are computed (possibly in parallel) before any marking; the reference
// path evaluates and marks one candidate at a time and exits as soon as
// every pair is covered.
PropertyReport run_coverage(AnalysisSession& s, SourceKind kind,
                            const ElementSet* relative_to, bool use_blocks) {
  auto t0 = Clock::now();
  std::vector<Candidate> cands =
      enumerate_candidates(s, kind, relative_to);
  const int r = s.table.rows();

  PropertyReport rep;
  rep.property = property_name(kind);
  rep.candidates = static_cast<long long>(cands.size());

  std::vector<uint8_t> covered(static_cast<size_t>(r) * r, 0);
  std::vector<WitnessCertificate> cell(static_cast<size_t>(r) * r);
  for (int j = 0; j < r; ++j) covered[static_cast<size_t>(j) * r + j] = 1;
  long long remaining = static_cast<long long>(r) * (r - 1);

  auto mark = [&](const Candidate& c, uint64_t mask) {
    if (remaining == 0) return;
    for (int j = 0; j < r; ++j) {
      if (!((mask >> j) & 1)) continue;
      for (int k = 0; k < r; ++k) {
        if ((mask >> k) & 1) continue;
        uint8_t& flag = covered[static_cast<size_t>(j) * r + k];
        if (flag) continue;
        flag = 1;
        cell[static_cast<size_t>(j) * r + k] =
            make_certificate(s, c, mask, j, k);
        --remaining;
      }
    }
  };

  if (use_blocks) {
    std::vector<uint64_t> masks(cands.size());
    for (size_t base = 0; base < cands.size() && remaining > 0;
         base += kBlockSize) {
      size_t end = std::min(cands.size(), base + kBlockSize);
      fill_masks(s, cands, base, end, masks);
      rep.inductions += static_cast<long long>(end - base);
      for (size_t i = base; i < end; ++i) mark(cands[i], masks[i]);
    }
  } else {
    for (const Candidate& c : cands) {
      if (remaining == 0) break;
      uint64_t mask = candidate_mask(s, c);
      ++rep.inductions;
      mark(c, mask);
    }
  }

  rep.verdict = (remaining == 0);
  for (int j = 0; j < r && !rep.has_uncovered; ++j)
    for (int k = 0; k < r; ++k)
      if (!covered[static_cast<size_t>(j) * r + k]) {
        rep.has_uncovered = true;
        rep.uncovered_pair = {j, k};
        break;
      }
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < r; ++k)
      if (j != k && covered[static_cast<size_t>(j) * r + k])
        rep.certificates.push_back(cell[static_cast<size_t>(j) * r + k]);
  rep.millis = elapsed_ms(t0);
  return rep;
}

// Per-character driver shared by the monomiality checks.  Row j is
// witnessed by a candidate when the induced character is exactly row j
// (quasi == false: membership plus equal degree) or has row j as its
// only constituent (quasi == true).
PropertyReport run_row_witness(AnalysisSession& s, bool quasi) {
  auto t0 = Clock::now();
  std::vector<Candidate> cands =
      enumerate_candidates(s, SourceKind::AllSubgroupsLinear);
  const int r = s.table.rows();
  const long long n = s.group->order();

  PropertyReport rep;
  rep.property = quasi ? "quasi_monomial" : "monomial";
  rep.candidates = static_cast<long long>(cands.size());

  std::vector<uint8_t> witnessed(r, 0);
  std::vector<WitnessCertificate> cell(r);
  long long remaining = r;

  auto mark = [&](const Candidate& c, uint64_t mask) {
    if (remaining == 0) return;
    long long index = n / s.lattice.rep(c.class_id).order;
    for (int j = 0; j < r; ++j) {
      if (witnessed[j] || !((mask >> j) & 1)) continue;
      bool hit = quasi ? (mask == (uint64_t{1} << j))
                       : (index == s.table.degrees[j]);
      if (!hit) continue;
      witnessed[j] = 1;
      cell[j] = make_certificate(s, c, mask, j, j);
      --remaining;
    }
  };

  std::vector<uint64_t> masks(cands.size());
  for (size_t base = 0; base < cands.size() && remaining > 0;
       base += kBlockSize) {
    size_t end = std::min(cands.size(), base + kBlockSize);
    fill_masks(s, cands, base, end, masks);
    rep.inductions += static_cast<long long>(end - base);
    for (size_t i = base; i < end; ++i) mark(cands[i], masks[i]);
  }

  rep.verdict = (remaining == 0);
  for (int j = 0; j < r; ++j) {
    if (witnessed[j])
      rep.certificates.push_back(cell[j]);
    else if (!rep.has_uncovered) {
      rep.has_uncovered = true;
      rep.uncovered_pair = {j, j};
    }
  }
  rep.millis = elapsed_ms(t0);
  return rep;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  long long value = 1;
  for (int i = 1; i <= k; ++i) value = value * (n - k + i) / i;
  return value;
}

}  // namespace

AnalysisSession make_session(const PermGroup& G, AnalysisOptions opt) {
  AnalysisSession s;
  s.group = &G;
  s.opt = opt;
  s.ctx = make_context(G);
  s.table = character_table(G, s.ctx);
  if (s.table.rows() > 64)
    throw CapError(
        "more than 64 irreducible characters; constituent sets are limited "
        "to one machine word");
  LatticeOptions lopt;
  lopt.subgroup_limit = opt.subgroup_limit;
  lopt.threads = opt.threads;
  s.lattice = enumerate_subgroups(G, lopt);
  s.class_data.resize(s.lattice.class_count());
  return s;
}

SubgroupClassData& class_data(AnalysisSession& s, int class_id) {
  auto& slot = s.class_data.at(static_cast<size_t>(class_id));
  if (!slot) {
    const SubgroupRecord& rec = s.lattice.rep(class_id);
    auto data = std::make_unique<SubgroupClassData>(
        subgroup_from_elements(*s.group, rec.elems));
    data->fusion = fusion_map(*s.group, data->sub);
    data->linears = linear_characters(data->sub, s.ctx);
    slot = std::move(data);
  }
  return *slot;
}

const CharacterTable& subgroup_table(AnalysisSession& s, int class_id) {
  SubgroupClassData& d = class_data(s, class_id);
  if (!d.has_table) {
    d.table = character_table(d.sub, s.ctx);
    d.has_table = true;
  }
  return d.table;
}

std::vector<Candidate> enumerate_candidates(AnalysisSession& s,
                                            SourceKind kind,
                                            const ElementSet* relative_to) {
  std::vector<Candidate> out;
  if (kind == SourceKind::RelativeIrr) {
    if (relative_to == nullptr)
      throw InputError("relative check: no normal subgroup given");
    const ElementSet& N = *relative_to;
    require_normal_subgroup(*s.group, N, "relative check");
    PermGroup Ng = subgroup_from_elements(*s.group, N);
    std::vector<int> over = overgroup_classes(s.lattice, N);
    std::sort(over.begin(), over.end());
    for (int cid : over) {
      const CharacterTable& T = subgroup_table(s, cid);
      SubgroupClassData& d = class_data(s, cid);
      std::vector<int> fusion = fusion_map(d.sub, Ng);
      for (int row = 0; row < T.rows(); ++row) {
        std::vector<uint32_t> res =
            restrict_to(d.sub, Ng, T.values[row], fusion);
        if (scalar_product(Ng, s.ctx, res, res) == 1)
          out.push_back({cid, row, false});
      }
    }
    return out;
  }
  for (int cid = 0; cid < s.lattice.class_count(); ++cid) {
    const SubgroupRecord& rec = s.lattice.rep(cid);
    if (kind == SourceKind::NormalLinear && !rec.normal) continue;
    if (kind == SourceKind::SubnormalLinear && !rec.subnormal) continue;
    SubgroupClassData& d = class_data(s, cid);
    for (int li = 0; li < static_cast<int>(d.linears.size()); ++li)
      out.push_back({cid, li, true});
  }
  return out;
}

uint64_t candidate_mask(AnalysisSession& s, const Candidate& c) {
  SubgroupClassData& d = class_data(s, c.class_id);
  const std::vector<uint32_t>& theta =
      c.linear_kind ? d.linears.at(static_cast<size_t>(c.char_index))
                    : d.table.values.at(static_cast<size_t>(c.char_index));
  std::vector<uint32_t> induced =
      induce(*s.group, d.sub, s.ctx, theta, d.fusion);
  uint64_t mask = constituent_mask(s.table, induced);
  if (mask == 0)
    throw InternalError("an induced character decomposed to nothing");
  return mask;
}

PropertyReport check_am(AnalysisSession& s) {
  return run_coverage(s, SourceKind::AllSubgroupsLinear, nullptr, true);
}

PropertyReport check_nam(AnalysisSession& s) {
  return run_coverage(s, SourceKind::NormalLinear, nullptr, true);
}

PropertyReport check_sam(AnalysisSession& s) {
  return run_coverage(s, SourceKind::SubnormalLinear, nullptr, true);
}

PropertyReport check_relative_am(AnalysisSession& s, const ElementSet& N) {
  return run_coverage(s, SourceKind::RelativeIrr, &N, true);
}

PropertyReport check_monomial(AnalysisSession& s) {
  return run_row_witness(s, false);
}

PropertyReport check_quasi_monomial(AnalysisSession& s) {
  return run_row_witness(s, true);
}

PropertyReport coverage_check_reference(AnalysisSession& s, SourceKind kind,
                                        const ElementSet* relative_to) {
  return run_coverage(s, kind, relative_to, false);
}

LtProfile lt_profile(AnalysisSession& s) {
  auto t0 = Clock::now();
  LtProfile P;
  P.r = s.table.rows();
  if (P.r > 25)
    throw CapError(
        "more than 25 irreducible characters; the constituent-set profile "
        "grows as 2^r and is capped at 25");

  std::vector<Candidate> cands =
      enumerate_candidates(s, SourceKind::AllSubgroupsLinear);
  P.candidates = static_cast<long long>(cands.size());
  std::vector<uint64_t> masks(cands.size());
  for (size_t base = 0; base < cands.size(); base += kBlockSize) {
    size_t end = std::min(cands.size(), base + kBlockSize);
    fill_masks(s, cands, base, end, masks);
    P.inductions += static_cast<long long>(end - base);
  }

  std::unordered_set<uint64_t> seen(masks.begin(), masks.end());
  P.basic_masks.assign(seen.begin(), seen.end());
  std::sort(P.basic_masks.begin(), P.basic_masks.end());

  // Close under union: every closed set is a union of basic sets, so
  // the worklist only ever joins against the basic list.
  std::vector<uint64_t> work(P.basic_masks);
  while (!work.empty()) {
    uint64_t u = work.back();
    work.pop_back();
    for (uint64_t b : P.basic_masks) {
      uint64_t joined = u | b;
      if (seen.insert(joined).second) work.push_back(joined);
    }
  }
  P.closure.assign(seen.begin(), seen.end());
  std::sort(P.closure.begin(), P.closure.end());

  P.L.assign(static_cast<size_t>(P.r) + 1, 0);
  for (uint64_t m : P.closure)
    ++P.L[static_cast<size_t>(std::popcount(m))];
  P.threshold.assign(static_cast<size_t>(P.r), 0);
  for (int t = 1; t <= P.r - 1; ++t) {
    P.threshold[static_cast<size_t>(t)] =
        binomial(P.r, t) - binomial(P.r - 2, t - 1) + 1;
    if (P.L[static_cast<size_t>(t)] >= P.threshold[static_cast<size_t>(t)])
      P.threshold_met = true;
  }
  P.top_layer_full =
      (P.r >= 2) && (P.L[static_cast<size_t>(P.r) - 1] == P.r);
  P.millis = elapsed_ms(t0);
  return P;
}

bool profile_crosscheck(AnalysisSession& s) {
  const int r = s.table.rows();
  if (r == 1) return check_am(s).verdict;
  LtProfile P = lt_profile(s);
  bool am = check_am(s).verdict;
  bool quasi = check_quasi_monomial(s).verdict;
  if (P.threshold_met != am) return false;
  if (P.top_layer_full != am) return false;
  if ((P.L[1] == r) != quasi) return false;
  if (P.L[static_cast<size_t>(r)] != 1) return false;
  return true;
}

namespace {

// Exact value key of a table row: degree plus the root-of-unity
// multiplicities of every entry.  Two tables of the same group in
// different arithmetic contexts identify the same character by the same
// key.
std::string row_key(const CharacterTable& T, int row) {
  std::ostringstream os;
  os << T.degrees[static_cast<size_t>(row)];
  for (int c = 0; c < T.num_classes; ++c) {
    CyclotomicValue v = lift_value(T, row, c);
    os << '|';
    for (long long coeff : v.coeffs) os << coeff << ',';
  }
  return os.str();
}

// other row -> base row, matched by exact values.
std::vector<int> match_rows(const CharacterTable& base,
                            const CharacterTable& other) {
  std::map<std::string, int> index;
  for (int row = 0; row < base.rows(); ++row) index[row_key(base, row)] = row;
  std::vector<int> map(static_cast<size_t>(other.rows()), -1);
  for (int row = 0; row < other.rows(); ++row) {
    auto it = index.find(row_key(other, row));
    if (it == index.end())
      throw InternalError("table rows failed to match across contexts");
    map[static_cast<size_t>(row)] = it->second;
  }
  return map;
}

}  // namespace

DescentReport check_normal_descent(AnalysisSession& s, const ElementSet& N) {
  const PermGroup& G = *s.group;
  require_normal_subgroup(G, N, "descent check");
  DescentReport rep;

  // Condition (i): restrictions to N, in the session context (the norm
  // of a restricted irreducible is at most the group order, so the
  // session modulus already keeps it exact).
  PermGroup Ng = subgroup_from_elements(G, N);
  std::vector<int> fusionN = fusion_map(G, Ng);
  for (int row = 0; row < s.table.rows(); ++row) {
    std::vector<uint32_t> res =
        restrict_to(G, Ng, s.table.values[static_cast<size_t>(row)], fusionN);
    if (scalar_product(Ng, s.ctx, res, res) != 1) {
      rep.restriction_condition = false;
      rep.reducible_rows.push_back(row);
    }
  }

  // Products of N with every subgroup class representative, plus the
  // modulus needed to read the condition (ii) inner products exactly:
  // <lambda^{NH}, (phi_N)^{NH}>  <=  [NH:H] * [NH:N] * phi(1).
  const int classes = s.lattice.class_count();
  std::vector<ElementSet> joined;
  joined.reserve(static_cast<size_t>(classes));
  long long max_degree = 0;
  for (long long d : s.table.degrees) max_degree = std::max(max_degree, d);
  long long bound = G.order();
  const std::vector<int> ngens = greedy_generators(G, N);
  for (int cid = 0; cid < classes; ++cid) {
    const SubgroupRecord& rec = s.lattice.rep(cid);
    std::vector<int> gens = rec.gens;
    gens.insert(gens.end(), ngens.begin(), ngens.end());
    joined.push_back(closure_from(G, gens));
    long long nh = joined.back().count();
    bound = std::max(bound, nh / rec.order * (nh / Ng.order()) * max_degree);
  }
  if (bound > 2000000000LL)
    throw CapError(
        "descent check: the inner-product bound exceeds the supported "
        "modulus range");

  AnalysisContext wide = make_context_for(s.ctx.exponent, bound);
  CharacterTable Twide = character_table(G, wide);
  std::vector<int> to_session = match_rows(s.table, Twide);
  PermGroup NgWide = subgroup_from_elements(G, N);

  for (int cid = 0; cid < classes; ++cid) {
    PermGroup H = subgroup_from_elements(G, s.lattice.rep(cid).elems);
    PermGroup NH = subgroup_from_elements(G, joined[static_cast<size_t>(cid)]);
    std::vector<int> fuseHG = fusion_map(G, H);
    std::vector<int> fuseHNH = fusion_map(NH, H);
    std::vector<int> fuseNNH = fusion_map(NH, NgWide);
    std::vector<int> fuseNG = fusion_map(G, NgWide);
    std::vector<std::vector<uint32_t>> lams = linear_characters(H, wide);

    // (phi_N)^{NH} per row, shared across the linear characters of H.
    std::vector<std::vector<uint32_t>> lifted(
        static_cast<size_t>(Twide.rows()));
    for (int row = 0; row < Twide.rows(); ++row) {
      std::vector<uint32_t> resN = restrict_to(
          G, NgWide, Twide.values[static_cast<size_t>(row)], fuseNG);
      lifted[static_cast<size_t>(row)] =
          induce(NH, NgWide, wide, resN, fuseNNH);
    }

    for (int li = 0; li < static_cast<int>(lams.size()); ++li) {
      const std::vector<uint32_t>& lam = lams[static_cast<size_t>(li)];
      std::vector<uint32_t> lamG = induce(G, H, wide, lam, fuseHG);
      std::vector<uint32_t> lamNH = induce(NH, H, wide, lam, fuseHNH);
      for (int row = 0; row < Twide.rows(); ++row) {
        if (scalar_product(G, wide, lamG,
                           Twide.values[static_cast<size_t>(row)]) != 0)
          continue;
        if (scalar_product(NH, wide, lamNH,
                           lifted[static_cast<size_t>(row)]) != 0) {
          rep.vanishing_condition = false;
          rep.violations.push_back(
              {cid, li, to_session[static_cast<size_t>(row)]});
        }
      }
    }
  }
  std::sort(rep.violations.begin(), rep.violations.end());
  return rep;
}

}  // namespace amc
