#include "amcheck/subgroup_lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "amcheck/errors.hpp"

namespace amc {

namespace {

struct WorkRecord {
  ElementSet set;
  std::vector<int> gens;
};

// Image of a subgroup set under conjugation by the gi-th generator.
ElementSet conjugate_set(const PermGroup& G, const ElementSet& s, int gi) {
  ElementSet out(s.capacity());
  s.for_each([&](int e) { out.set(G.conj_by_gen(e, gi)); });
  return out;
}

bool record_canon_less(const WorkRecord& a, const WorkRecord& b) {
  long long ca = a.set.count(), cb = b.set.count();
  if (ca != cb) return ca < cb;
  return a.set.lex_less(b.set);
}

}  // namespace

int SubgroupLattice::find(const ElementSet& elems) const {
  long long c = elems.count();
  auto it = std::lower_bound(
      records.begin(), records.end(), elems,
      [&](const SubgroupRecord& r, const ElementSet& s) {
        if (r.order != c) return r.order < c;
        return r.elems.lex_less(s);
      });
  if (it != records.end() && it->elems == elems)
    return static_cast<int>(it - records.begin());
  return -1;
}

SubgroupLattice enumerate_subgroups(const PermGroup& G, LatticeOptions opt) {
  const int n = static_cast<int>(G.order());
  const int num_gens = static_cast<int>(G.generators().size());

  std::vector<WorkRecord> recs;
  std::unordered_map<ElementSet, int, ElementSetHash> index;
  std::vector<int> orbit_of;        // record -> discovery orbit, -1 if unset
  std::vector<int> orbit_rep;       // discovery orbit -> record index
  std::vector<size_t> watermark;    // discovery orbit -> next record to join

  auto ensure_record = [&](ElementSet s) -> int {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    if (static_cast<long long>(recs.size()) + 1 > opt.subgroup_limit)
      throw CapError("subgroup count exceeds limit " +
                     std::to_string(opt.subgroup_limit) +
                     "; raise subgroup_limit to proceed");
    int idx = static_cast<int>(recs.size());
    std::vector<int> gens = greedy_generators(G, s);
    index.emplace(s, idx);
    recs.push_back(WorkRecord{std::move(s), std::move(gens)});
    orbit_of.push_back(-1);
    return idx;
  };

  auto assign_orbit = [&](int ridx) {
    if (orbit_of[ridx] >= 0) return;
    int oid = static_cast<int>(orbit_rep.size());
    orbit_rep.push_back(ridx);
    watermark.push_back(0);
    std::vector<int> work{ridx};
    orbit_of[ridx] = oid;
    while (!work.empty()) {
      int cur = work.back();
      work.pop_back();
      for (int gi = 0; gi < num_gens; ++gi) {
        ElementSet c = conjugate_set(G, recs[cur].set, gi);
        int cidx = ensure_record(std::move(c));
        if (orbit_of[cidx] < 0) {
          orbit_of[cidx] = oid;
          work.push_back(cidx);
        }
      }
    }
  };

  // Seeds: the trivial subgroup and every cyclic subgroup.
  {
    ElementSet triv(n);
    triv.set(G.identity_index());
    assign_orbit(ensure_record(std::move(triv)));
    for (int e = 0; e < n; ++e) {
      if (e == G.identity_index()) continue;
      assign_orbit(ensure_record(closure_from(G, {e})));
    }
  }

  // Fixpoint under pairwise joins.  Joining every orbit representative
  // with every record covers all pairs up to simultaneous conjugation,
  // and orbits are expanded at insertion, so the closure is complete.
  const size_t kChunk = 16384;
  struct JoinTask {
    int rep, other;
  };
  std::vector<JoinTask> batch;
  std::vector<ElementSet> joined;
  std::vector<char> skip;
  for (;;) {
    bool progressed = false;
    for (size_t r = 0; r < orbit_rep.size(); ++r) {
      size_t to = recs.size();
      if (watermark[r] >= to) continue;
      progressed = true;
      const int rep = orbit_rep[r];
      for (size_t j0 = watermark[r]; j0 < to; j0 += kChunk) {
        size_t j1 = std::min(to, j0 + kChunk);
        batch.clear();
        for (size_t j = j0; j < j1; ++j)
          batch.push_back(JoinTask{rep, static_cast<int>(j)});
        joined.assign(batch.size(), ElementSet());
        skip.assign(batch.size(), 0);
        const int nb = static_cast<int>(batch.size());
#pragma omp parallel for schedule(dynamic, 16) if (opt.threads > 1) \
    num_threads(opt.threads)
        for (int bi = 0; bi < nb; ++bi) {
          const ElementSet& A = recs[batch[bi].rep].set;
          const ElementSet& B = recs[batch[bi].other].set;
          if (A.is_subset_of(B) || B.is_subset_of(A)) {
            skip[bi] = 1;  // join already present
            continue;
          }
          std::vector<int> gens = recs[batch[bi].rep].gens;
          const auto& bg = recs[batch[bi].other].gens;
          gens.insert(gens.end(), bg.begin(), bg.end());
          joined[bi] = closure_from(G, gens);
        }
        // Serial merge in task order keeps insertion deterministic.
        for (int bi = 0; bi < nb; ++bi) {
          if (skip[bi]) continue;
          assign_orbit(ensure_record(std::move(joined[bi])));
        }
      }
      watermark[r] = to;
    }
    if (!progressed) break;
  }

  // Canonicalize: sort records, then number conjugacy classes by their
  // canonically minimal member.
  std::vector<int> sorted(recs.size());
  std::iota(sorted.begin(), sorted.end(), 0);
  std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
    return record_canon_less(recs[a], recs[b]);
  });
  SubgroupLattice L;
  L.group = &G;
  L.records.resize(recs.size());
  std::unordered_map<ElementSet, int, ElementSetHash> canon_index;
  for (size_t i = 0; i < sorted.size(); ++i) {
    SubgroupRecord& out = L.records[i];
    out.elems = std::move(recs[sorted[i]].set);
    out.order = out.elems.count();
    out.gens = std::move(recs[sorted[i]].gens);
    canon_index.emplace(out.elems, static_cast<int>(i));
  }
  for (size_t i = 0; i < L.records.size(); ++i) {
    if (L.records[i].class_id >= 0) continue;
    int cls = L.class_count();
    L.class_reps.push_back(static_cast<int>(i));
    std::vector<int> members{static_cast<int>(i)};
    L.records[i].class_id = cls;
    std::vector<int> work{static_cast<int>(i)};
    while (!work.empty()) {
      int cur = work.back();
      work.pop_back();
      for (int gi = 0; gi < num_gens; ++gi) {
        ElementSet c = conjugate_set(G, L.records[cur].elems, gi);
        auto it = canon_index.find(c);
        if (it == canon_index.end())
          throw InternalError("conjugate subgroup missing from the lattice");
        if (L.records[it->second].class_id < 0) {
          L.records[it->second].class_id = cls;
          members.push_back(it->second);
          work.push_back(it->second);
        }
      }
    }
    L.class_sizes.push_back(static_cast<int>(members.size()));
    // Flags are class properties; compute once per class.
    SubgroupRecord& rep = L.records[i];
    bool abelian = true;
    for (size_t a = 0; a < rep.gens.size() && abelian; ++a)
      for (size_t b = a + 1; b < rep.gens.size() && abelian; ++b)
        if (G.mul(rep.gens[a], rep.gens[b]) != G.mul(rep.gens[b], rep.gens[a]))
          abelian = false;
    bool normal = members.size() == 1;
    bool subnormal = normal || is_subnormal(G, rep.elems);
    for (int m : members) {
      L.records[m].abelian = abelian;
      L.records[m].normal = normal;
      L.records[m].subnormal = subnormal;
    }
  }
  return L;
}

std::vector<int> overgroup_classes(const SubgroupLattice& L,
                                   const ElementSet& N) {
  if (!is_normal(*L.group, N))
    throw InputError("overgroup filtering requires a normal subgroup");
  std::vector<int> out;
  for (int c = 0; c < L.class_count(); ++c)
    if (N.is_subset_of(L.rep(c).elems)) out.push_back(c);
  return out;
}

bool is_hall(const PermGroup& G, const ElementSet& N) {
  long long n = N.count();
  return std::gcd(n, G.order() / n) == 1;
}

std::vector<int> sylow_records(const SubgroupLattice& L, long long p) {
  if (p < 2) throw InputError("Sylow prime must be >= 2");
  long long pk = 1;
  long long g = L.group->order();
  while (g % p == 0) {
    g /= p;
    pk *= p;
  }
  std::vector<int> out;
  for (size_t i = 0; i < L.records.size(); ++i)
    if (L.records[i].order == pk) out.push_back(static_cast<int>(i));
  return out;
}

std::string lattice_summary(const SubgroupLattice& L) {
  std::ostringstream out;
  const PermGroup& G = *L.group;
  for (int c = 0; c < L.class_count(); ++c) {
    const SubgroupRecord& r = L.rep(c);
    out << "class " << c << ": order " << r.order << " size "
        << L.class_sizes[c] << " flags ";
    std::string flags;
    if (r.normal) flags += "normal,";
    if (r.subnormal) flags += "subnormal,";
    if (r.abelian) flags += "abelian,";
    if (flags.empty())
      flags = "-";
    else
      flags.pop_back();
    out << flags << " gens ";
    if (r.gens.empty()) {
      out << "()";
    } else {
      for (size_t i = 0; i < r.gens.size(); ++i) {
        if (i) out << " ";
        out << G.element(r.gens[i]).to_cycles();
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace amc
