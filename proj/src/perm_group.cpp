#include "amcheck/perm_group.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "amcheck/errors.hpp"

namespace amc {

namespace {

struct ImageHash {
  size_t operator()(const std::vector<int>& v) const {
    uint64_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<uint64_t>(x);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

}  // namespace

PermGroup::PermGroup(int degree, std::vector<Permutation> generators,
                     Options opt)
    : degree_(degree), gens_(std::move(generators)) {
  if (degree_ < 1) throw InputError("group degree must be >= 1");
  for (const auto& g : gens_)
    if (g.degree() != degree_)
      throw InputError("generator degree mismatch: expected " +
                       std::to_string(degree_) + ", got " +
                       std::to_string(g.degree()));

  // Breadth-first closure from the identity under right multiplication.
  std::unordered_set<std::vector<int>, ImageHash> seen;
  std::vector<Permutation> queue;
  Permutation id = Permutation::identity(degree_);
  seen.insert(id.images());
  queue.push_back(id);
  for (size_t head = 0; head < queue.size(); ++head) {
    Permutation cur = queue[head];  // copy: queue may reallocate
    for (const auto& g : gens_) {
      Permutation next = compose(cur, g);
      if (seen.insert(next.images()).second) {
        if (static_cast<long long>(queue.size()) + 1 > opt.max_order)
          throw CapError("group order exceeds cap " +
                         std::to_string(opt.max_order) +
                         "; raise max_order to proceed");
        queue.push_back(std::move(next));
      }
    }
  }
  elements_ = std::move(queue);
  std::sort(elements_.begin(), elements_.end());
  finish_construction(opt);
}

void PermGroup::finish_construction(Options opt) {
  const long long n = order();
  if (!elements_[0].is_identity())
    throw InternalError("identity is not the canonically first element");

  // Inverse table.
  inv_.resize(n);
  for (long long i = 0; i < n; ++i) {
    int j = index_of(elements_[i].inverse());
    if (j < 0) throw InternalError("element set not closed under inverse");
    inv_[i] = j;
  }

  // Multiplication table for small orders.
  if (n <= opt.mult_table_max_order) {
    mult_.resize(static_cast<size_t>(n) * n);
    for (long long a = 0; a < n; ++a)
      for (long long b = 0; b < n; ++b) {
        int m = index_of(compose(elements_[a], elements_[b]));
        if (m < 0) throw InternalError("element set not closed under product");
        mult_[a * n + b] = m;
      }
  }

  // Conjugation tables for the stored generators.
  conj_gen_.resize(gens_.size());
  for (size_t gi = 0; gi < gens_.size(); ++gi) {
    conj_gen_[gi].resize(n);
    const Permutation& g = gens_[gi];
    const Permutation ginv = g.inverse();
    for (long long e = 0; e < n; ++e) {
      int c = index_of(compose(compose(ginv, elements_[e]), g));
      if (c < 0) throw InternalError("element set not closed under conjugation");
      conj_gen_[gi][e] = c;
    }
  }

  // Stabilizer chain from the element filtration: level by level, restrict
  // to the elements fixing the previous base points.
  std::vector<int> live(n);
  std::iota(live.begin(), live.end(), 0);
  for (int pt = 0; pt < degree_ && live.size() > 1; ++pt) {
    StabilizerLevel lvl;
    lvl.base_point = pt;
    lvl.transversal.assign(degree_, -1);
    for (int e : live) {
      int img = elements_[e](pt);
      if (lvl.transversal[img] < 0) {
        lvl.transversal[img] = e;  // ascending scan: canonical minimal rep
        lvl.orbit.push_back(img);
      }
    }
    if (lvl.orbit.size() <= 1) continue;  // pt already fixed by all
    std::sort(lvl.orbit.begin(), lvl.orbit.end());
    std::vector<int> next;
    for (int e : live)
      if (elements_[e](pt) == pt) next.push_back(e);
    live = std::move(next);
    chain_.push_back(std::move(lvl));
  }
  long long prod = 1;
  for (const auto& lvl : chain_) prod *= static_cast<long long>(lvl.orbit.size());
  if (prod != n)
    throw InternalError("stabilizer chain orbit sizes do not multiply to the order");

  // Conjugacy classes: partition by breadth-first conjugation with the
  // generators, scanning ascending so each representative is minimal.
  classes_.class_of.assign(n, -1);
  for (long long e = 0; e < n; ++e) {
    if (classes_.class_of[e] >= 0) continue;
    int cls = classes_.count();
    classes_.reps.push_back(static_cast<int>(e));
    classes_.class_of[e] = cls;
    std::vector<int> work{static_cast<int>(e)};
    long long size = 1;
    while (!work.empty()) {
      int x = work.back();
      work.pop_back();
      for (size_t gi = 0; gi < gens_.size(); ++gi) {
        int y = conj_gen_[gi][x];
        if (classes_.class_of[y] < 0) {
          classes_.class_of[y] = cls;
          work.push_back(y);
          ++size;
        }
      }
    }
    classes_.sizes.push_back(size);
  }
  classes_.inverse_class.resize(classes_.count());
  for (int c = 0; c < classes_.count(); ++c)
    classes_.inverse_class[c] = classes_.class_of[inv_[classes_.reps[c]]];
  classes_.exponent = 1;
  for (int c = 0; c < classes_.count(); ++c)
    classes_.exponent =
        std::lcm(classes_.exponent, elements_[classes_.reps[c]].element_order());
}

int PermGroup::index_of(const Permutation& p) const {
  if (p.degree() != degree_) return -1;
  auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
  if (it != elements_.end() && *it == p)
    return static_cast<int>(it - elements_.begin());
  return -1;
}

bool PermGroup::chain_contains(const Permutation& p) const {
  if (p.degree() != degree_) return false;
  Permutation cur = p;
  for (const auto& lvl : chain_) {
    int img = cur(lvl.base_point);
    if (img == lvl.base_point) continue;
    int t = lvl.transversal[img];
    if (t < 0) return false;
    cur = compose(cur, elements_[t].inverse());
    if (cur(lvl.base_point) != lvl.base_point)
      throw InternalError("sift failed to fix the base point");
  }
  return cur.is_identity();
}

int PermGroup::mul(int a, int b) const {
  if (!mult_.empty()) return mult_[static_cast<size_t>(a) * order() + b];
  int m = index_of(compose(elements_[a], elements_[b]));
  if (m < 0) throw InternalError("product left the element set");
  return m;
}

int PermGroup::conj(int e, int by) const { return mul(mul(inv_[by], e), by); }

int PermGroup::power(int e, long long k) const {
  long long ord = order();
  k %= ord;  // element order divides group order
  if (k < 0) k += ord;
  int acc = 0;  // identity
  int base = e;
  while (k) {
    if (k & 1) acc = mul(acc, base);
    base = mul(base, base);
    k >>= 1;
  }
  return acc;
}

PermGroup subgroup_from_elements(const PermGroup& G, const ElementSet& elems) {
  if (elems.capacity() != G.order())
    throw InputError("element set capacity does not match the group order");
  std::vector<int> idx = elems.to_indices();
  if (idx.empty() || idx[0] != G.identity_index())
    throw InputError("subgroup element set must contain the identity");
  // greedy_generators re-closes from the selected generators and compares
  // with the given set, so closedness is always verified as a byproduct.
  std::vector<int> gen_idx = greedy_generators(G, elems);
  PermGroup H;
  H.degree_ = G.degree();
  H.elements_.reserve(idx.size());
  for (int i : idx) H.elements_.push_back(G.element(i));
  // Ambient order is lexicographic, so the subsequence is already sorted.
  for (int i : gen_idx) H.gens_.push_back(G.element(i));
  H.parent_ = &G;
  H.parent_index_ = std::move(idx);
  H.finish_construction(PermGroup::Options{});
  return H;
}

ElementSet closure_from(const PermGroup& G, const std::vector<int>& gen_idxs) {
  ElementSet set(static_cast<int>(G.order()));
  set.set(G.identity_index());
  std::vector<int> work{G.identity_index()};
  while (!work.empty()) {
    int x = work.back();
    work.pop_back();
    for (int g : gen_idxs) {
      int y = G.mul(x, g);
      if (!set.test(y)) {
        set.set(y);
        work.push_back(y);
      }
    }
  }
  return set;
}

std::vector<int> greedy_generators(const PermGroup& G, const ElementSet& elems) {
  std::vector<int> gens;
  ElementSet have(static_cast<int>(G.order()));
  have.set(G.identity_index());
  long long target = elems.count();
  if (have.count() == target) return gens;
  std::vector<int> idx = elems.to_indices();
  for (int e : idx) {
    if (have.test(e)) continue;
    gens.push_back(e);
    have = closure_from(G, gens);
    if (have.count() == target) break;
  }
  if (!(have == elems))
    throw InputError("element set is not closed under the group operation");
  return gens;
}

ElementSet derived_set(const PermGroup& G, const ElementSet& H) {
  // Commutators of the subgroup generators, then the normal closure
  // inside the subgroup.
  std::vector<int> gens = greedy_generators(G, H);
  if (gens.empty()) {
    ElementSet t(static_cast<int>(G.order()));
    t.set(G.identity_index());
    return t;
  }
  std::vector<int> comms;
  for (int a : gens)
    for (int b : gens) {
      int c = G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b));
      comms.push_back(c);
    }
  ElementSet seed = closure_from(G, comms);
  return normal_closure_set(G, H, seed);
}

ElementSet normal_closure_set(const PermGroup& G, const ElementSet& K,
                              const ElementSet& H) {
  if (!H.is_subset_of(K))
    throw InputError("normal closure target must lie inside the ambient subgroup");
  std::vector<int> kgens = greedy_generators(G, K);
  std::vector<int> gens = greedy_generators(G, H);
  ElementSet cur = closure_from(G, gens);
  for (;;) {
    std::vector<int> added;
    for (int k : kgens) {
      std::vector<int> conj_gens;
      cur.for_each([&](int e) { conj_gens.push_back(G.conj(e, k)); });
      for (int c : conj_gens)
        if (!cur.test(c)) added.push_back(c);
    }
    if (added.empty()) return cur;
    for (int a : added) gens.push_back(a);
    cur = closure_from(G, gens);
  }
}

std::vector<ElementSet> derived_series_sets(const PermGroup& G) {
  std::vector<ElementSet> series;
  series.push_back(ElementSet::full(static_cast<int>(G.order())));
  for (;;) {
    ElementSet next = derived_set(G, series.back());
    if (next == series.back()) break;
    series.push_back(next);
    if (next.count() == 1) break;
  }
  return series;
}

bool is_solvable(const PermGroup& G) {
  return derived_series_sets(G).back().count() == 1;
}

ElementSet normalizer_set(const PermGroup& G, const ElementSet& H) {
  ElementSet out(static_cast<int>(G.order()));
  std::vector<int> members = H.to_indices();
  for (long long g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (int h : members) {
      if (!H.test(G.conj(h, static_cast<int>(g)))) {
        ok = false;
        break;
      }
    }
    if (ok) out.set(static_cast<int>(g));
  }
  return out;
}

bool is_normal(const PermGroup& G, const ElementSet& H) {
  // Invariance under generator conjugation suffices.
  const long long n = G.order();
  for (size_t gi = 0; gi < G.generators().size(); ++gi) {
    for (long long e = 0; e < n; ++e) {
      if (!H.test(static_cast<int>(e))) continue;
      if (!H.test(G.conj_by_gen(static_cast<int>(e), static_cast<int>(gi))))
        return false;
    }
  }
  return true;
}

bool is_subnormal(const PermGroup& G, const ElementSet& H) {
  ElementSet K = ElementSet::full(static_cast<int>(G.order()));
  for (;;) {
    if (K == H) return true;
    ElementSet next = normal_closure_set(G, K, H);
    if (next == K) return false;  // stabilized above H
    K = next;
  }
}

PermGroup derived_subgroup(const PermGroup& G) {
  ElementSet d = derived_set(G, ElementSet::full(static_cast<int>(G.order())));
  return subgroup_from_elements(G, d);
}

std::vector<long long> derived_series_orders(const PermGroup& G) {
  std::vector<long long> out;
  for (const auto& s : derived_series_sets(G)) out.push_back(s.count());
  return out;
}

std::vector<int> power_map(const PermGroup& G, long long k) {
  const ConjugacyData& cd = G.classes();
  std::vector<int> out(cd.count());
  for (int c = 0; c < cd.count(); ++c)
    out[c] = cd.class_of[G.power(cd.reps[c], k)];
  return out;
}

}  // namespace amc
