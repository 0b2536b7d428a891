#pragma once

#include <memory>
#include <string>
#include <vector>

#include "amcheck/element_set.hpp"
#include "amcheck/permutation.hpp"

namespace amc {

// Conjugacy classes of a PermGroup.  Classes are ordered by their minimal
// element index, so class 0 is always the class of the identity.
struct ConjugacyData {
  std::vector<int> reps;           // minimal element index per class
  std::vector<long long> sizes;    // class sizes
  std::vector<int> class_of;       // element index -> class index
  std::vector<int> inverse_class;  // class of rep^-1
  long long exponent = 1;          // lcm of element orders

  int count() const { return static_cast<int>(reps.size()); }
};

// One level of a stabilizer chain: the orbit of base_point under the
// subgroup fixing all previous base points, plus coset representatives.
struct StabilizerLevel {
  int base_point = -1;
  std::vector<int> orbit;        // points in the orbit, ascending
  std::vector<int> transversal;  // point -> element index mapping
                                 // base_point to that point, or -1
};

struct GroupOptions {
  long long max_order = 20160;
  // Full multiplication tables are kept only up to this order; larger
  // groups fall back to compose-and-search products.
  long long mult_table_max_order = 3000;
};

// A finite permutation group at desk scale.  Construction enumerates all
// elements (bounded by GroupOptions::max_order, exceeding it throws
// CapError), sorts them into the canonical lexicographic order, and
// derives a stabilizer chain, inverse/conjugation tables, a
// multiplication table for small orders, and the conjugacy class
// partition.  Instances are immutable after construction and safe to
// share across threads.
class PermGroup {
 public:
  using Options = GroupOptions;

  // Build from generators.  An empty generator list gives the trivial
  // group of the stated degree.
  PermGroup(int degree, std::vector<Permutation> generators,
            Options opt = {});

  int degree() const { return degree_; }
  long long order() const { return static_cast<long long>(elements_.size()); }
  const std::vector<Permutation>& generators() const { return gens_; }

  // Elements in canonical order: lexicographic on image tuples.  The
  // identity always has index 0.
  const std::vector<Permutation>& elements() const { return elements_; }
  const Permutation& element(int idx) const { return elements_[idx]; }
  int identity_index() const { return 0; }

  // Canonical index of p, or -1 if p is not in the group.
  int index_of(const Permutation& p) const;
  bool contains(const Permutation& p) const { return index_of(p) >= 0; }
  // Membership decided by sifting through the stabilizer chain; agrees
  // with contains() and exists as an independently checkable route.
  bool chain_contains(const Permutation& p) const;

  const std::vector<StabilizerLevel>& chain() const { return chain_; }

  // Index arithmetic.  mul follows the left-to-right convention:
  // element(mul(a,b)) == compose(element(a), element(b)).
  int mul(int a, int b) const;
  int inv(int a) const { return inv_[a]; }
  // Index of by^-1 * e * by.
  int conj(int e, int by) const;
  // Conjugation by the i-th generator, table-backed.
  int conj_by_gen(int e, int gen_idx) const { return conj_gen_[gen_idx][e]; }
  int power(int e, long long k) const;

  const ConjugacyData& classes() const { return classes_; }

  // Subgroup linkage.  Groups built by subgroup_from_elements remember
  // their ambient group and the map from local to ambient element indices.
  const PermGroup* parent() const { return parent_; }
  const std::vector<int>& parent_index() const { return parent_index_; }

 private:
  friend PermGroup subgroup_from_elements(const PermGroup&, const ElementSet&);
  PermGroup() = default;
  void finish_construction(Options opt);

  int degree_ = 0;
  std::vector<Permutation> gens_;
  std::vector<Permutation> elements_;
  std::vector<int> inv_;
  std::vector<std::vector<int>> conj_gen_;  // per generator
  std::vector<int> mult_;                   // order x order, possibly empty
  std::vector<StabilizerLevel> chain_;
  ConjugacyData classes_;
  const PermGroup* parent_ = nullptr;
  std::vector<int> parent_index_;
};

// The subgroup of G formed by the given element indices.  Verifies that
// the set contains the identity and is closed under the group operation
// (throws InputError otherwise).  The result shares G's degree, remembers
// G as parent, and maps local index i to the i-th set index.
PermGroup subgroup_from_elements(const PermGroup& G, const ElementSet& elems);

// Closure of the given element indices as a subgroup of G (breadth-first
// products; no cap needed, bounded by |G|).
ElementSet closure_from(const PermGroup& G, const std::vector<int>& gen_idxs);

// A small, deterministic generating list for a subgroup given by its
// element set: scan indices ascending, keep those enlarging the closure.
std::vector<int> greedy_generators(const PermGroup& G, const ElementSet& elems);

// Structural operations.  All subgroup arguments and results are element
// sets over G's canonical indexing.
ElementSet derived_set(const PermGroup& G, const ElementSet& H);
std::vector<ElementSet> derived_series_sets(const PermGroup& G);
bool is_solvable(const PermGroup& G);
ElementSet normal_closure_set(const PermGroup& G, const ElementSet& K,
                              const ElementSet& H);  // closure of H under K
ElementSet normalizer_set(const PermGroup& G, const ElementSet& H);
bool is_normal(const PermGroup& G, const ElementSet& H);
// H is subnormal in G iff the descending chain K_0 = G,
// K_{i+1} = normal closure of H in K_i reaches H.
bool is_subnormal(const PermGroup& G, const ElementSet& H);

// PermGroup-valued convenience wrappers.
PermGroup derived_subgroup(const PermGroup& G);
std::vector<long long> derived_series_orders(const PermGroup& G);

// Class of rep^k for every class (the k-th power map on classes).
std::vector<int> power_map(const PermGroup& G, long long k);

}  // namespace amc
