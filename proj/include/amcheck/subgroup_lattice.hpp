#pragma once

#include <string>
#include <vector>

#include "amcheck/perm_group.hpp"

namespace amc {

struct SubgroupRecord {
  ElementSet elems;
  long long order = 0;
  std::vector<int> gens;  // ambient element indices, greedy-minimal
  bool normal = false;
  bool subnormal = false;
  bool abelian = false;
  int class_id = -1;
};

// All subgroups of a group, in canonical order: ascending order, then the
// canonical set order on element bitsets.  Conjugacy classes of subgroups
// are numbered by their canonically minimal member ("class
// representative"); class ids follow the representatives' canonical
// order, so class 0 is always the trivial subgroup and the last class is
// the whole group.
struct SubgroupLattice {
  const PermGroup* group = nullptr;
  std::vector<SubgroupRecord> records;
  std::vector<int> class_reps;   // class id -> record index
  std::vector<int> class_sizes;  // class id -> number of conjugates

  int class_count() const { return static_cast<int>(class_reps.size()); }
  // Record index of the given subgroup, or -1.
  int find(const ElementSet& elems) const;
  const SubgroupRecord& rep(int class_id) const {
    return records[class_reps[class_id]];
  }
};

struct LatticeOptions {
  long long subgroup_limit = 20000;
  int threads = 1;
};

// Enumerate every subgroup by closing the cyclic subgroups under pairwise
// joins (joins of class representatives with all records suffice, the
// rest follows by conjugation).  Deterministic: the result is a closure,
// so the final canonicalized lattice is independent of discovery order
// and of the thread count.  Throws CapError when the subgroup count
// exceeds the limit.
SubgroupLattice enumerate_subgroups(const PermGroup& G,
                                    LatticeOptions opt = {});

// Class ids whose subgroups contain the given normal subgroup.
// (Containment of a normal subgroup is a class property.)
std::vector<int> overgroup_classes(const SubgroupLattice& L,
                                   const ElementSet& N);

// gcd(|N|, |G|/|N|) == 1.
bool is_hall(const PermGroup& G, const ElementSet& N);

// Record indices of the Sylow subgroups for the prime p (maximal
// p-power order present).
std::vector<int> sylow_records(const SubgroupLattice& L, long long p);

// One line per class: id, order, class size, flags, generator words.
std::string lattice_summary(const SubgroupLattice& L);

}  // namespace amc
