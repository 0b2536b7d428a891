#pragma once

#include <string>
#include <vector>

#include "amcheck/perm_group.hpp"

namespace amc {

// Named families.  All constructors honour the order cap in Options.
PermGroup symmetric_group(int n, PermGroup::Options opt = {});
PermGroup alternating_group(int n, PermGroup::Options opt = {});
PermGroup cyclic_group(int n, PermGroup::Options opt = {});
// Dihedral group of the given (even) order, acting on the vertices of the
// (order/2)-gon; small cases fall back to faithful actions of degree <= 4.
PermGroup dihedral_group(int order, PermGroup::Options opt = {});
// The groups of invertible 2x2 matrices over the field with three
// elements (determinant 1, respectively arbitrary), acting on the eight
// nonzero column vectors.  Both use the same vector ordering, so the
// determinant-1 group is a normal subgroup of the full one under the
// shared action.
PermGroup sl2_3(PermGroup::Options opt = {});
PermGroup gl2_3(PermGroup::Options opt = {});
// Signed permutations of n coordinates (the symmetry group of the
// n-dimensional hypercube), acting on the 2n signed axes; order 2^n * n!.
PermGroup weyl_b(int n, PermGroup::Options opt = {});

// Direct product acting on the disjoint union of the factors' points,
// with element-index maps in both directions.
struct DirectProduct {
  PermGroup group;
  std::vector<int> embed1, embed2;  // factor element idx -> product idx
  std::vector<int> proj1, proj2;    // product idx -> factor element idx
  std::vector<int> pair_index;      // e1 * |G2| + e2 -> product idx
};
DirectProduct direct_product(const PermGroup& a, const PermGroup& b,
                             PermGroup::Options opt = {});

// Wreath product base wr top in its imprimitive action: top (on k points)
// permutes k blocks, each carrying a copy of base (on m points); degree
// m*k, order |base|^k * |top|.
PermGroup wreath_product(const PermGroup& base, const PermGroup& top,
                         PermGroup::Options opt = {});

// Quotient by a normal subgroup, realized by the action on cosets.  Coset
// points are numbered by ascending minimal element index.  image_of maps
// each element index of G to the element index of its image in the
// quotient group.
struct Quotient {
  PermGroup group;
  std::vector<int> coset_of;  // G element idx -> coset point
  std::vector<int> image_of;  // G element idx -> quotient element idx
};
Quotient quotient(const PermGroup& G, const ElementSet& N);

// Group files: first line "degree <n>", then one generator per line in
// 1-indexed disjoint cycle notation; '#' starts a comment; "()" denotes
// the identity.  Written files round-trip bit-exactly.
PermGroup load_group(const std::string& path, PermGroup::Options opt = {});
PermGroup parse_group_text(const std::string& text, PermGroup::Options opt = {});
void save_group(const PermGroup& G, const std::string& path);
std::string group_file_text(const PermGroup& G);

}  // namespace amc
