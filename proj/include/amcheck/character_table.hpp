#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amcheck/perm_group.hpp"
#include "amcheck/prime_field.hpp"

namespace amc {

// All character arithmetic runs modulo a prime p chosen so that
//   p == 1 (mod e)   with e a multiple of every relevant element order,
//   p  >  |G|        so multiplicities and degrees are recovered exactly.
// Character values are then images of sums of e-th roots of unity under a
// fixed ring map into F_p, and scalar products of genuine characters are
// exact integers below p.  One context is shared by a whole analysis so
// values of a group, its subgroups, and its quotients are comparable.
struct AnalysisContext {
  long long exponent = 1;  // e
  uint32_t p = 2;
  uint32_t omega = 1;  // fixed primitive e-th root of unity in F_p
  PrimeField field{2};
};

AnalysisContext make_context(const PermGroup& G);
// Same choice rule from raw parameters (e must be positive).
AnalysisContext make_context_for(long long exponent, long long min_order);

// Rows are irreducible characters in canonical order: ascending degree,
// then lexicographic on the value residues.  Columns follow the group's
// conjugacy class order.
struct CharacterTable {
  const PermGroup* group = nullptr;
  AnalysisContext ctx;
  int num_classes = 0;
  std::vector<long long> degrees;             // row -> exact degree
  std::vector<std::vector<uint32_t>> values;  // row -> class -> value mod p
  int rows() const { return static_cast<int>(degrees.size()); }
};

// Burnside/Dixon table computation: split F_p^r under the commuting
// class-sum matrices until every eigenspace is one-dimensional, then
// normalize each eigenvector into a character row.  Orthogonality and
// the degree sum are verified before returning (InternalError on any
// mismatch).  The context must satisfy the conditions above for G
// (InputError otherwise).
CharacterTable character_table(const PermGroup& G, const AnalysisContext& ctx);
CharacterTable character_table(const PermGroup& G);

// Structure-constant matrix of class i: entry [j][k] counts pairs
// (x, y) in C_i x C_j with x*y equal to a fixed element of C_k.  The
// count is independent of the chosen element.  Returned reduced mod p.
std::vector<std::vector<uint32_t>> class_matrix(const PermGroup& G, int i,
                                                const AnalysisContext& ctx);

// Exact preimage of one table entry as a nonnegative combination of e-th
// roots of unity: value = sum_k coeffs[k] * zeta_e^k.  Coefficients are
// eigenvalue multiplicities, each at most the row degree, summing to the
// degree; only indices divisible by e/order(rep) can be nonzero.
struct CyclotomicValue {
  long long e = 1;
  std::vector<long long> coeffs;
  std::string to_string() const;
};

CyclotomicValue lift_value(const CharacterTable& T, int row, int cls);

// Render a whole table with lifted values, one row per character.
std::string table_text(const CharacterTable& T);

}  // namespace amc
