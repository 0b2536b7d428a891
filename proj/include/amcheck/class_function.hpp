#pragma once

#include <cstdint>
#include <vector>

#include "amcheck/character_table.hpp"
#include "amcheck/construct.hpp"

namespace amc {

// Class functions are plain value vectors indexed by canonical conjugacy
// class, with entries mod the shared context prime.  Multiplicities of
// genuine characters stay below the prime, so scalar products of
// characters are exact integers.

// Subgroup class index -> ambient class index.  H must act on the same
// points and consist of ambient elements (InputError otherwise).
std::vector<int> fusion_map(const PermGroup& G, const PermGroup& H);

// <a, b> = |G|^-1 sum_j |C_j| a(j) b(j*), least nonnegative residue.
uint32_t scalar_product(const PermGroup& G, const AnalysisContext& ctx,
                        const std::vector<uint32_t>& a,
                        const std::vector<uint32_t>& b);

// Induction from H to G through class fusion:
//   theta^G(k) = (|G| / (|H| |C_k|)) * sum_{c -> k} |c| theta(c).
std::vector<uint32_t> induce(const PermGroup& G, const PermGroup& H,
                             const AnalysisContext& ctx,
                             const std::vector<uint32_t>& theta,
                             const std::vector<int>& fusion);
std::vector<uint32_t> induce(const PermGroup& G, const PermGroup& H,
                             const AnalysisContext& ctx,
                             const std::vector<uint32_t>& theta);

// Independent slow path kept for cross-checking and certificate
// revalidation: the literal averaging formula
//   theta^G(g) = |H|^-1 sum_{x in G} theta0(x g x^-1).
std::vector<uint32_t> induce_naive(const PermGroup& G, const PermGroup& H,
                                   const AnalysisContext& ctx,
                                   const std::vector<uint32_t>& theta);

// Restriction from G to H through class fusion.
std::vector<uint32_t> restrict_to(const PermGroup& G, const PermGroup& H,
                                  const std::vector<uint32_t>& chi,
                                  const std::vector<int>& fusion);
std::vector<uint32_t> restrict_to(const PermGroup& G, const PermGroup& H,
                                  const std::vector<uint32_t>& chi);

// Bit i set iff row i of the table occurs in f.  Tables with more than
// 64 rows are refused (CapError) — constituent sets are packed words.
uint64_t constituent_mask(const CharacterTable& T,
                          const std::vector<uint32_t>& f);

// All degree-1 characters of H: rows of the derived-quotient table
// pulled back along the projection, in that table's row order.
std::vector<std::vector<uint32_t>> linear_characters(
    const PermGroup& H, const AnalysisContext& ctx);

// Pull a quotient-table row back to the source group.
std::vector<uint32_t> inflate_through(const PermGroup& H, const Quotient& q,
                                      const std::vector<uint32_t>& qrow);

std::vector<uint32_t> trivial_character(const PermGroup& G);

}  // namespace amc
