#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "amcheck/character_table.hpp"
#include "amcheck/class_function.hpp"
#include "amcheck/subgroup_lattice.hpp"

namespace amc {

// Which pool of (subgroup, character) candidates the separating
// inductions are drawn from.
enum class SourceKind {
  AllSubgroupsLinear,  // linear characters of arbitrary subgroups
  NormalLinear,        // linear characters of normal subgroups
  SubnormalLinear,     // linear characters of subnormal subgroups
  RelativeIrr,         // irreducible characters of overgroups of a fixed
                       // normal subgroup that restrict irreducibly to it
};

struct AnalysisOptions {
  long long subgroup_limit = 20000;
  int threads = 1;
};

// Everything cached about one subgroup class: the canonical
// representative as a group of its own, its class fusion into the
// ambient group, its linear characters, and — built on demand — its full
// character table.
struct SubgroupClassData {
  explicit SubgroupClassData(PermGroup g) : sub(std::move(g)) {}
  PermGroup sub;
  std::vector<int> fusion;                      // sub class -> ambient class
  std::vector<std::vector<uint32_t>> linears;   // degree-1 characters
  bool has_table = false;
  CharacterTable table;                         // all irreducibles of sub
};

// One analysis session per group: a shared arithmetic context, the
// ambient character table, the full subgroup lattice, and lazily built
// per-class caches.  The group must outlive the session and stay at the
// same address.  Instances are not copyable (the table points back into
// the cache).
struct AnalysisSession {
  const PermGroup* group = nullptr;
  AnalysisOptions opt;
  AnalysisContext ctx;
  CharacterTable table;
  SubgroupLattice lattice;
  std::vector<std::unique_ptr<SubgroupClassData>> class_data;
};

// Builds the context, the table, and the lattice.  Groups with more than
// 64 irreducible characters are refused (CapError): constituent sets are
// packed into one machine word.
AnalysisSession make_session(const PermGroup& G, AnalysisOptions opt = {});

// Cache accessors.  Building happens on first touch and is not
// thread-safe; the check drivers materialize every cache they need
// before entering a parallel section.
SubgroupClassData& class_data(AnalysisSession& s, int class_id);
const CharacterTable& subgroup_table(AnalysisSession& s, int class_id);

// A candidate names one inducible character: either linears[char_index]
// or table row char_index of the class representative.
struct Candidate {
  int class_id = -1;
  int char_index = -1;
  bool linear_kind = true;
};

// The candidate pool in canonical order: subgroup classes ascending,
// character index ascending.  RelativeIrr needs the normal subgroup and
// keeps only characters whose restriction to it stays irreducible.
std::vector<Candidate> enumerate_candidates(AnalysisSession& s,
                                            SourceKind kind,
                                            const ElementSet* relative_to =
                                                nullptr);

// Constituent bitmask of the candidate's induced character (bit i = row
// i of the session table occurs).  Requires the candidate's class cache
// to be built already when called concurrently.
uint64_t candidate_mask(AnalysisSession& s, const Candidate& c);

// Why one ordered pair (or one row) is covered: the inducing subgroup
// and character, plus the induced character's constituent mask.
struct WitnessCertificate {
  std::array<int, 2> pair{-1, -1};  // (covered row, separated row);
                                    // per-character checks use (j, j)
  int subgroup_class = -1;
  long long subgroup_order = 0;
  std::vector<int> subgroup_gens;   // ambient element indices
  bool linear_kind = true;
  int char_index = -1;
  uint64_t mask = 0;
};

struct PropertyReport {
  std::string property;
  bool verdict = false;
  std::vector<WitnessCertificate> certificates;  // covered pairs, row-major
  bool has_uncovered = false;
  std::array<int, 2> uncovered_pair{-1, -1};     // first uncovered pair
  long long candidates = 0;   // pool size enumerated
  long long inductions = 0;   // induced characters actually computed
  double millis = 0.0;        // wall time; never part of comparisons
};

// Ordered-pair separation checks.  The engine evaluates candidate masks
// in fixed blocks of 32 (parallel within a block, marking serialized in
// candidate order), so verdict, witnesses, and counters are identical
// for every thread count; early exit happens at block boundaries.
PropertyReport check_am(AnalysisSession& s);
PropertyReport check_nam(AnalysisSession& s);
PropertyReport check_sam(AnalysisSession& s);
// N must be a normal subgroup (InputError otherwise).
PropertyReport check_relative_am(AnalysisSession& s, const ElementSet& N);

// Per-character checks over the all-subgroups linear pool.  A row j is
// witnessed when the induced character equals it exactly (membership
// plus matching degree), respectively when row j is its only
// constituent.  Certificates carry pair (j, j).
PropertyReport check_monomial(AnalysisSession& s);
PropertyReport check_quasi_monomial(AnalysisSession& s);

// Serial mirror of the coverage loop with per-candidate early exit; the
// verdict, witnesses, and uncovered pair always match the block engine,
// the induction counter generally does not.  Kept as an independently
// simple reference for tests and benchmarks.
PropertyReport coverage_check_reference(AnalysisSession& s, SourceKind kind,
                                        const ElementSet* relative_to =
                                            nullptr);

// The constituent-set profile: all masks of induced linear characters
// (no early exit), their closure under union, and the layer counts
// L[t] = number of closure sets of size t, together with the thresholds
//   threshold[t] = C(r,t) - C(r-2,t-1) + 1,   1 <= t <= r-1.
// The group is almost monomial exactly when some L[t] reaches its
// threshold, equivalently when L[r-1] = r; L[1] = r characterizes
// quasi-monomial; L[r] = 1 always.  Refused for r > 25 (CapError): the
// closure can approach 2^r sets.
struct LtProfile {
  int r = 0;
  std::vector<uint64_t> basic_masks;  // distinct candidate masks, ascending
  std::vector<uint64_t> closure;      // union closure, ascending
  std::vector<long long> L;           // size r+1, L[t] for 1 <= t <= r
  std::vector<long long> threshold;   // size r, [t] valid for 1 <= t <= r-1
  bool threshold_met = false;         // exists t with L[t] >= threshold[t]
  bool top_layer_full = false;        // L[r-1] == r (false when r == 1)
  long long candidates = 0;
  long long inductions = 0;
  double millis = 0.0;
};

LtProfile lt_profile(AnalysisSession& s);

// Cross-validates the two machineries: the coverage verdict must equal
// both profile characterizations, the bottom layer must match the
// quasi-monomial verdict, and the top layer must be the single full
// set.  Groups with one irreducible character satisfy everything
// trivially.  Returns true when all comparisons agree.
bool profile_crosscheck(AnalysisSession& s);

// Hypotheses under which the separation property descends to a normal
// subgroup N:
//   (i)  every irreducible of the ambient group restricts irreducibly
//        to N, and
//   (ii) for every subgroup class rep H, linear lambda of H, and
//        irreducible phi with <lambda^G, phi> = 0, the inner product
//        <lambda^{NH}, (phi_N)^{NH}> over NH also vanishes.
// When both hold and the ambient group has the separation property, so
// does N.  Condition (ii) is checked in a dedicated wider arithmetic
// context so the inner products are exact; violating triples are
// reported against the session table's row numbering.  The linear index
// inside a triple follows the checker's own enumeration of H's linear
// characters.
struct DescentReport {
  bool restriction_condition = true;
  bool vanishing_condition = true;
  std::vector<int> reducible_rows;            // session rows violating (i)
  std::vector<std::array<int, 3>> violations; // (class, linear, row) for (ii)
};

DescentReport check_normal_descent(AnalysisSession& s, const ElementSet& N);

}  // namespace amc
