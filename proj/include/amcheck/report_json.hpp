#pragma once

#include <string>

#include "amcheck/property_check.hpp"

namespace amc {

// Stable machine-readable report (field names are an interface):
//   {"group": {"spec", "order", "degree", "num_irreducibles"},
//    "property": "am|nam|sam|relative_am|monomial|quasi_monomial",
//    "normal_subgroup": {"class_id", "order", "generators"} | null,
//    "verdict": bool,
//    "certificates": [{"pair": [j, k],
//                      "subgroup": {"class_id", "order", "generators"},
//                      "character": {"kind": "linear|irreducible",
//                                    "index"}}],
//    "uncovered_pair": [j, k] | null,
//    "stats": {"candidates", "inductions", "millis"}}
// Generators are rendered in 1-indexed disjoint cycle notation.  millis
// is rounded wall time and the only field allowed to vary between
// otherwise identical runs.
std::string report_to_json(AnalysisSession& s, const std::string& spec,
                           const PropertyReport& rep,
                           const ElementSet* normal_subgroup = nullptr);

struct CertifyResult {
  bool ok = false;
  std::string reason;  // empty when ok
};

// Independent revalidation of a report against the group it claims to
// describe.  Every certificate is re-derived from scratch: the stated
// generators are closed into a subgroup, the stated character is
// rebuilt, the induction is recomputed with the literal averaging
// formula, and the defining conditions of the stated property are
// re-checked (membership and non-membership, degree match for monomial
// witnesses, sole-constituent for quasi-monomial ones, subgroup
// normality/subnormality for the restricted pools, containment of the
// normal subgroup and irreducible restriction for relative reports).
// Passes only when, additionally, the certificates cover every ordered
// pair of distinct rows (respectively every row).  Structurally invalid
// input — unparseable JSON, missing or mistyped fields, a group that
// does not match — throws InputError; a well-formed report that fails
// revalidation returns ok = false with the offending certificate in the
// reason.
CertifyResult certify_report(const PermGroup& G, const std::string& json_text,
                             AnalysisOptions opt = {});

}  // namespace amc
