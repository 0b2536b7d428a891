#pragma once

#include <string>
#include <vector>

#include "amcheck/property_check.hpp"

namespace amc {

// One catalog group with its expected verdicts.  The expectations were
// frozen from engine runs that the constituent-set profile machinery
// independently confirmed, and they agree with every published verdict
// the catalog touches.  Entries flagged `observation` (the signed
// permutation groups) are reported but never treated as ground truth by
// callers that gate on the catalog.
struct CorpusEntry {
  const char* spec;        // buildable by group_from_spec
  bool slow;               // only part of the slow tier
  bool observation;        // report, don't gate
  bool monomial;
  bool quasi_monomial;
  bool am;
  bool sam;
  bool nam;
};

const std::vector<CorpusEntry>& corpus_catalog();

// Verdicts computed fresh for one entry.
struct CorpusVerdicts {
  std::string spec;
  long long order = 0;
  int num_irreducibles = 0;
  bool monomial = false;
  bool quasi_monomial = false;
  bool am = false;
  bool sam = false;
  bool nam = false;
  bool profile_checked = false;    // profile machinery ran (r <= 25)
  bool profile_consistent = false; // ... and agreed with the coverage engine
  double millis = 0.0;
};

CorpusVerdicts run_corpus_entry(const CorpusEntry& e,
                                AnalysisOptions opt = {});

// All five computed verdicts equal the entry's expectations.
bool matches_expectations(const CorpusVerdicts& v, const CorpusEntry& e);

}  // namespace amc
