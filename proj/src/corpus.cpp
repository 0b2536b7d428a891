#include "amcheck/corpus.hpp"

#include <chrono>

#include "amcheck/group_spec.hpp"

namespace amc {

const std::vector<CorpusEntry>& corpus_catalog() {
  //                     spec      slow   obs    mon    quasi  am     sam    nam
  static const std::vector<CorpusEntry> catalog = {
      {"C1",       false, false, true,  true,  true,  true,  true},
      {"C2",       false, false, true,  true,  true,  true,  true},
      {"C3",       false, false, true,  true,  true,  true,  true},
      {"C4",       false, false, true,  true,  true,  true,  true},
      {"C5",       false, false, true,  true,  true,  true,  true},
      {"C6",       false, false, true,  true,  true,  true,  true},
      {"C8",       false, false, true,  true,  true,  true,  true},
      {"C12",      false, false, true,  true,  true,  true,  true},
      {"C2xC2",    false, false, true,  true,  true,  true,  true},
      {"C3xC3",    false, false, true,  true,  true,  true,  true},
      {"D8",       false, false, true,  true,  true,  true,  true},
      {"D10",      false, false, true,  true,  true,  true,  true},
      {"D12",      false, false, true,  true,  true,  true,  true},
      {"S3",       false, false, true,  true,  true,  true,  true},
      {"A4",       false, false, true,  true,  true,  true,  true},
      {"S4",       false, false, true,  true,  true,  false, false},
      {"S5",       false, false, false, false, true,  false, false},
      {"A5",       false, false, false, false, true,  false, false},
      {"SL2_3",    false, false, false, false, true,  false, false},
      {"GL2_3",    false, false, false, false, false, false, false},
      {"S3xC4",    false, false, true,  true,  true,  true,  true},
      {"S3xS3",    false, false, true,  true,  true,  true,  true},
      {"S3wrC2",   false, false, true,  true,  true,  true,  false},
      {"WB2",      false, true,  true,  true,  true,  true,  true},
      {"WB3",      false, true,  true,  true,  true,  false, false},
      {"S6",       true,  false, false, false, true,  false, false},
      {"A6",       true,  false, false, false, false, false, false},
      {"WB4",      true,  true,  true,  true,  true,  false, false},
  };
  return catalog;
}

CorpusVerdicts run_corpus_entry(const CorpusEntry& e, AnalysisOptions opt) {
  auto t0 = std::chrono::steady_clock::now();
  PermGroup g = group_from_spec(e.spec);
  AnalysisSession s = make_session(g, opt);
  CorpusVerdicts v;
  v.spec = e.spec;
  v.order = g.order();
  v.num_irreducibles = s.table.rows();
  v.monomial = check_monomial(s).verdict;
  v.quasi_monomial = check_quasi_monomial(s).verdict;
  v.am = check_am(s).verdict;
  v.sam = check_sam(s).verdict;
  v.nam = check_nam(s).verdict;
  if (s.table.rows() <= 25) {
    v.profile_checked = true;
    v.profile_consistent = profile_crosscheck(s);
  }
  v.millis = std::chrono::duration<double, std::milli>(
                 std::chrono::steady_clock::now() - t0)
                 .count();
  return v;
}

bool matches_expectations(const CorpusVerdicts& v, const CorpusEntry& e) {
  return v.monomial == e.monomial && v.quasi_monomial == e.quasi_monomial &&
         v.am == e.am && v.sam == e.sam && v.nam == e.nam;
}

}  // namespace amc
