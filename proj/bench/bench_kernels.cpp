// Benchmark of the pair-coverage kernels: the serial per-candidate
// reference loop against the fixed-block engine at several thread
// counts, on warmed sessions so only the coverage loop itself is timed.
//
//   bench_kernels [--reps N] [--threads a,b,c] [group-spec ...]
//
// Each cell is the best wall time over the repetitions.  The final
// column confirms that every engine run reproduced the reference
// verdict, witnesses, and uncovered pair (counters are not compared;
// the block engine's induction count legitimately differs).

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "amcheck/errors.hpp"
#include "amcheck/group_spec.hpp"
#include "amcheck/property_check.hpp"

using namespace amc;

namespace {

double best_ms(int reps, const std::function<void()>& body) {
  double best = -1.0;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const double ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - t0)
            .count();
    if (best < 0 || ms < best) best = ms;
  }
  return best;
}

bool same_outcome(const PropertyReport& a, const PropertyReport& b) {
  if (a.verdict != b.verdict || a.has_uncovered != b.has_uncovered ||
      a.uncovered_pair != b.uncovered_pair ||
      a.certificates.size() != b.certificates.size())
    return false;
  for (size_t i = 0; i < a.certificates.size(); ++i) {
    const WitnessCertificate& x = a.certificates[i];
    const WitnessCertificate& y = b.certificates[i];
    if (x.pair != y.pair || x.subgroup_class != y.subgroup_class ||
        x.linear_kind != y.linear_kind || x.char_index != y.char_index ||
        x.mask != y.mask)
      return false;
  }
  return true;
}

std::vector<int> parse_thread_list(const std::string& csv) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos < csv.size()) {
    size_t comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    out.push_back(std::stoi(csv.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  int reps = 5;
  std::vector<int> threads = {1, 2, 4, 8};
  std::vector<std::string> specs;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--reps" && i + 1 < argc) {
      reps = std::stoi(argv[++i]);
    } else if (a == "--threads" && i + 1 < argc) {
      threads = parse_thread_list(argv[++i]);
    } else if (a == "--help" || a == "-h") {
      std::printf("usage: bench_kernels [--reps N] [--threads a,b,c] [group-spec ...]\n");
      return 0;
    } else {
      specs.push_back(a);
    }
  }
  if (specs.empty())
    specs = {"S4", "SL2_3", "GL2_3", "S3xS3", "S3wrC2", "S5", "WB3"};

  std::printf("%-10s %6s %8s %10s", "group", "pool", "verdict", "serial-ms");
  for (int t : threads) std::printf(" %9s", ("eng" + std::to_string(t) + "-ms").c_str());
  std::printf(" %6s\n", "agree");

  int bad = 0;
  for (const std::string& spec : specs) {
    try {
      PermGroup G = group_from_spec(spec);
      AnalysisSession s = make_session(G);

      // Warm every per-class cache so the timings cover the coverage
      // loop only.
      PropertyReport ref = coverage_check_reference(s, SourceKind::AllSubgroupsLinear);
      const double ref_ms = best_ms(reps, [&] {
        coverage_check_reference(s, SourceKind::AllSubgroupsLinear);
      });

      bool agree = true;
      std::vector<double> cells;
      for (int t : threads) {
        s.opt.threads = t;
        if (!same_outcome(ref, check_am(s))) agree = false;
        cells.push_back(best_ms(reps, [&] { check_am(s); }));
      }

      std::printf("%-10s %6lld %8s %10.3f", spec.c_str(), ref.candidates,
                  ref.verdict ? "yes" : "no", ref_ms);
      for (double ms : cells) std::printf(" %9.3f", ms);
      std::printf(" %6s\n", agree ? "yes" : "NO");
      if (!agree) ++bad;
    } catch (const std::exception& ex) {
      std::printf("%-10s skipped: %s\n", spec.c_str(), ex.what());
    }
  }
  return bad == 0 ? 0 : 1;
}
