#pragma once
#include <iosfwd>
#include <string>

#include "rcpolar/common.hpp"
#include "rcpolar/construction.hpp"

namespace rcpolar {

struct PpaCriterion {
  enum class Kind { GA, BEC };
  Kind kind = Kind::GA;
  double design_snr_db = 3.5;  // GA
  double eps = 0.5;            // BEC
};

// order[0] is punctured first; prefixes give the nested pattern family
struct PunctureOrder {
  int base_n = 0;
  IndexSet order;
  std::string criterion = "GA";  // "GA" | "BEC"
  double design_snr_db = 0.0;
  double eps = 0.0;
  IndexSet info_set;               // base info set the criterion used
  std::vector<double> step_bound;  // union bound after puncturing order[0..m]
  void validate() const;
};

// per-input error probabilities of the base code under one candidate pattern
std::vector<double> criterion_error_probs(int base_n, const PpaCriterion& crit,
                                          const std::vector<uint8_t>& punct_mask);
double criterion_bound(int base_n, const IndexSet& info_set, const PpaCriterion& crit,
                       const IndexSet& punct);

struct PpaDiagnostics {
  uint64_t evaluations = 0;
  bool keep_scores = false;
  std::vector<std::vector<double>> scores;  // [step][candidate slot], -1 for punctured
};

// Greedy progressive search: at each step puncture the output whose addition
// minimizes the union bound over the fixed info set. N'(N'+1)/2 evaluations;
// scores within 1e-12 relative are ties and go to the lowest index.
PunctureOrder ppa(int base_n, const IndexSet& info_set, const PpaCriterion& crit,
                  PpaDiagnostics* diag = nullptr);

struct ExhaustiveResult {
  IndexSet pattern;
  double bound = 0.0;
  uint64_t evaluated = 0;
};
// validation oracle only; throws when C(N',m) exceeds the cap
ExhaustiveResult exhaustive_search(int base_n, const IndexSet& info_set,
                                   const PpaCriterion& crit, int m, uint64_t cap = 2000000);

// regular pattern on the mother code: {i : i mod 2^p in first m of order}
IndexSet expand_regular(const PunctureOrder& order, int m, int n);

void write_puncture_order(std::ostream& os, const PunctureOrder& po);
PunctureOrder read_puncture_order(std::istream& is, const std::string& name = "<stream>");
void write_puncture_order_file(const std::string& path, const PunctureOrder& po);
PunctureOrder read_puncture_order_file(const std::string& path);

}  // namespace rcpolar
