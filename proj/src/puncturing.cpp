#include "rcpolar/puncturing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rcpolar {

namespace {

constexpr double kTieRelTol = 1e-12;

bool tie(double a, double b) {
  return std::abs(a - b) <= kTieRelTol * std::max(std::abs(a), std::abs(b));
}

IndexSet mask_to_set(const std::vector<uint8_t>& mask) {
  IndexSet s;
  for (uint32_t i = 0; i < mask.size(); i++)
    if (mask[i]) s.push_back(i);
  return s;
}

uint64_t binomial_capped(uint64_t n, uint64_t k, uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  uint64_t c = 1;
  for (uint64_t i = 0; i < k; i++) {
    c = c * (n - i) / (i + 1);  // exact: product of i+1 consecutive ints divisible
    if (c > 4 * cap) return c;  // early out, caller only compares against cap
  }
  return c;
}

}  // namespace

void PunctureOrder::validate() const {
  if (base_n < 0 || base_n > 16) throw ConfigError("puncture order: base_n out of range");
  size_t N = 1u << base_n;
  if (order.size() != N) throw ConfigError("puncture order: not a full permutation");
  std::vector<uint8_t> seen(N, 0);
  for (uint32_t i : order) {
    if (i >= N || seen[i]) throw ConfigError("puncture order: not a permutation");
    seen[i] = 1;
  }
  if (criterion != "GA" && criterion != "BEC")
    throw ConfigError("puncture order: unknown criterion " + criterion);
  if (info_set.empty()) throw ConfigError("puncture order: empty info set metadata");
}

std::vector<double> criterion_error_probs(int base_n, const PpaCriterion& crit,
                                          const std::vector<uint8_t>& punct_mask) {
  IndexSet punct = mask_to_set(punct_mask);
  if (crit.kind == PpaCriterion::Kind::GA) {
    Reliabilities rel = ga_construct(base_n, crit.design_snr_db, punct);
    return error_probs(rel);
  }
  BecChannels ch = bec_bit_channels(base_n, crit.eps, punct);
  return error_probs({Reliabilities::Kind::Z, ch.z});
}

double criterion_bound(int base_n, const IndexSet& info_set, const PpaCriterion& crit,
                       const IndexSet& punct) {
  std::vector<uint8_t> mask(1u << base_n, 0);
  for (uint32_t i : punct) {
    if (i >= mask.size()) throw std::invalid_argument("criterion_bound: index out of range");
    mask[i] = 1;
  }
  return union_bound(info_set, criterion_error_probs(base_n, crit, mask));
}

PunctureOrder ppa(int base_n, const IndexSet& info_set, const PpaCriterion& crit,
                  PpaDiagnostics* diag) {
  const uint32_t N = 1u << base_n;
  for (uint32_t i : info_set)
    if (i >= N) throw std::invalid_argument("ppa: info index out of range");
  if (info_set.empty()) throw std::invalid_argument("ppa: empty info set");

  PunctureOrder po;
  po.base_n = base_n;
  po.info_set = info_set;
  if (crit.kind == PpaCriterion::Kind::GA) {
    po.criterion = "GA";
    po.design_snr_db = crit.design_snr_db;
  } else {
    po.criterion = "BEC";
    po.eps = crit.eps;
  }

  std::vector<uint8_t> mask(N, 0);
  uint64_t evals = 0;
  for (uint32_t m = 0; m < N; m++) {
    double best = 0.0;
    int best_c = -1;
    std::vector<double> scores;
    if (diag && diag->keep_scores) scores.assign(N, -1.0);
    for (uint32_t c = 0; c < N; c++) {
      if (mask[c]) continue;
      mask[c] = 1;
      double s = union_bound(info_set, criterion_error_probs(base_n, crit, mask));
      mask[c] = 0;
      evals++;
      if (diag && diag->keep_scores) scores[c] = s;
      if (best_c < 0 || (s < best && !tie(s, best))) {
        best = s;
        best_c = (int)c;
      }
    }
    mask[best_c] = 1;
    po.order.push_back((uint32_t)best_c);
    po.step_bound.push_back(best);
    if (diag && diag->keep_scores) diag->scores.push_back(std::move(scores));
  }
  if (diag) diag->evaluations = evals;
  return po;
}

ExhaustiveResult exhaustive_search(int base_n, const IndexSet& info_set,
                                   const PpaCriterion& crit, int m, uint64_t cap) {
  const uint32_t N = 1u << base_n;
  if (m < 0 || (uint32_t)m > N) throw std::invalid_argument("exhaustive_search: bad m");
  if (binomial_capped(N, m, cap) > cap)
    throw std::runtime_error("exhaustive_search: combinatorial budget exceeded");

  ExhaustiveResult res;
  std::vector<uint8_t> mask(N, 0);
  std::vector<uint32_t> comb(m);
  for (int i = 0; i < m; i++) comb[i] = i;
  bool more = true;
  while (more) {
    std::fill(mask.begin(), mask.end(), 0);
    for (uint32_t c : comb) mask[c] = 1;
    double s = union_bound(info_set, criterion_error_probs(base_n, crit, mask));
    res.evaluated++;
    if (res.evaluated == 1 || (s < res.bound && !tie(s, res.bound))) {
      res.bound = s;
      res.pattern = comb;
    }
    // next lexicographic combination
    more = false;
    for (int i = m - 1; i >= 0; i--) {
      if (comb[i] < N - (m - i)) {
        comb[i]++;
        for (int j = i + 1; j < m; j++) comb[j] = comb[j - 1] + 1;
        more = true;
        break;
      }
    }
    if (m == 0) break;
  }
  return res;
}

IndexSet expand_regular(const PunctureOrder& order, int m, int n) {
  int p = order.base_n;
  if (p > n) throw std::invalid_argument("expand_regular: p > n");
  uint32_t cols = 1u << p;
  if (m < 0 || (uint32_t)m > cols) throw std::invalid_argument("expand_regular: m out of range");
  std::vector<uint8_t> base(cols, 0);
  for (int i = 0; i < m; i++) base[order.order[i]] = 1;
  IndexSet out;
  uint32_t N = 1u << n;
  for (uint32_t i = 0; i < N; i++)
    if (base[i & (cols - 1)]) out.push_back(i);
  return out;
}

void write_puncture_order(std::ostream& os, const PunctureOrder& po) {
  os << "base_n=" << po.base_n << "\n";
  os << "criterion=" << po.criterion << "\n";
  if (po.criterion == "GA")
    os << "design_snr_db=" << po.design_snr_db << "\n";
  else
    os << "eps=" << po.eps << "\n";
  os << "info_set=";
  for (size_t i = 0; i < po.info_set.size(); i++) os << (i ? "," : "") << po.info_set[i];
  os << "\n";
  for (uint32_t i : po.order) os << i << "\n";
}

PunctureOrder read_puncture_order(std::istream& is, const std::string& name) {
  PunctureOrder po;
  po.criterion.clear();
  std::string line;
  int lineno = 0;
  bool in_header = true;
  auto fail = [&](const std::string& msg) {
    throw ConfigError(name + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, line)) {
    lineno++;
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (in_header && eq != std::string::npos) {
      std::string key = line.substr(0, eq), val = line.substr(eq + 1);
      try {
        if (key == "base_n")
          po.base_n = std::stoi(val);
        else if (key == "criterion")
          po.criterion = val;
        else if (key == "design_snr_db")
          po.design_snr_db = std::stod(val);
        else if (key == "eps")
          po.eps = std::stod(val);
        else if (key == "info_set") {
          std::stringstream ss(val);
          std::string tok;
          while (std::getline(ss, tok, ',')) po.info_set.push_back((uint32_t)std::stoul(tok));
        } else
          fail("unknown header key '" + key + "'");
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception&) {
        fail("bad value for '" + key + "'");
      }
      continue;
    }
    in_header = false;
    try {
      size_t pos = 0;
      unsigned long v = std::stoul(line, &pos);
      if (pos != line.size()) fail("trailing characters after index");
      po.order.push_back((uint32_t)v);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      fail("expected a puncture index");
    }
  }
  if (po.criterion.empty()) po.criterion = "GA";
  po.validate();
  return po;
}

void write_puncture_order_file(const std::string& path, const PunctureOrder& po) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  write_puncture_order(f, po);
}

PunctureOrder read_puncture_order_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read " + path);
  return read_puncture_order(f, path);
}

}  // namespace rcpolar
