#pragma once

// Job configuration and rendering of results as JSON-lines records or text tables.

#include <optional>
#include <string>

#include "ddeg/stability.hpp"

namespace ddeg {

struct JobConfig {
  unsigned precision_bits = 256;
  int digits = 30;
  unsigned oracle_depth = 8;
  unsigned horizon = 0;  // 0: 2n + 4
  std::size_t budget_terms = 200000;
  std::size_t budget_matrices = 1000000;
  double tolerance = 1e-6;
  int handelman_cap = 0;  // 0: 2 * deg + 4

  EngineConfig engine() const;
  // Domain error on an unknown key or a malformed value.
  void set(const std::string& key, const std::string& value);
  std::string get(const std::string& key) const;
};

struct Output {
  std::string records;  // one JSON object per line
  std::string table;
  int exit_code = 0;
};

Output run_compute(const JobConfig& cfg, const std::string& endo_text);
Output run_enumerate(const JobConfig& cfg, const std::string& kind, int d);
Output run_classify(const JobConfig& cfg, const std::string& poly_text, const std::string& selector);
Output run_realize(const JobConfig& cfg, const std::string& poly_text, const std::string& selector,
                   const std::optional<std::string>& matrix_text);
Output run_examplerst(const JobConfig& cfg, long r, long s, long t);
Output run_oracle(const JobConfig& cfg, const std::string& endo_text, unsigned depth);

// Error record for an exception escaping one of the run_* functions.
Output error_output(const JobConfig& cfg, const std::string& command, const std::exception& e);

// "(1+sqrt(13))/2" style text for the largest root of x^2 - a x - k.
std::string quadratic_surd_str(long a, long k);

}  // namespace ddeg
