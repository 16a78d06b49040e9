#pragma once

#include "trimat_geom/planes.hpp"

namespace trimat_geom {

struct CountRow {
  std::string name;
  bool has_formula = false;
  long long formula = 0;
  long long enumerated = 0;
  bool match = false;
};

// Closed-form vs enumerated quantities for one (n, q). Rows without a known
// closed form (raw n=4 enumeration) carry enumerated values only.
std::vector<CountRow> compute_counts(const LineCensus& census);

struct VerifyOptions {
  bool isomorphism = true;     // classical-plane comparison, run when q <= 3
  size_t fastpath_cap = 1000;  // max listed fast-path disagreements
};

struct VerifyReport {
  int n = 0, q = 0;
  std::vector<CheckResult> checks;
  FastPathReport fastpath;

  bool ok() const {
    for (const CheckResult& c : checks)
      if (!c.pass && !c.warn_only) return false;
    return true;
  }
};

// Runs every cross-check for one (n, q): counts, listed generator families
// vs brute force, partition structure, plane/closure/2-affine axiom suites,
// slot conditions, fast-path agreement, and classical isomorphism search.
VerifyReport run_verify(const LineCensus& census, const VerifyOptions& opts = {});

}  // namespace trimat_geom
