// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: runs every criterion of the reproduction suite and
// prints one pass/fail line each.  Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>

#include "rklab/verification.hpp"

int main() {
  const auto start = std::chrono::steady_clock::now();
  const auto results = rklab::verify_claims();
  int failures = 0;
  for (const auto& r : results) {
    std::printf("criterion %2d  [%s]  %-42s %s\n", r.id, r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.detail.c_str());
    if (!r.pass) ++failures;
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  std::printf("%zu criteria, %d failed, %.1f s\n", results.size(), failures,
              elapsed.count() / 1000.0);
  return failures == 0 ? 0 : 1;
}
