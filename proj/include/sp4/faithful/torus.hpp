#pragma once

#include <cstdlib>
#include <vector>

#include "sp4/cat/modular.hpp"

namespace sp4::faithful {

inline constexpr const char* kTorusTableSchema = "sp4.torus-table/1";

/// rho(t)^n is not a scalar: some twist differs from the unit's after the
/// n-th power. Compared exactly in the cyclotomic field.
inline bool torus_detection(long n, int k) {
  if (n == 0) throw InvalidInput("the zeroth power of the twist is trivial");
  const auto& md = cat::modular_data(k);
  const CycNumber unit = md.t[0].pow(n);
  for (const auto& t : md.t)
    if (t.pow(n) != unit) return true;
  return false;
}

/// Smallest level detecting t^n. Finite: once 4k + 12 > 5|n|, the twist q^5
/// of (1,0) has n-th power different from 1.
inline int min_detect_level(long n) {
  if (n == 0) throw InvalidInput("the zeroth power of the twist is trivial");
  for (int k = 1;; ++k)
    if (torus_detection(n, k)) return k;
}

inline io::Json torus_table(long max_n) {
  if (max_n < 1) throw InvalidInput("max-n must be at least 1");
  io::Json rows = io::Json::array();
  for (long n = 1; n <= max_n; ++n) rows.push_back({{"n", n}, {"min_level", min_detect_level(n)}});
  return io::Json{{"schema", kTorusTableSchema}, {"rows", rows}};
}

}  // namespace sp4::faithful
