#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace envoff {

/// One named invariant check. `measured` is the worst value observed and
/// `bound` the limit it was held against (both 0 for purely logical checks).
struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool ok() const;
  std::size_t failure_count() const;
  /// {"ok", "failures", "checks": [...]} with failing checks listed first.
  std::string to_json() const;
};

inline constexpr std::uint64_t kVerifySeed = 0x5eed'0ff5e7ULL;

/// curves, offsets, envelopes, singularities, crunodes, oracle.
std::span<const std::string_view> verify_suites();

/// Runs one suite or "all". Random parameters come from a mt19937_64 seeded
/// with `seed`, so reports are reproducible. Throws
/// ErrorCode::InvalidArgument for an unknown suite.
VerifyReport run_verify(std::string_view suite, std::uint64_t seed = kVerifySeed);

}  // namespace envoff
