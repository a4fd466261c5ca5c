#ifndef BARRIERCLOCK_VERIFY_HPP
#define BARRIERCLOCK_VERIFY_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "barrierclock/oracle.hpp"

namespace barrierclock {

/// Seed-fixed randomized invariant suite: solves a pseudo-random family of
/// profiles/energies/regions and checks every library invariant (unitarity,
/// reciprocity, continuity, the weighted-average identity, oracle
/// agreement, ...).  tolerance_scale multiplies every tolerance; 0 makes
/// every check fail, which is the harness self-test.
struct VerifyOptions {
  std::uint64_t seed = 1;
  int cases = 200;
  double tolerance_scale = 1.0;
};

struct VerifySummary {
  int total = 0;
  int failed = 0;
  std::vector<oracle::OracleReport> reports;
};

/// Runs the suite; when `stream` is non-null every report is written to it
/// as one JSON object per line, in deterministic case order.
VerifySummary run_verify(const VerifyOptions& options, std::ostream* stream = nullptr);

}  // namespace barrierclock

#endif
