#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rds/core.hpp"
#include "rds/oracle.hpp"

namespace rds {

using BigInt = boost::multiprecision::cpp_int;

// The center s made ready for branching: centers with residual degree 0 are
// retired by deleting the vertex, and the lowest remaining U vertex becomes
// the new center with an empty star. When nothing is left to branch on the
// count is known outright.
struct Normalized {
  InstancePtr inst;
  bool terminal = false;
  int terminal_count = 0;  // 0 or 1, when terminal
};

// Directed instances are rewritten as their bipartite representation first.
Normalized normalize_for_counting(const InstancePtr& inst);

struct BranchSplit {
  InstancePtr normalized;
  VertexPair chord;       // (s, v), global ids in `normalized`
  InstancePtr absent;     // (s, v) forbidden
  InstancePtr present;    // (s, v) forbidden, d(s) and d(v) decremented; null if d(v) = 0
};

// Throws kExhausted when the normalized instance is terminal.
BranchSplit branch_split(const InstancePtr& inst);

// Number of realizations by enumeration.
BigInt exact_count(const InstancePtr& inst, int max_chords = kDefaultMaxChords);
// Number of realizations by the full branch recursion, without enumeration.
BigInt recursive_count(const InstancePtr& inst);

struct CountOptions {
  long samples_per_level = 1000;
  long burn_in = -1;  // -1: default_burn_in of each sub-instance
  std::uint64_t seed = 0;
  int max_retries = 3;
  // Worker threads for the per-level chains; results do not depend on it.
  int threads = 1;
  // Replace the sampled branch probability by the exact one (enumeration);
  // the product then equals the exact count.
  bool exact_probabilities = false;
};

struct CountLevel {
  VertexPair chord;  // global ids in the level's instance
  std::string branch;  // "present" or "absent"
  bool forced = false;
  bool exact = false;  // probability computed by enumeration
  bool degenerate = false;
  long samples = 0;
  double p_present = 0;
  std::string p_present_exact;  // "p/q" when exact
};

struct CountReport {
  bool graphical = true;
  double estimate = 0;
  std::optional<BigInt> exact_value;  // set when every level was exact
  std::vector<CountLevel> levels;
  bool half_regular = false;
  bool degenerate = false;
};

CountReport approx_count(const InstancePtr& inst, const CountOptions& options);

}  // namespace rds
