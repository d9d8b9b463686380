#pragma once

#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

#include "rds/core.hpp"
#include "rds/rng.hpp"
#include "rds/swaps.hpp"

namespace rds {

using Rational = boost::rational<long long>;

struct ChainState {
  Realization current;
  std::uint64_t step = 0;
  Rng rng;
};

enum class Branch { kLazy, kC4, kC6 };

struct StepOutcome {
  Branch branch = Branch::kLazy;
  bool moved = false;
};

// One lazy proposal: stay with probability 1/2, otherwise try a C4 move on a
// uniform U-pair and W-pair (1/4) or a C6 F-swap on uniform triples (1/4).
// With fewer than three vertices in a class the C6 branch is a self-loop.
StepOutcome propose_step(ChainState& state);

// Exact probability of the single move from g to h (g != h).
Rational jump_probability(const Realization& g, const Realization& h);

Realization run_chain(const Realization& start, long steps, std::uint64_t seed);

// Heuristic default, 20 (|U| + |W|)^2 proposals.
long default_burn_in(const ProblemInstance& inst);

inline constexpr int kDefaultMaxStates = 5000;

struct KernelReport {
  std::vector<Realization> states;
  std::vector<std::vector<Rational>> matrix;
  Rational symmetry_residual;
  Rational row_sum_residual;
  Rational stationarity_residual;
  Rational min_diagonal;
  std::vector<double> eigenvalues;  // descending
  double second_eigenvalue_modulus = 0;
  bool half_regular = false;
};

KernelReport exact_kernel(const InstancePtr& inst, int max_states = kDefaultMaxStates);

}  // namespace rds
