#pragma once

#include <optional>
#include <vector>

#include "rds/core.hpp"
#include "rds/swaps.hpp"

namespace rds {

// Integer matrix over U (columns) x W (rows). Forbidden positions are marked
// and always hold 0.
struct AuditMatrix {
  InstancePtr inst;
  int columns = 0;
  int rows = 0;
  std::vector<int> entries;  // column-major, like AdjacencyMatrix
  std::vector<std::uint8_t> forbidden;

  int at(int u, int w) const { return entries[static_cast<size_t>(u * rows + w)]; }
  int& at(int u, int w) { return entries[static_cast<size_t>(u * rows + w)]; }
  bool is_forbidden(int u, int w) const { return forbidden[static_cast<size_t>(u * rows + w)] != 0; }
  int column_sum(int u) const;
  int row_sum(int w) const;
  bool operator==(const AuditMatrix& o) const { return entries == o.entries; }
};

AuditMatrix realization_matrix(const Realization& real);
// M_X + M_Y - M_Z.
AuditMatrix auxiliary_matrix(const Realization& x, const Realization& y, const Realization& z);

// Number of positions where the two matrices differ.
int hamming(const AuditMatrix& a, const AuditMatrix& b);

struct BadPositions {
  int count2 = 0;
  int count_minus1 = 0;
  int other = 0;  // entries outside {-1, 0, 1, 2}
  bool same_column = true;
  bool column_not_center = true;
  int column = -1;  // the shared column, -1 if none or not shared

  int total() const { return count2 + count_minus1 + other; }
  // At most two 2-values, at most one -1, all in one column other than s.
  bool repairable_pattern() const {
    return other == 0 && count2 <= 2 && count_minus1 <= 1 && same_column && column_not_center;
  }
};

BadPositions audit_bad_positions(const AuditMatrix& m);

// +1 at (u, w) and (u2, w2), -1 at (u, w2) and (u2, w).
struct Switch {
  int u = 0;
  int u2 = 0;
  int w = 0;
  int w2 = 0;
};

void apply_switch(AuditMatrix& m, const Switch& s);

struct RepairResult {
  std::vector<Switch> switches;
  Realization result;
};

// Turns a matrix with the repairable bad-position pattern into a realization
// matrix using at most three switches. Throws kPreconditionViolated when the
// margins, half-regularity, or bad-position pattern are out of scope.
RepairResult switch_repair(const AuditMatrix& m);

// Alternating simple cycles partitioning E(g) xor E(h), from lowest-index
// Euler walks split at the first repeated vertex.
std::vector<ChordCircuit> ordered_cycle_decomposition(const Realization& g, const Realization& h);

std::vector<Realization> milestones(const Realization& x, const Realization& y,
                                    const std::vector<ChordCircuit>& cycles);

// Chain moves taking g to g2 = g xor cycle, pivoting on the least U vertex of
// the cycle other than s. Throws kNotAMilestonePair.
std::vector<CircularSwap> sweep_cycle(const Realization& g, const Realization& g2,
                                      const ChordCircuit& cycle);

enum class MoveType { kC4, kC6 };

struct PathStep {
  int cycle = 0;
  MoveType move = MoveType::kC4;
  CircularSwap swap;
  Realization after;
  BadPositions bad;
  bool legal = false;            // a single move of the chain's kernel
  bool pattern_ok = false;       // repairable pattern here or at a neighboring state
  int nearest_hamming = -1;      // exhaustive; -1 when no state list was given
  int repair_switches = -1;      // -1 when switch_repair's precondition fails
  bool margins_ok = false;
};

struct PathReport {
  std::vector<ChordCircuit> cycles;
  std::vector<Realization> milestones;
  std::vector<int> cycle_weights;
  std::vector<int> cycle_half_lengths;
  std::vector<PathStep> steps;
  int max_hamming = 0;
  int max_bad = 0;
  int max_switches = 0;
  bool theta_ok = true;
  bool omega_ok = true;
};

// Pass `states` (all realizations) to enable the exhaustive nearest search.
PathReport canonical_path(const Realization& x, const Realization& y,
                          const std::vector<Realization>* states = nullptr);

// Throws kAuditFailed naming the first offending step.
PathReport verify_theta_omega(const Realization& x, const Realization& y,
                              const std::vector<Realization>* states = nullptr);

}  // namespace rds
