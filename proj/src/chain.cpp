#include "rds/chain.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include <Eigen/Dense>

#include "rds/oracle.hpp"

namespace rds {

namespace {

long long choose(long long n, long long k) {
  if (k < 0 || n < k) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void require_chain_instance(const ProblemInstance& inst) {
  if (!inst.is_bipartite_like()) {
    throw Error(ErrorCode::kUnsupported, "the chain runs on bipartite and directed instances");
  }
  if (inst.u_size() < 2 || inst.w_size() < 2) {
    throw Error(ErrorCode::kInstanceTooSmall, "the chain needs |U| >= 2 and |W| >= 2");
  }
}

// K distinct values from [0, n), sorted. Each draw is shifted past the
// values already taken, so the K-subset is uniform.
template <size_t K>
std::array<Vertex, K> draw_distinct(Rng& rng, int n, Vertex offset) {
  std::array<Vertex, K> out{};
  for (size_t i = 0; i < K; ++i) {
    auto x = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n) - i));
    for (size_t j = 0; j < i; ++j) {
      if (x >= out[j]) ++x;
    }
    size_t k = i;
    for (; k > 0 && out[k - 1] > x; --k) out[k] = out[k - 1];
    out[k] = x;
  }
  for (auto& v : out) v += offset;
  return out;
}

Rational c4_probability(const ProblemInstance& inst) {
  return Rational(1, 4 * choose(inst.u_size(), 2) * choose(inst.w_size(), 2));
}

Rational c6_probability(const ProblemInstance& inst) {
  const long long d = choose(inst.u_size(), 3) * choose(inst.w_size(), 3);
  return d == 0 ? Rational(0) : Rational(1, 4 * d);
}

}  // namespace

StepOutcome propose_step(ChainState& state) {
  const ProblemInstance& inst = state.current.instance();
  require_chain_instance(inst);
  ++state.step;
  const auto r = state.rng.below(4);
  if (r < 2) return {Branch::kLazy, false};
  if (r == 2) {
    const auto us = draw_distinct<2>(state.rng, inst.u_size(), 0);
    const auto ws = draw_distinct<2>(state.rng, inst.w_size(), inst.u_size());
    if (auto sw = find_c4_swap(state.current, us, ws)) {
      apply_swap_in_place(state.current, *sw);
      return {Branch::kC4, true};
    }
    return {Branch::kC4, false};
  }
  if (inst.u_size() < 3 || inst.w_size() < 3) return {Branch::kC6, false};
  const auto us = draw_distinct<3>(state.rng, inst.u_size(), 0);
  const auto ws = draw_distinct<3>(state.rng, inst.w_size(), inst.u_size());
  if (auto sw = find_c6_fswap(state.current, us, ws)) {
    apply_swap_in_place(state.current, *sw);
    return {Branch::kC6, true};
  }
  return {Branch::kC6, false};
}

Rational jump_probability(const Realization& g, const Realization& h) {
  const ProblemInstance& inst = g.instance();
  require_chain_instance(inst);
  const auto delta = symmetric_difference(g, h);
  std::set<Vertex> us;
  std::set<Vertex> ws;
  for (const auto& [a, b] : delta) {
    for (Vertex v : {a, b}) (inst.in_u(v) ? us : ws).insert(v);
  }
  auto fail = [] { return Error(ErrorCode::kNotAdjacent, "no single chain move connects the two"); };
  if (delta.size() == 4 && us.size() == 2 && ws.size() == 2) {
    const auto sw = find_c4_swap(g, {*us.begin(), *us.rbegin()}, {*ws.begin(), *ws.rbegin()});
    if (sw && apply_swap(g, *sw) == h) return c4_probability(inst);
  }
  if (delta.size() == 6 && us.size() == 3 && ws.size() == 3) {
    const std::vector<Vertex> uv(us.begin(), us.end());
    const std::vector<Vertex> wv(ws.begin(), ws.end());
    const auto sw = find_c6_fswap(g, {uv[0], uv[1], uv[2]}, {wv[0], wv[1], wv[2]});
    if (sw && apply_swap(g, *sw) == h) return c6_probability(inst);
  }
  throw fail();
}

Realization run_chain(const Realization& start, long steps, std::uint64_t seed) {
  ChainState state{start, 0, Rng(seed)};
  for (long i = 0; i < steps; ++i) propose_step(state);
  return state.current;
}

long default_burn_in(const ProblemInstance& inst) {
  const long n = inst.vertex_count();
  return 20 * n * n;
}

KernelReport exact_kernel(const InstancePtr& inst, int max_states) {
  require_chain_instance(*inst);
  KernelReport report;
  report.half_regular = inst->half_regular();
  const RealizationGraph graph = build_realization_graph(inst, MoveSet::kChainMoves);
  if (static_cast<int>(graph.states.size()) > max_states) {
    throw Error(ErrorCode::kTooManyStates, std::to_string(graph.states.size()) +
                                               " states exceed the bound " +
                                               std::to_string(max_states));
  }
  const size_t n = graph.states.size();
  report.states = graph.states;
  report.matrix.assign(n, std::vector<Rational>(n, Rational(0)));
  const Rational p4 = c4_probability(*inst);
  const Rational p6 = c6_probability(*inst);
  for (size_t i = 0; i < n; ++i) {
    Rational off(0);
    for (const auto& [j, w] : graph.adjacency[i]) {
      // Chain moves have weight 1 for C4 and 2 for C6.
      const Rational p = w == 1 ? p4 : p6;
      report.matrix[i][static_cast<size_t>(j)] = p;
      off += p;
    }
    report.matrix[i][i] = Rational(1) - off;
  }
  auto abs = [](Rational r) { return r < 0 ? -r : r; };
  report.min_diagonal = n == 0 ? Rational(0) : report.matrix[0][0];
  for (size_t i = 0; i < n; ++i) {
    Rational row(0);
    Rational col(0);
    for (size_t j = 0; j < n; ++j) {
      row += report.matrix[i][j];
      col += report.matrix[j][i];
      report.symmetry_residual =
          std::max(report.symmetry_residual, abs(report.matrix[i][j] - report.matrix[j][i]));
    }
    report.row_sum_residual = std::max(report.row_sum_residual, abs(row - 1));
    // Uniform pi is stationary iff every column sums to one.
    report.stationarity_residual =
        std::max(report.stationarity_residual, abs(col - 1) / static_cast<long long>(n));
    report.min_diagonal = std::min(report.min_diagonal, report.matrix[i][i]);
  }
  if (n > 0) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            boost::rational_cast<double>(report.matrix[i][j]);
      }
    }
    // Symmetrize defensively; on a non-symmetric kernel the spectrum is
    // reported for (P + P^T) / 2 and symmetry_residual flags it.
    const Eigen::MatrixXd sym = (m + m.transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    for (Eigen::Index i = ev.size() - 1; i >= 0; --i) report.eigenvalues.push_back(ev(i));
    for (size_t i = 1; i < report.eigenvalues.size(); ++i) {
      report.second_eigenvalue_modulus =
          std::max(report.second_eigenvalue_modulus, std::abs(report.eigenvalues[i]));
    }
  }
  return report;
}

}  // namespace rds
