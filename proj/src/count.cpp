#include "rds/count.hpp"

#include <algorithm>
#include <thread>

#include <boost/rational.hpp>

#include "rds/chain.hpp"
#include "rds/construct.hpp"

namespace rds {

namespace {

InstanceDescription as_bipartite(const ProblemInstance& inst) {
  if (!inst.is_bipartite_like()) {
    throw Error(ErrorCode::kUnsupported, "the counting recursion needs a bipartite instance");
  }
  InstanceDescription d = inst.description();
  if (d.kind == Kind::kDirected) {
    d.kind = Kind::kBipartite;
    d.u_degrees = d.out_degrees;
    d.w_degrees = d.in_degrees;
    d.out_degrees.clear();
    d.in_degrees.clear();
  }
  return d;
}

void delete_u_vertex(InstanceDescription& d, int s) {
  d.u_degrees.erase(d.u_degrees.begin() + s);
  std::vector<std::pair<int, int>> kept;
  for (auto [u, w] : d.matching) {
    if (u == s) continue;
    kept.emplace_back(u > s ? u - 1 : u, w);
  }
  d.matching = std::move(kept);
  d.star_center.reset();
  d.star_leaves.clear();
}

long count_hits(const Realization& start, Vertex s, Vertex v, long samples, long burn_in,
                std::uint64_t level_seed, int threads) {
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(samples)));
  std::vector<long> hits(static_cast<size_t>(workers), 0);
  auto work = [&](int t) {
    for (long i = t; i < samples; i += workers) {
      const Realization end =
          run_chain(start, burn_in, Rng::stream(level_seed, static_cast<std::uint64_t>(i)).next());
      if (end.has_edge(s, v)) ++hits[static_cast<size_t>(t)];
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  long total = 0;
  for (long h : hits) total += h;
  return total;
}

}  // namespace

Normalized normalize_for_counting(const InstancePtr& inst) {
  InstanceDescription d = as_bipartite(*inst);
  while (true) {
    if (d.u_degrees.empty()) {
      const bool done = std::all_of(d.w_degrees.begin(), d.w_degrees.end(), [](int x) { return x == 0; });
      return {make_instance(d, Validation::kStructural), true, done ? 1 : 0};
    }
    InstancePtr cur = make_instance(d, Validation::kStructural);
    const Vertex s = cur->center();
    if (cur->degree(s) == 0) {
      delete_u_vertex(d, s);
      continue;
    }
    if (cur->chord_count(s) < cur->degree(s)) return {cur, true, 0};
    return {cur, false, 0};
  }
}

BranchSplit branch_split(const InstancePtr& inst) {
  const Normalized n = normalize_for_counting(inst);
  if (n.terminal) {
    throw Error(ErrorCode::kExhausted, "no chord left to branch on; count is " +
                                           std::to_string(n.terminal_count));
  }
  const ProblemInstance& cur = *n.inst;
  const Vertex s = cur.center();
  Vertex v = -1;
  for (int w = 0; w < cur.w_size() && v < 0; ++w) {
    if (cur.is_chord(s, cur.w_vertex(w))) v = cur.w_vertex(w);
  }
  InstanceDescription absent = cur.description();
  absent.star_center = s;
  absent.star_leaves.push_back(cur.local_index(v));
  std::sort(absent.star_leaves.begin(), absent.star_leaves.end());
  BranchSplit out{n.inst, {s, v}, make_instance(absent, Validation::kStructural), nullptr};
  if (cur.degree(v) > 0) {
    InstanceDescription present = absent;
    --present.u_degrees[static_cast<size_t>(s)];
    --present.w_degrees[static_cast<size_t>(cur.local_index(v))];
    out.present = make_instance(present, Validation::kStructural);
  }
  return out;
}

BigInt exact_count(const InstancePtr& inst, int max_chords) {
  return BigInt(enumerate_all(inst, max_chords).size());
}

BigInt recursive_count(const InstancePtr& inst) {
  const Normalized n = normalize_for_counting(inst);
  if (n.terminal) return BigInt(n.terminal_count);
  const BranchSplit split = branch_split(n.inst);
  BigInt total = recursive_count(split.absent);
  if (split.present) total += recursive_count(split.present);
  return total;
}

CountReport approx_count(const InstancePtr& inst, const CountOptions& options) {
  using BigRational = boost::rational<BigInt>;
  CountReport report;
  report.half_regular = inst->half_regular();
  if (!is_graphical(inst)) {
    report.graphical = false;
    report.exact_value = BigInt(0);
    return report;
  }
  InstancePtr cur = inst;
  double factor = 1.0;
  BigRational exact_factor(1);
  bool all_exact = true;
  for (std::uint64_t level = 0;; ++level) {
    const Normalized n = normalize_for_counting(cur);
    if (n.terminal) {
      if (n.terminal_count != 1) throw Error(ErrorCode::kAuditFailed, "recursion reached an empty branch");
      report.estimate = factor;
      if (all_exact) {
        exact_factor *= n.terminal_count;
        if (exact_factor.denominator() != 1) {
          throw Error(ErrorCode::kAuditFailed, "exact product is not an integer");
        }
        report.exact_value = exact_factor.numerator();
      }
      return report;
    }
    const BranchSplit split = branch_split(n.inst);
    const bool absent_ok = is_graphical(split.absent);
    const bool present_ok = split.present && is_graphical(split.present);
    CountLevel lvl;
    lvl.chord = split.chord;
    if (!absent_ok && !present_ok) throw Error(ErrorCode::kAuditFailed, "both branches are empty");
    if (!absent_ok || !present_ok) {
      lvl.forced = true;
      lvl.branch = present_ok ? "present" : "absent";
      lvl.p_present = present_ok ? 1.0 : 0.0;
      report.levels.push_back(lvl);
      cur = present_ok ? split.present : split.absent;
      continue;
    }
    const ProblemInstance& here = *split.normalized;
    const auto [s, v] = split.chord;
    BigRational p_exact(0);
    double p = 0;
    if (options.exact_probabilities || here.u_size() < 2 || here.w_size() < 2) {
      const auto states = enumerate_all(split.normalized);
      long with = 0;
      for (const auto& st : states) with += st.has_edge(s, v) ? 1 : 0;
      p_exact = BigRational(BigInt(with), BigInt(states.size()));
      p = static_cast<double>(with) / static_cast<double>(states.size());
      lvl.exact = true;
      lvl.p_present_exact = p_exact.numerator().str() + "/" + p_exact.denominator().str();
    } else {
      all_exact = false;
      const Realization start = *greedy_construct(split.normalized);
      const long burn = options.burn_in < 0 ? default_burn_in(here) : options.burn_in;
      const std::uint64_t level_seed = Rng::stream(options.seed, level).next();
      long samples = options.samples_per_level;
      for (int attempt = 0;; ++attempt) {
        const long hits = count_hits(start, s, v, samples, burn, level_seed, options.threads);
        p = static_cast<double>(hits) / static_cast<double>(samples);
        if ((hits != 0 && hits != samples) || attempt == options.max_retries) break;
        samples *= 2;
      }
      lvl.samples = samples;
      if (p == 0.0 || p == 1.0) {
        lvl.degenerate = true;
        report.degenerate = true;
      }
    }
    lvl.p_present = p;
    if (p >= 0.5) {
      lvl.branch = "present";
      if (p > 0) factor /= p;
      if (lvl.exact) exact_factor /= p_exact;
      cur = split.present;
    } else {
      lvl.branch = "absent";
      if (p < 1) factor /= 1.0 - p;
      if (lvl.exact) exact_factor /= BigRational(1) - p_exact;
      cur = split.absent;
    }
    report.levels.push_back(lvl);
  }
}

}  // namespace rds
