#include "rds/io.hpp"

#include <fstream>
#include <sstream>

#include "rds/construct.hpp"
#include "rds/oracle.hpp"

namespace rds::io {

namespace {

Error parse_error(const std::string& what) { return Error(ErrorCode::kParse, what); }

std::vector<int> int_array(const Json& obj, const char* field) {
  std::vector<int> out;
  if (!obj.contains(field) || obj[field].is_null()) return out;
  const Json& arr = obj[field];
  if (!arr.is_array()) throw parse_error(std::string("field '") + field + "': expected an array");
  for (size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number_integer()) {
      throw parse_error(std::string("field '") + field + "'[" + std::to_string(i) +
                        "]: expected an integer");
    }
    out.push_back(arr[i].get<int>());
  }
  return out;
}

std::vector<std::pair<int, int>> pair_array(const Json& arr, const std::string& field) {
  std::vector<std::pair<int, int>> out;
  if (!arr.is_array()) throw parse_error("field '" + field + "': expected an array of pairs");
  for (size_t i = 0; i < arr.size(); ++i) {
    const Json& p = arr[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer()) {
      throw parse_error("field '" + field + "'[" + std::to_string(i) + "]: expected [int, int]");
    }
    out.emplace_back(p[0].get<int>(), p[1].get<int>());
  }
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw parse_error("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json base(const char* command) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

Json edges_json(const Realization& real) {
  Json arr = Json::array();
  for (const auto& [a, b] : real.local_edges()) arr.push_back({a, b});
  return arr;
}

Realization start_for(const InstancePtr& inst) {
  auto start = greedy_construct(inst);
  if (!start) throw Error(ErrorCode::kNotGraphical, "instance has no realization");
  return *start;
}

}  // namespace

InstanceDescription parse_instance(std::string_view text) {
  const Json j = parse_json(text);
  if (!j.is_object()) throw parse_error("instance must be a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string()) throw parse_error("field 'kind': expected a string");
  InstanceDescription d;
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "bipartite") {
    d.kind = Kind::kBipartite;
  } else if (kind == "general") {
    d.kind = Kind::kGeneral;
  } else if (kind == "directed") {
    d.kind = Kind::kDirected;
  } else {
    throw parse_error("field 'kind': unknown kind '" + kind + "'");
  }
  d.u_degrees = int_array(j, "u_degrees");
  d.w_degrees = int_array(j, "w_degrees");
  d.degrees = int_array(j, "degrees");
  d.out_degrees = int_array(j, "out_degrees");
  d.in_degrees = int_array(j, "in_degrees");
  if (j.contains("star_center") && !j["star_center"].is_null()) {
    if (!j["star_center"].is_number_integer()) {
      throw parse_error("field 'star_center': expected an integer or null");
    }
    d.star_center = j["star_center"].get<int>();
  }
  d.star_leaves = int_array(j, "star_leaves");
  if (j.contains("matching") && !j["matching"].is_null()) d.matching = pair_array(j["matching"], "matching");
  return d;
}

InstanceDescription load_instance(const std::string& path) { return parse_instance(read_file(path)); }

Json instance_json(const InstanceDescription& d) {
  Json j;
  j["kind"] = std::string(kind_name(d.kind));
  switch (d.kind) {
    case Kind::kBipartite:
      j["u_degrees"] = d.u_degrees;
      j["w_degrees"] = d.w_degrees;
      break;
    case Kind::kGeneral:
      j["degrees"] = d.degrees;
      break;
    case Kind::kDirected:
      j["out_degrees"] = d.out_degrees;
      j["in_degrees"] = d.in_degrees;
      break;
  }
  j["star_center"] = d.star_center ? Json(*d.star_center) : Json(nullptr);
  j["star_leaves"] = d.star_leaves;
  Json m = Json::array();
  for (const auto& [a, b] : d.matching) m.push_back({a, b});
  j["matching"] = m;
  return j;
}

Realization parse_realization(const InstancePtr& inst, std::string_view text) {
  const Json j = parse_json(text);
  const Json& arr = j.is_object() && j.contains("edges") ? j["edges"] : j;
  const auto edges = pair_array(arr, "edges");
  return Realization::from_local_edges(inst, edges);
}

Realization load_realization(const InstancePtr& inst, const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    return parse_realization(inst, arg);
  }
  return parse_realization(inst, read_file(arg));
}

Json realization_json(const Realization& real) {
  Json j;
  j["edges"] = edges_json(real);
  return j;
}

std::string rational_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string dump(const Json& report) { return report.dump(2) + "\n"; }

Json check_report(const InstanceDescription& desc) {
  Json j = base("check");
  try {
    const InstancePtr inst = make_instance(desc);
    j["graphical"] = is_graphical(inst);
    j["half_regular"] = inst->half_regular();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegreeSumMismatch && e.code() != ErrorCode::kDegreeExceedsChords) throw;
    j["graphical"] = false;
    j["reason"] = std::string(error_code_name(e.code()));
  }
  return j;
}

Json construct_report(const InstancePtr& inst) {
  Json j = base("construct");
  const auto real = greedy_construct(inst);
  j["graphical"] = real.has_value();
  if (real) j["realization"] = realization_json(*real);
  return j;
}

Json enumerate_report(const InstancePtr& inst, int max_chords) {
  Json j = base("enumerate");
  const auto states = enumerate_all(inst, max_chords);
  j["count"] = std::to_string(states.size());
  Json arr = Json::array();
  for (const auto& s : states) arr.push_back(realization_json(s));
  j["realizations"] = arr;
  return j;
}

Json sample_report(const InstancePtr& inst, long burn_in, long samples, std::uint64_t seed) {
  Json j = base("sample");
  j["config"] = {{"seed", seed}, {"burn_in", burn_in}, {"samples", samples},
                 {"rng", "mt19937_64 seeded via splitmix64, one stream per sample"}};
  j["half_regular"] = inst->half_regular();
  if (!inst->half_regular()) j["warning"] = "instance is not half-regular; no mixing guarantee";
  const Realization start = start_for(inst);
  Json arr = Json::array();
  for (long i = 0; i < samples; ++i) {
    const auto end = run_chain(start, burn_in, Rng::stream(seed, static_cast<std::uint64_t>(i)).next());
    arr.push_back(realization_json(end));
  }
  j["samples"] = arr;
  return j;
}

Json exact_count_report(const InstancePtr& inst, int max_chords) {
  Json j = base("count");
  j["mode"] = "exact";
  const BigInt n = exact_count(inst, max_chords);
  j["count"] = n.str();
  if (inst->is_bipartite_like()) {
    const BigInt r = recursive_count(inst);
    j["recursive_count"] = r.str();
    j["agree"] = r == n;
  }
  return j;
}

Json approx_count_report(const InstancePtr& inst, const CountOptions& o) {
  Json j = base("count");
  j["mode"] = "approximate";
  j["config"] = {{"seed", o.seed},
                 {"samples_per_level", o.samples_per_level},
                 {"burn_in", o.burn_in < 0 ? Json("default") : Json(o.burn_in)},
                 {"max_retries", o.max_retries},
                 {"exact_probabilities", o.exact_probabilities}};
  const CountReport r = approx_count(inst, o);
  j["graphical"] = r.graphical;
  j["half_regular"] = r.half_regular;
  if (!r.half_regular) j["warning"] = "instance is not half-regular; no mixing guarantee";
  j["estimate"] = r.estimate;
  j["exact"] = r.exact_value ? Json(r.exact_value->str()) : Json(nullptr);
  j["degenerate"] = r.degenerate;
  Json levels = Json::array();
  for (const auto& l : r.levels) {
    Json lv = {{"chord", {l.chord.first, l.chord.second}},
               {"branch", l.branch},
               {"forced", l.forced},
               {"p_present", l.p_present},
               {"samples", l.samples}};
    if (l.exact) lv["p_present_exact"] = l.p_present_exact;
    if (l.degenerate) lv["degenerate"] = true;
    levels.push_back(lv);
  }
  j["levels"] = levels;
  return j;
}

Json distance_report(const Realization& from, const Realization& to, int max_delta) {
  Json j = base("distance");
  const SwapDistance d = swap_distance(from, to, max_delta);
  j["weight"] = d.weight;
  j["delta"] = d.delta;
  j["mc"] = d.mc;
  return j;
}

Json kernel_report(const InstancePtr& inst, int max_states) {
  Json j = base("kernel");
  const KernelReport k = exact_kernel(inst, max_states);
  Json states = Json::array();
  for (const auto& s : k.states) states.push_back(edges_json(s));
  j["states"] = states;
  Json matrix = Json::array();
  for (const auto& row : k.matrix) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(rational_string(x));
    matrix.push_back(r);
  }
  j["matrix"] = matrix;
  j["symmetry_residual"] = rational_string(k.symmetry_residual);
  j["row_sum_residual"] = rational_string(k.row_sum_residual);
  j["stationarity_residual"] = rational_string(k.stationarity_residual);
  j["min_diagonal"] = rational_string(k.min_diagonal);
  j["stationary"] = "uniform";
  j["eigenvalues"] = k.eigenvalues;
  j["second_eigenvalue_modulus"] = k.second_eigenvalue_modulus;
  j["half_regular"] = k.half_regular;
  return j;
}

Json path_report(const PathReport& r) {
  Json j = base("audit-paths");
  Json cycles = Json::array();
  for (const auto& c : r.cycles) cycles.push_back(c.vertices());
  j["cycles"] = cycles;
  Json ms = Json::array();
  for (const auto& m : r.milestones) ms.push_back(edges_json(m));
  j["milestones"] = ms;
  j["cycle_weights"] = r.cycle_weights;
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    steps.push_back({{"cycle", s.cycle},
                     {"move", s.move == MoveType::kC4 ? "C4" : "C6"},
                     {"circuit", s.swap.circuit.vertices()},
                     {"edges", edges_json(s.after)},
                     {"count2", s.bad.count2},
                     {"count_minus1", s.bad.count_minus1},
                     {"same_column", s.bad.same_column},
                     {"column_not_center", s.bad.column_not_center},
                     {"legal", s.legal},
                     {"pattern_ok", s.pattern_ok},
                     {"nearest_hamming", s.nearest_hamming},
                     {"repair_switches", s.repair_switches}});
  }
  j["steps"] = steps;
  j["max_hamming"] = r.max_hamming;
  j["max_bad"] = r.max_bad;
  j["max_switches"] = r.max_switches;
  j["theta_ok"] = r.theta_ok;
  j["omega_ok"] = r.omega_ok;
  return j;
}

Json audit_report(const InstancePtr& inst, int max_chords) {
  Json j = base("audit-paths");
  const auto states = enumerate_all(inst, max_chords);
  long pairs = 0;
  long steps = 0;
  int max_hamming = 0;
  int max_bad = 0;
  int max_switches = 0;
  bool theta = true;
  bool omega = true;
  Json failures = Json::array();
  for (size_t a = 0; a < states.size(); ++a) {
    for (size_t b = 0; b < states.size(); ++b) {
      if (a == b) continue;
      const PathReport r = canonical_path(states[a], states[b], &states);
      ++pairs;
      steps += static_cast<long>(r.steps.size());
      max_hamming = std::max(max_hamming, r.max_hamming);
      max_bad = std::max(max_bad, r.max_bad);
      max_switches = std::max(max_switches, r.max_switches);
      theta = theta && r.theta_ok;
      omega = omega && r.omega_ok;
      if ((!r.theta_ok || !r.omega_ok) && failures.size() < 10) {
        failures.push_back({{"from", a}, {"to", b}, {"theta_ok", r.theta_ok}, {"omega_ok", r.omega_ok}});
      }
    }
  }
  j["states"] = states.size();
  j["pairs"] = pairs;
  j["steps"] = steps;
  j["max_hamming"] = max_hamming;
  j["max_bad"] = max_bad;
  j["max_switches"] = max_switches;
  j["theta_ok"] = theta;
  j["omega_ok"] = omega;
  j["failures"] = failures;
  return j;
}

Json audit_pair_report(const Realization& x, const Realization& y, int max_chords) {
  const auto states = enumerate_all(x.instance_ptr(), max_chords);
  return path_report(canonical_path(x, y, &states));
}

Json convert_directed_report(const InstanceDescription& desc) {
  if (desc.kind != Kind::kDirected) throw Error(ErrorCode::kNotDirectedKind, "expected a directed instance");
  Json j = base("convert-directed");
  const ProblemInstance inst = from_directed(desc.out_degrees, desc.in_degrees);
  InstanceDescription bip = inst.description();
  bip.kind = Kind::kBipartite;
  bip.u_degrees = desc.out_degrees;
  bip.w_degrees = desc.in_degrees;
  bip.out_degrees.clear();
  bip.in_degrees.clear();
  j["bipartite"] = instance_json(bip);
  return j;
}

}  // namespace rds::io
