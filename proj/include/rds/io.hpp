#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

#include "rds/chain.hpp"
#include "rds/core.hpp"
#include "rds/count.hpp"
#include "rds/paths.hpp"
#include "rds/swaps.hpp"

namespace rds::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "rds-kit/1";

// Throws kParse with the byte offset of malformed JSON or the offending field.
InstanceDescription parse_instance(std::string_view text);
InstanceDescription load_instance(const std::string& path);
Json instance_json(const InstanceDescription& desc);

// Accepts {"edges": [[a, b], ...]} or a bare edge array, in the JSON
// convention of the instance (class-local [u, w] for bipartite-like kinds).
Realization parse_realization(const InstancePtr& inst, std::string_view text);
// A path to a file, or inline JSON when the argument starts with '{' or '['.
Realization load_realization(const InstancePtr& inst, const std::string& arg);
Json realization_json(const Realization& real);

std::string rational_string(const Rational& r);

std::string dump(const Json& report);

// Report builders. The CLI prints exactly these payloads.
Json check_report(const InstanceDescription& desc);
Json construct_report(const InstancePtr& inst);
Json enumerate_report(const InstancePtr& inst, int max_chords);
Json sample_report(const InstancePtr& inst, long burn_in, long samples, std::uint64_t seed);
Json exact_count_report(const InstancePtr& inst, int max_chords);
Json approx_count_report(const InstancePtr& inst, const CountOptions& options);
Json distance_report(const Realization& from, const Realization& to, int max_delta);
Json kernel_report(const InstancePtr& inst, int max_states);
Json path_report(const PathReport& report);
// Audits every ordered pair of realizations (or a single pair when given).
Json audit_report(const InstancePtr& inst, int max_chords);
Json audit_pair_report(const Realization& x, const Realization& y, int max_chords);
Json convert_directed_report(const InstanceDescription& desc);

}  // namespace rds::io
