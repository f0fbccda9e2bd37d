// JSON and CSV serialization for states and smoothing reports, plus the string
// parsers shared by the C API and the command line tool.

#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "simsmooth/smoother.hpp"
#include "simsmooth/state.hpp"

namespace simsmooth {

// Malformed JSON or a document that does not match the expected layout.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Well-formed document whose payload violates a state invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failure (missing file, unwritable path).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using StateVariant = std::variant<DensityOperator, ClassicalState>;

// "2,3,2" -> DimProfile{2,3,2}.
DimProfile parse_dims(const std::string& text);

// "1;2;1,2" -> {A1, A2, A1A2}; party indices are 1-based on the wire.
std::vector<PartySet> parse_subsets(const std::string& text);
PartySet parse_subset(const std::string& text);

// State documents carry "dims" plus exactly one of "matrix" (row-major
// [re, im] pairs) or "classical" (nonnegative weights).  Loading validates.
StateVariant state_from_json(const std::string& text);
std::string state_to_json(const StateVariant& state);
StateVariant load_state_file(const std::string& path);
void save_state_file(const StateVariant& state, const std::string& path);

const DimProfile& state_profile(const StateVariant& state);
double state_trace(const StateVariant& state);

// Report documents carry schema_version 1, the per-subset records (1-based
// subsets, "inf" sentinel for infinite entropies), both distances, both
// bounds, and the two pass flags.  An optional method label is included when
// nonempty.  CSV emits one row per subset with the scalars repeated.
std::string report_to_json(const SmoothingReport& report, const std::string& method = "");
std::string report_to_csv(const SmoothingReport& report, const std::string& method = "");

// Shortest-exact formatting used by every CSV emitter.
std::string format_double(double value);
std::string entropy_to_string(const EntropyValue& value);  // bits or "inf"

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace simsmooth
